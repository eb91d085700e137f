#pragma once

// Independent brute-force enumeration of bigons and triangles on the unit
// torus. Curves are developed into the plane over several passes, every
// lattice translate within a fixed box is intersected segment by segment,
// and candidate boundaries are assembled from intersection pairs on shared
// lifts. Only the elementary geometric primitives are shared with the
// engine; the search itself is a different algorithm with different
// bookkeeping, so agreement is meaningful.

#include "flatfloer/curve.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace oracle {

using namespace flatfloer;

constexpr long kPasses = 2;  // curve passes per lift: parameters in [-2n, 3n)
constexpr long kBox = 3;     // lattice translates in [-3,3]^2

struct Lift {
  std::vector<Pt> pts;      // developed polyline vertices
  std::vector<Rat> params;  // unwrapped curve parameter of each vertex
};

inline Lift make_lift(const FlatSurface& s, const PLCurve& c) {
  DevelopedCurve d = c.develop(s);
  Lift l;
  long n = long(c.size());
  for (long pass = -kPasses; pass <= kPasses; ++pass)
    for (long m = 0; m < n; ++m) {
      l.pts.push_back(d.dev_a[size_t(m)] + d.period * Rat(pass));
      l.params.push_back(Rat(pass * n + m));
    }
  l.pts.push_back(d.dev_a[0] + d.period * Rat(kPasses + 1));
  l.params.push_back(Rat((kPasses + 1) * n));
  return l;
}

struct Meet {
  Pt p;
  Rat pa, pb;  // unwrapped parameters on the two lifts
};

// All meetings of two lifts, the second translated by `shift`. Meetings at
// shared piece endpoints are deduplicated by parameter pair.
inline std::vector<Meet> meetings(const Lift& a, const Lift& b, Vec shift) {
  std::map<std::pair<Rat, Rat>, Pt> found;
  for (size_t i = 0; i + 1 < a.pts.size(); ++i)
    for (size_t j = 0; j + 1 < b.pts.size(); ++j) {
      Seg sa{a.pts[i], a.pts[i + 1]};
      Seg sb{b.pts[j] + shift, b.pts[j + 1] + shift};
      SegX x = seg_intersect(sa, sb);
      if (x.kind != SegXKind::transversal && x.kind != SegXKind::endpoint)
        continue;
      Rat pa = a.params[i] + (a.params[i + 1] - a.params[i]) * x.t1;
      Rat pb = b.params[j] + (b.params[j + 1] - b.params[j]) * x.t2;
      found.emplace(std::make_pair(pa, pb), x.p);
    }
  std::vector<Meet> out;
  for (auto& [k, p] : found) out.push_back({p, k.first, k.second});
  return out;
}

// Vertices of the arc of a lift between two unwrapped parameters, in walk
// order, endpoints included.
inline void arc_vertices(const Lift& l, Vec shift, const Rat& from,
                         const Rat& to, std::vector<Pt>& out) {
  auto at = [&](const Rat& p) {
    for (size_t i = 0; i + 1 < l.pts.size(); ++i)
      if (l.params[i] <= p && p <= l.params[i + 1]) {
        Rat span = l.params[i + 1] - l.params[i];
        Rat t = (p - l.params[i]) / span;
        return l.pts[i] + (l.pts[i + 1] - l.pts[i]) * t + shift;
      }
    throw std::logic_error("oracle arc parameter out of lift range");
  };
  out.push_back(at(from));
  if (from < to) {
    for (size_t i = 0; i < l.params.size(); ++i)
      if (from < l.params[i] && l.params[i] < to)
        out.push_back(l.pts[i] + shift);
  } else {
    for (size_t i = l.params.size(); i-- > 0;)
      if (to < l.params[i] && l.params[i] < from)
        out.push_back(l.pts[i] + shift);
  }
  out.push_back(at(to));
}

// Multiples of n strictly between two unwrapped parameters.
inline long marked_hits(const Rat& from, const Rat& to, long n) {
  Rat lo = from < to ? from : to, hi = from < to ? to : from;
  long count = 0;
  Rat q = lo / n;
  Int k0 = numerator(q) / denominator(q);
  for (Int k = k0 - 1;; ++k) {
    Rat m = Rat(k * n);
    if (m >= hi) break;
    if (m > lo) ++count;
  }
  return count;
}

// Convexity at a polygon corner. Sides may bend at curve joints, so this is
// demanded only at the marked corner vertices, not at every loop vertex: a
// simple positively oriented loop always has total turning one, which says
// nothing about the individual corners.
inline bool convex_corner(const std::vector<Pt>& loop, size_t idx) {
  size_t n = loop.size();
  Vec in = loop[idx] - loop[(idx + n - 1) % n];
  Vec out = loop[(idx + 1) % n] - loop[idx];
  return det(in, out) > 0;
}

inline bool left_turns_and_simple(const std::vector<Pt>& loop) {
  size_t n = loop.size();
  std::vector<Vec> dirs;
  for (size_t i = 0; i < n; ++i) {
    Vec d = loop[(i + 1) % n] - loop[i];
    if (d.is_zero()) return false;
    dirs.push_back(d);
  }
  if (turning_number(dirs) != 1) return false;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      SegX x = seg_intersect({loop[i], loop[(i + 1) % n]},
                             {loop[j], loop[(j + 1) % n]});
      if (x.kind == SegXKind::none) continue;
      bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (!adjacent || x.kind != SegXKind::endpoint) return false;
    }
  return true;
}

inline Pt reduce_to_chart(const Pt& p) {
  auto fr = [](const Rat& v) {
    Int f = numerator(v) / denominator(v);
    Rat r = v - Rat(f);
    if (r < 0) r += 1;
    return r;
  };
  return {fr(p.x), fr(p.y)};
}

struct Term {
  Pt y;      // output corner, reduced to the chart
  Rat area;
  int sign;  // +1 or -1
  bool operator<(const Term& o) const {
    if (y != o.y) return pt_less(y, o.y);
    if (area != o.area) return area < o.area;
    return sign < o.sign;
  }
  bool operator==(const Term& o) const {
    return y == o.y && area == o.area && sign == o.sign;
  }
};

// The curve's own orientation at parameter p. The forward representative
// suffices: at a corner parameter either adjacent piece gives the same
// crossing sign for a validated scene.
inline Vec curve_dir(const Lift& l, const Rat& p) {
  for (size_t i = 0; i + 1 < l.pts.size(); ++i)
    if (l.params[i] <= p && p < l.params[i + 1])
      return l.pts[i + 1] - l.pts[i];
  throw std::logic_error("oracle direction parameter out of range");
}

// All bigons contributing to the differential entry with input corner at
// chart point x, for the ordered pair (a, b): input in CF(a,b), boundary
// arc on b from x to the output, then on a back to x.
inline std::vector<Term> bigons(const FlatSurface& s, const PLCurve& a,
                                const PLCurve& b, const Pt& x_chart,
                                const Rat& cutoff) {
  Lift la = make_lift(s, a), lb = make_lift(s, b);
  long na = long(a.size()), nb = long(b.size());
  std::vector<Term> out;
  for (long gx = -kBox; gx <= kBox; ++gx)
    for (long gy = -kBox; gy <= kBox; ++gy) {
      Vec g{Rat(gx), Rat(gy)};
      auto ms = meetings(la, lb, g);
      for (const Meet& x1 : ms) {
        // Anchor both parameters on the base pass: a geometric bigon is
        // otherwise found once per lattice-compatible relift of b.
        if (x1.pa < 0 || x1.pa >= na) continue;
        if (x1.pb < 0 || x1.pb >= nb) continue;
        if (reduce_to_chart(x1.p) != x_chart) continue;
        for (const Meet& y : ms) {
          if (y.pa == x1.pa && y.pb == x1.pb) continue;
          std::vector<Pt> loop;
          arc_vertices(lb, g, x1.pb, y.pb, loop);
          size_t corner_y = loop.size() - 1;
          loop.pop_back();
          arc_vertices(la, Vec{}, y.pa, x1.pa, loop);
          loop.pop_back();
          Rat area = shoelace(loop);
          if (!(area > 0) || area >= cutoff) continue;
          if (!left_turns_and_simple(loop)) continue;
          if (!convex_corner(loop, 0) || !convex_corner(loop, corner_y))
            continue;
          long sgn = marked_hits(x1.pb, y.pb, nb) + marked_hits(y.pa, x1.pa, na);
          // Degree-one corners whose signing arc (always the b side) runs
          // against the orientation of b.
          bool backward = y.pb < x1.pb;
          int deg_x = det(curve_dir(la, x1.pa), curve_dir(lb, x1.pb)) > 0 ? 1 : 0;
          int deg_y = det(curve_dir(la, y.pa), curve_dir(lb, y.pb)) > 0 ? 1 : 0;
          if (deg_x == 1 && backward) ++sgn;
          if (deg_y == 1 && backward) ++sgn;
          out.push_back({reduce_to_chart(y.p), area, sgn % 2 == 0 ? 1 : -1});
        }
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

// All triangles with input corners at chart points x1 (in CF(a,b)) and x2
// (in CF(b,c)); the output corner lies in CF(a,c).
inline std::vector<Term> triangles(const FlatSurface& s, const PLCurve& a,
                                   const PLCurve& b, const PLCurve& c,
                                   const Pt& x1_chart, const Pt& x2_chart,
                                   const Rat& cutoff) {
  Lift la = make_lift(s, a), lb = make_lift(s, b), lc = make_lift(s, c);
  long na = long(a.size()), nb = long(b.size()), nc = long(c.size());
  // Meetings of b and c depend only on the relative shift; meetings with a
  // depend on one translate each.
  std::map<std::pair<long, long>, std::vector<Meet>> bc, mab_m, mac_m;
  for (long dx = -2 * kBox; dx <= 2 * kBox; ++dx)
    for (long dy = -2 * kBox; dy <= 2 * kBox; ++dy)
      bc[{dx, dy}] = meetings(lb, lc, Vec{Rat(dx), Rat(dy)});
  for (long gx = -kBox; gx <= kBox; ++gx)
    for (long gy = -kBox; gy <= kBox; ++gy) {
      mab_m[{gx, gy}] = meetings(la, lb, Vec{Rat(gx), Rat(gy)});
      mac_m[{gx, gy}] = meetings(la, lc, Vec{Rat(gx), Rat(gy)});
    }
  std::vector<Term> out;
  for (long gx = -kBox; gx <= kBox; ++gx)
    for (long gy = -kBox; gy <= kBox; ++gy) {
      Vec g{Rat(gx), Rat(gy)};
      const auto& mab = mab_m[{gx, gy}];
      for (long hx = -kBox; hx <= kBox; ++hx)
        for (long hy = -kBox; hy <= kBox; ++hy) {
          Vec h{Rat(hx), Rat(hy)};
          const auto& mac = mac_m[{hx, hy}];
          const auto& mbc0 = bc[{hx - gx, hy - gy}];
          for (const Meet& x1 : mab) {
            // Anchored representative: both parameters on the base pass.
            if (x1.pa < 0 || x1.pa >= na) continue;
            if (x1.pb < 0 || x1.pb >= nb) continue;
            if (reduce_to_chart(x1.p) != x1_chart) continue;
            for (const Meet& x2 : mbc0) {
              if (x2.pb < 0 || x2.pb >= nc) continue;  // pins the c relift
              if (reduce_to_chart(x2.p + g) != x2_chart) continue;
              for (const Meet& y : mac) {
                std::vector<Pt> loop;
                arc_vertices(lb, g, x1.pb, x2.pa, loop);
                size_t corner_x2 = loop.size() - 1;
                loop.pop_back();
                arc_vertices(lc, h, x2.pb, y.pb, loop);
                size_t corner_y = loop.size() - 1;
                loop.pop_back();
                arc_vertices(la, Vec{}, y.pa, x1.pa, loop);
                loop.pop_back();
                Rat area = shoelace(loop);
                if (!(area > 0) || area >= cutoff) continue;
                if (!left_turns_and_simple(loop)) continue;
                if (!convex_corner(loop, 0) || !convex_corner(loop, corner_x2) ||
                    !convex_corner(loop, corner_y))
                  continue;
                long sgn = marked_hits(x1.pb, x2.pa, nb) +
                           marked_hits(x2.pb, y.pb, nc) +
                           marked_hits(y.pa, x1.pa, na);
                int deg_x1 =
                    det(curve_dir(la, x1.pa), curve_dir(lb, x1.pb)) > 0 ? 1 : 0;
                int deg_x2 =
                    det(curve_dir(lb, x2.pa), curve_dir(lc, x2.pb)) > 0 ? 1 : 0;
                int deg_y =
                    det(curve_dir(la, y.pa), curve_dir(lc, y.pb)) > 0 ? 1 : 0;
                if (deg_x1 == 1 && x2.pa < x1.pb) ++sgn;
                if (deg_x2 == 1 && y.pb < x2.pb) ++sgn;
                if (deg_y == 1 && y.pb < x2.pb) ++sgn;
                out.push_back({reduce_to_chart(y.p), area, sgn % 2 == 0 ? 1 : -1});
              }
            }
          }
        }
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracle
