#pragma once

// Exact enumeration of the immersed convex-cornered polygons behind the
// structure maps. A query fixes the curve tuple and the input corners; the
// search chooses an output corner, a direction and a wrap count per side,
// closes the boundary in the developed plane, and keeps candidates passing
// the convexity, turning, winding, area, and cone-point conditions.

#include "flatfloer/arrangement.hpp"
#include "flatfloer/planar.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace flatfloer {

namespace poly_detail {

// u = w*n + p with p in [0, n).
inline std::pair<long, Rat> wrap_split(const Rat& u, long n) {
  Rat q = u / n;
  Int f = numerator(q) / denominator(q);
  if (Rat(f) > q) f -= 1;
  long w = static_cast<long>(f);
  return {w, u - Rat(w) * n};
}

inline long floor_long(const Rat& u) {
  Int f = numerator(u) / denominator(u);
  if (Rat(f) > u) f -= 1;
  return static_cast<long>(f);
}

// Developed position at unwrapped parameter u.
inline Pt own_pos(const DevelopedCurve& d, const PLCurve& c, const Rat& u) {
  auto [w, p] = wrap_split(u, long(c.size()));
  return dev_at(d, c, p, w);
}

// Endpoint displacement of the arc from parameter a to b with no extra
// wraps; adding a wrap moves the endpoint by eps * period.
inline Vec disp0(const DevelopedCurve& d, const PLCurve& c, const Rat& a,
                 const Rat& b, int eps) {
  long n = long(c.size());
  Rat len0 = eps > 0 ? b - a : a - b;
  if (len0 <= 0) len0 += n;
  Rat end = eps > 0 ? Rat(a + len0) : Rat(a - len0);
  return own_pos(d, c, end) - own_pos(d, c, a);
}

struct SideWalk {
  std::vector<Pt> verts;      // developed, in the polygon frame
  std::vector<Vec> piece_tr;  // chart translate of each piece
  Rat hol0{0};
  long passes = 0;
};

inline SideWalk walk_side(const FlatSurface& s, const PLCurve& c,
                          const DevelopedCurve& d, const Rat& a, const Rat& b,
                          long wraps, int eps, const Pt& start) {
  long n = long(c.size());
  Rat len0 = eps > 0 ? b - a : a - b;
  if (len0 <= 0) len0 += n;
  Rat len = len0 + Rat(n) * wraps;
  std::vector<Rat> us{a};
  if (eps > 0) {
    Rat end = a + len;
    for (long g = floor_long(a) + 1; Rat(g) < end; ++g) us.push_back(Rat(g));
    us.push_back(end);
  } else {
    Rat end = a - len;
    long g = floor_long(a);
    if (Rat(g) == a) --g;
    for (; Rat(g) > end; --g) us.push_back(Rat(g));
    us.push_back(end);
  }
  SideWalk w;
  Vec shift = start - own_pos(d, c, a);
  for (const Rat& u : us) w.verts.push_back(own_pos(d, c, u) + shift);
  for (size_t i = 0; i + 1 < us.size(); ++i) {
    long m = eps > 0 ? floor_long(us[i]) : floor_long(us[i + 1]);
    long mm = ((m % n) + n) % n;
    Vec tr = d.acc[size_t(mm)] + d.period * Rat((m - mm) / n) + shift;
    w.piece_tr.push_back(tr);
    w.hol0 += xdy(w.verts[i] - tr, w.verts[i + 1] - tr);
  }
  for (size_t i = 1; i + 1 < us.size(); ++i) {
    // interior vertices sit at integer parameters
    long u = floor_long(us[i]);
    long mm = ((u % n) + n) % n;
    const Joint& j = c.joints[size_t((long(c.marked) + mm) % n)];
    if (!j.crossing) continue;
    const Vec& v = s.trans[size_t(j.edge)];
    Rat corr = v.x * (j.out.y + v.y / 2);
    w.hol0 += eps > 0 ? corr : -corr;
  }
  w.passes = marked_passes(c, a, b, wraps, eps);
  return w;
}

inline Rat abs_rat(const Rat& r) { return r < 0 ? -r : r; }

inline Rat inf_norm(const Vec& v) {
  Rat x = abs_rat(v.x), y = abs_rat(v.y);
  return x > y ? x : y;
}

}  // namespace poly_detail

struct ImmersedPolygon {
  std::vector<Crossing> inputs;    // corners x_1..x_k in boundary order
  Crossing output;
  std::vector<int> eps;            // sides 1..k, then side 0
  std::vector<long> wraps;
  std::vector<Pt> loop;            // developed boundary, vertex 0 at x_1
  std::vector<Vec> piece_tr;       // chart translate of each boundary piece
  std::vector<size_t> corner_idx;  // positions of x_1..x_k, y in the loop
  Rat area;
  Rat hol0;  // translation holonomy of the boundary loop
  long sign_count = 0;
  int sign = 1;
};

// Every complementary region of the boundary loop has winding number >= 0.
// Each piece is split at crossings and at loop vertices lying on it; one
// off-loop sample on each side of every open sub-piece meets every region.
inline bool windings_nonnegative(const std::vector<Pt>& loop) {
  size_t L = loop.size();
  std::vector<Seg> pieces(L);
  for (size_t i = 0; i < L; ++i) pieces[i] = {loop[i], loop[(i + 1) % L]};
  for (size_t i = 0; i < L; ++i) {
    const Seg& pc = pieces[i];
    Vec dir = pc.dir();
    Rat dd = dot(dir, dir);
    std::vector<Rat> ts{Rat(0), Rat(1)};
    for (size_t j = 0; j < L; ++j) {
      if (j == i) continue;
      SegX x = seg_intersect(pc, pieces[j]);
      if (x.kind == SegXKind::transversal || x.kind == SegXKind::endpoint)
        ts.push_back(x.t1);
    }
    for (const Pt& v : loop)
      if (point_on_segment(v, pc) == OnSeg::interior)
        ts.push_back(dot(v - pc.a, dir) / dd);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    for (size_t t = 0; t + 1 < ts.size(); ++t) {
      Rat tm = (ts[t] + ts[t + 1]) / 2;
      Pt m = pc.a + dir * tm;
      Vec nrm{-dir.y, dir.x};
      for (int side : {1, -1}) {
        Rat delta(1, 8);
        Pt q;
        bool placed = false;
        for (int iter = 0; iter < 200 && !placed; ++iter, delta /= 2) {
          q = m + nrm * (delta * side);
          placed = true;
          for (const Seg& other : pieces) {
            SegX x = seg_intersect({m, q}, other);
            if (x.kind == SegXKind::none) continue;
            if (x.kind == SegXKind::overlap || x.p != m) {
              placed = false;
              break;
            }
          }
        }
        if (!placed)
          throw std::logic_error("could not place a winding sample");
        if (winding_number_at(loop, q) < 0) return false;
      }
    }
  }
  return true;
}

// On branched surfaces the positive-winding part of the polygon must avoid
// every developed image of the cone point.
inline bool avoids_cone_points(const FlatSurface& s,
                               const std::vector<Pt>& loop) {
  if (s.branching <= 1) return true;
  Rat r(1);
  for (const Pt& p : loop) {
    Rat n = poly_detail::inf_norm(p);
    if (n > r) r = n;
  }
  for (const Pt& z : s.corner_orbit(r + 1)) {
    bool on = false;
    for (size_t i = 0; i < loop.size() && !on; ++i)
      if (point_on_segment(z, {loop[i], loop[(i + 1) % loop.size()]}) !=
          OnSeg::off)
        on = true;
    if (on) return false;
    if (winding_number_at(loop, z) > 0) return false;
  }
  return true;
}

// Search extent: candidate boundaries must stay within this distance of the
// first corner. The default covers the chart and everything an area budget
// of `cutoff` can reach at desk scale.
inline Rat default_radius(const FlatSurface& s, const Rat& cutoff) {
  Rat minx = s.verts[0].x, maxx = minx, miny = s.verts[0].y, maxy = miny;
  for (const Pt& v : s.verts) {
    if (v.x < minx) minx = v.x;
    if (v.x > maxx) maxx = v.x;
    if (v.y < miny) miny = v.y;
    if (v.y > maxy) maxy = v.y;
  }
  Rat w = maxx - minx, h = maxy - miny;
  Rat diam = w > h ? w : h;
  return 2 * diam + 2 * cutoff;
}

// Wrap bound for one side: periodic sides cannot stray past the radius,
// null-period sides cannot add developed area past the cutoff.
inline long side_wrap_cap(const DevelopedCurve& d, const Rat& cutoff,
                          const Rat& radius) {
  using poly_detail::floor_long;
  if (!d.period.is_zero()) {
    Rat m = poly_detail::inf_norm(d.period);
    return floor_long(2 * radius / m) + 1;
  }
  Rat sh = shoelace(d.dev_a);
  if (sh < 0) sh = -sh;
  if (sh > 0) return floor_long(cutoff / sh) + 2;
  return 4;
}

inline std::vector<ImmersedPolygon> enumerate_polygons(
    const FlatSurface& s, const std::vector<const PLCurve*>& curves,
    const std::vector<Crossing>& inputs, const Rat& cutoff,
    Rat radius = Rat(0)) {
  using namespace poly_detail;
  if (curves.size() < 2 || inputs.size() + 1 != curves.size())
    throw validation_error("polygon query needs k+1 curves and k inputs");
  size_t k = inputs.size();
  for (size_t i = 0; i + 1 < curves.size(); ++i)
    if (curves[i]->name == curves[i + 1]->name)
      throw validation_error("consecutive polygon curves must be distinct");
  if (curves.front()->name == curves.back()->name)
    throw validation_error("the output pair of a polygon query must be distinct");
  if (radius == 0) radius = default_radius(s, cutoff);

  std::vector<DevelopedCurve> dev(curves.size());
  for (size_t i = 0; i < curves.size(); ++i) dev[i] = curves[i]->develop(s);

  // Side i < k runs on curves[i+1] from x_{i+1} to x_{i+2}; side k runs on
  // curves[0] from the output back to x_1.
  auto side_curve = [&](size_t i) { return i < k ? curves[i + 1] : curves[0]; };
  auto side_dev = [&](size_t i) -> const DevelopedCurve& {
    return i < k ? dev[i + 1] : dev[0];
  };
  std::vector<long> caps(k + 1);
  for (size_t i = 0; i <= k; ++i)
    caps[i] = side_wrap_cap(side_dev(i), cutoff, radius);

  std::vector<ImmersedPolygon> found;
  for (const Crossing& y : crossings_between(*curves[0], *curves[k])) {
    std::vector<Rat> pa(k + 1), pb(k + 1);
    for (size_t i = 0; i < k; ++i) {
      pa[i] = inputs[i].pb;
      pb[i] = i + 1 < k ? inputs[i + 1].pa : y.pb;
    }
    pa[k] = y.pa;
    pb[k] = inputs[0].pa;

    std::vector<std::array<Vec, 2>> d0(k + 1);
    for (size_t i = 0; i <= k; ++i) {
      d0[i][0] = disp0(side_dev(i), *side_curve(i), pa[i], pb[i], 1);
      d0[i][1] = disp0(side_dev(i), *side_curve(i), pa[i], pb[i], -1);
    }
    // Largest endpoint displacement the remaining sides can still undo.
    std::vector<Rat> tail(k + 2, Rat(0));
    for (size_t i = k + 1; i-- > 0;) {
      Rat m(0);
      for (int e = 0; e < 2; ++e) {
        Rat n = inf_norm(d0[i][e]) + inf_norm(side_dev(i).period) * caps[i];
        if (n > m) m = n;
      }
      tail[i] = tail[i + 1] + m;
    }

    std::vector<int> eps(k + 1);
    std::vector<long> wraps(k + 1);

    auto build = [&]() {
      Pt cur = inputs[0].p;
      std::vector<Pt> loop;
      std::vector<Vec> ptr;
      std::vector<size_t> cidx{0};
      Rat hol(0);
      long passes = 0;
      for (size_t i = 0; i <= k; ++i) {
        SideWalk wk = walk_side(s, *side_curve(i), side_dev(i), pa[i], pb[i],
                                wraps[i], eps[i], cur);
        passes += wk.passes;
        hol += wk.hol0;
        for (size_t v = 0; v + 1 < wk.verts.size(); ++v)
          loop.push_back(wk.verts[v]);
        for (const Vec& t : wk.piece_tr) ptr.push_back(t);
        cur = wk.verts.back();
        if (i < k) cidx.push_back(loop.size());
      }
      size_t L = loop.size();
      for (size_t ci : cidx) {
        Vec din = loop[ci] - loop[(ci + L - 1) % L];
        Vec dout = loop[(ci + 1) % L] - loop[ci];
        if (!(det(din, dout) > 0)) return;
      }
      std::vector<Vec> dirs(L);
      for (size_t i = 0; i < L; ++i) dirs[i] = loop[(i + 1) % L] - loop[i];
      if (turning_number(dirs) != 1) return;
      Rat area = shoelace(loop);
      if (!(area > 0) || area >= cutoff) return;
      if (!windings_nonnegative(loop)) return;
      if (!avoids_cone_points(s, loop)) return;
      long degs = long(k);
      for (const Crossing& x : inputs) degs += x.degree;
      if (y.degree != int(degs % 2))
        throw std::logic_error("degree law violated by an accepted polygon");
      long sgn = passes;
      for (size_t j = 0; j < k; ++j)
        if (inputs[j].degree == 1 && eps[j] < 0) ++sgn;
      if (y.degree == 1 && eps[k - 1] < 0) ++sgn;
      ImmersedPolygon P;
      P.inputs = inputs;
      P.output = y;
      P.eps = eps;
      P.wraps = wraps;
      P.loop = std::move(loop);
      P.piece_tr = std::move(ptr);
      P.corner_idx = std::move(cidx);
      P.area = area;
      P.hol0 = hol;
      P.sign_count = sgn;
      P.sign = sgn % 2 == 0 ? 1 : -1;
      found.push_back(std::move(P));
    };

    std::function<void(size_t, const Vec&)> rec = [&](size_t i,
                                                      const Vec& pre) {
      if (i == k + 1) {
        if (pre.is_zero()) build();
        return;
      }
      for (int e : {1, -1})
        for (long w = 0; w <= caps[i]; ++w) {
          Vec d = d0[i][e > 0 ? 0 : 1] + side_dev(i).period * Rat(e * w);
          Vec np = pre + d;
          Rat nn = inf_norm(np);
          if (nn > tail[i + 1] || nn > 2 * radius) continue;
          eps[i] = e;
          wraps[i] = w;
          rec(i + 1, np);
        }
    };
    rec(0, Vec{});
  }
  std::sort(found.begin(), found.end(),
            [](const ImmersedPolygon& a, const ImmersedPolygon& b) {
              if (a.area != b.area) return a.area < b.area;
              if (a.output.p != b.output.p) return pt_less(a.output.p, b.output.p);
              if (a.eps != b.eps) return a.eps < b.eps;
              return a.wraps < b.wraps;
            });
  return found;
}

// Multiplicity of each complementary region under the polygon. The boundary
// pieces are dropped into the chart and the local covering number is
// transported between regions by counting signed transversal crossings along
// chart paths; anchoring the minimum at zero is valid while the polygon area
// stays below the surface area, so at least one region is uncovered. The
// weighted region areas must add back up to the polygon area.
inline std::vector<long> polygon_domain(const FlatSurface& s,
                                        const Subdivision& sub,
                                        const ImmersedPolygon& u) {
  size_t L = u.loop.size();
  if (!(u.area < s.area()))
    throw std::logic_error("domain multiplicities need polygon area below the surface area");
  std::vector<Seg> pieces(L);
  for (size_t i = 0; i < L; ++i)
    pieces[i] = {u.loop[i] - u.piece_tr[i],
                 u.loop[(i + 1) % L] - u.piece_tr[i]};

  // Signed boundary crossings of a chart path; the disc lies to the left of
  // every directed piece. Degenerate meetings reject the path.
  auto crossings = [&](const Pt& a, const Pt& b) -> std::optional<long> {
    Seg path{a, b};
    long m = 0;
    for (const Seg& q : pieces) {
      SegX x = seg_intersect(path, q);
      if (x.kind == SegXKind::none) continue;
      if (x.kind != SegXKind::transversal) return std::nullopt;
      m += det(q.dir(), path.dir()) > 0 ? 1 : -1;
    }
    return m;
  };

  // Transport paths start at a point of the chart's star-shape kernel, so
  // every segment to a region sample stays inside the chart.
  auto kernel_ok = [&](const Pt& w) {
    if (!s.strictly_inside(w)) return false;
    for (size_t e = 0; e < s.n_edges(); ++e) {
      Seg g = s.edge(e);
      if (!(det(g.dir(), w - g.a) > 0)) return false;
    }
    return true;
  };
  std::vector<Pt> kernel;
  {
    std::vector<Pt> seeds;
    Pt c{};
    for (const Pt& v : s.verts) {
      c.x += v.x;
      c.y += v.y;
    }
    c.x /= Rat(long(s.verts.size()));
    c.y /= Rat(long(s.verts.size()));
    seeds.push_back(c);
    for (size_t i = 0; i < s.verts.size(); ++i)
      for (size_t j = i + 1; j < s.verts.size(); ++j)
        seeds.push_back(Pt{(s.verts[i].x + s.verts[j].x) / 2,
                           (s.verts[i].y + s.verts[j].y) / 2});
    for (const Pt& p : seeds)
      if (kernel_ok(p)) {
        kernel.push_back(p);
        break;
      }
    if (kernel.empty())
      throw std::logic_error("chart has no visible star kernel for the domain transport");
    const std::array<Vec, 8> dirs = {
        Vec{Rat(1), Rat(0)},  Vec{Rat(0), Rat(1)},  Vec{Rat(-1), Rat(0)},
        Vec{Rat(0), Rat(-1)}, Vec{Rat(1), Rat(1)},  Vec{Rat(-1), Rat(1)},
        Vec{Rat(1), Rat(-1)}, Vec{Rat(-1), Rat(-1)}};
    for (long j = 3; j <= 6 && kernel.size() < 16; ++j)
      for (const Vec& d : dirs) {
        Pt w = kernel[0] + d * (Rat(1) / Rat(1L << j));
        if (kernel_ok(w)) kernel.push_back(w);
      }
  }

  std::vector<long> rel(sub.faces().size(), 0);
  for (size_t f = 0; f < rel.size(); ++f) {
    bool done = false;
    for (size_t attempt = 0; attempt < 400 && !done; ++attempt) {
      const Pt& w = kernel[attempt % kernel.size()];
      Pt t = sub.face_point(f, attempt / kernel.size());
      std::optional<long> m =
          t == w ? std::optional<long>(0) : crossings(w, t);
      if (m) {
        rel[f] = *m;
        done = true;
      }
    }
    if (!done)
      throw std::logic_error("could not transport a multiplicity to a region");
  }

  long base = *std::min_element(rel.begin(), rel.end());
  std::vector<long> mult(rel.size());
  Rat total(0);
  for (size_t f = 0; f < rel.size(); ++f) {
    mult[f] = rel[f] - base;
    total += Rat(mult[f]) * sub.faces()[f].area;
  }
  if (total != u.area)
    throw std::logic_error("region multiplicities do not add up to the area");
  return mult;
}

}  // namespace flatfloer
