#pragma once

// Closed oriented PL curves on a flat surface. A curve is a cyclic list of
// joints; segment i runs from joints[i].in to joints[i+1].out in the chart.
// A non-crossing joint has in == out at an interior point. A crossing joint
// exits the chart through an edge at `out` and re-enters at `in`, which must
// be the translate of `out` across the pairing. The marked point is
// joints[marked].in.

#include "flatfloer/surface.hpp"

#include <string>
#include <vector>

namespace flatfloer {

struct Joint {
  Pt out, in;
  bool crossing = false;
  int edge = -1;
};

// Developed image of one full pass of the curve, starting at the marked
// point: segment m of the walk runs dev_a[m] -> dev_b[m], and the next pass
// is the whole picture translated by `period`.
struct DevelopedCurve {
  std::vector<Pt> dev_a, dev_b;
  std::vector<Vec> acc;  // translation applied to walk segment m
  Vec period;
};

class PLCurve {
 public:
  std::string name;
  std::vector<Joint> joints;
  int marked = 0;
  int parity = 0;  // toggled by shift(); contributes to gradings only

  size_t size() const { return joints.size(); }

  Seg segment(size_t i) const {
    return {joints[i].in, joints[(i + 1) % joints.size()].out};
  }

  Vec seg_dir(size_t i) const { return segment(i).dir(); }

  Pt marked_point() const { return joints[marked].in; }

  void validate(const FlatSurface& s) const {
    size_t n = joints.size();
    if (n == 0) throw validation_error("curve '" + name + "' has no joints");
    if (marked < 0 || marked >= int(n))
      throw validation_error("curve '" + name + "' has bad marked index");
    for (size_t i = 0; i < n; ++i) {
      const Joint& j = joints[i];
      if (j.crossing) {
        if (j.edge < 0 || j.edge >= int(s.n_edges()))
          throw validation_error("curve '" + name + "' crossing has bad edge");
        if (!s.paired(j.edge))
          throw validation_error("curve '" + name + "' crosses a boundary edge");
        if (point_on_segment(j.out, s.edge(j.edge)) != OnSeg::interior)
          throw validation_error("curve '" + name +
                                 "' crossing point is not interior to its edge");
        if (j.in != j.out + s.trans[j.edge])
          throw validation_error("curve '" + name +
                                 "' crossing does not respect the pairing");
      } else {
        if (j.in != j.out)
          throw validation_error("curve '" + name + "' joint is discontinuous");
        if (!s.strictly_inside(j.in))
          throw validation_error("curve '" + name +
                                 "' joint is not strictly inside the chart");
      }
    }
    for (size_t i = 0; i < n; ++i) {
      Seg g = segment(i);
      if (g.a == g.b)
        throw validation_error("curve '" + name + "' has a degenerate segment");
      // Stay inside the closed polygon, touching edges only at the
      // segment's own crossing endpoints.
      for (size_t e = 0; e < s.n_edges(); ++e) {
        SegX x = seg_intersect(g, s.edge(e));
        if (x.kind == SegXKind::none) continue;
        if (x.kind == SegXKind::overlap)
          throw validation_error("curve '" + name + "' runs along a chart edge");
        if (x.p != g.a && x.p != g.b)
          throw validation_error("curve '" + name +
                                 "' meets a chart edge or corner mid-segment");
        if (s.corner_at(x.p) >= 0)
          throw validation_error("curve '" + name + "' touches a chart corner");
      }
      Pt mid = (g.a + g.b) * Rat(1, 2);
      if (!s.strictly_inside(mid))
        throw validation_error("curve '" + name + "' leaves the chart");
    }
    for (size_t i = 0; i < n; ++i) {
      Vec d1 = seg_dir((i + n - 1) % n), d2 = seg_dir(i);
      if (det(d1, d2) == 0 && dot(d1, d2) < 0)
        throw validation_error("curve '" + name +
                               "' backtracks at a joint (not immersed)");
    }
  }

  // Orientation reversal. Geometry is reversed in place and the shift
  // parity is toggled; the marked point stays at the same surface point.
  // A reversed crossing exits through the partner of the original edge.
  PLCurve shifted(const FlatSurface& s) const {
    size_t n = joints.size();
    PLCurve r;
    r.name = name;
    r.parity = parity ^ 1;
    r.joints.resize(n);
    for (size_t m = 0; m < n; ++m) {
      const Joint& o = joints[(n - m) % n];
      Joint& j = r.joints[m];
      j.out = o.in;
      j.in = o.out;
      j.crossing = o.crossing;
      j.edge = o.crossing ? s.partner[o.edge] : -1;
    }
    r.marked = int((n - marked) % n);
    return r;
  }

  // Signed count of pairing crossings: +1 when exiting through the second
  // edge of a pairing, -1 through the first. One component per pairing, in
  // the order the pairings were given.
  std::vector<long> homology_class(const FlatSurface& s) const {
    std::vector<long> h(s.pairings.size(), 0);
    for (const Joint& j : joints) {
      if (!j.crossing) continue;
      for (size_t p = 0; p < s.pairings.size(); ++p) {
        if (s.pairings[p].e2 == j.edge) h[p] += 1;
        if (s.pairings[p].e1 == j.edge) h[p] -= 1;
      }
    }
    return h;
  }

  // Planar turning number of the developed curve (exact integer).
  long turning() const {
    std::vector<Vec> dirs;
    for (size_t i = 0; i < joints.size(); ++i) dirs.push_back(seg_dir(i));
    return turning_number(dirs);
  }

  // Winding degree: turning number of the curve measured against the
  // orientation of the surface's complement convention.
  long winding_degree() const { return -turning(); }

  // Translation-invariant holonomy integral: integral of x dy along chart
  // segments plus, at each crossing with continuation translate (a, b), the
  // correction a (y + b/2) at the exit point. Independent of the marked
  // point and of the chart subdivision; reverses sign under shift.
  Rat holonomy0(const FlatSurface& s) const {
    Rat h = 0;
    size_t n = joints.size();
    for (size_t i = 0; i < n; ++i) {
      Seg g = segment(i);
      h += xdy(g.a, g.b);
    }
    for (const Joint& j : joints) {
      if (!j.crossing) continue;
      const Vec& v = s.trans[j.edge];
      h += v.x * (j.out.y + v.y / 2);
    }
    return h;
  }

  // Full holonomy: the translation part plus the area-normalized turning
  // correction kappa * turning.
  Rat holonomy(const FlatSurface& s) const {
    return holonomy0(s) + s.kappa() * Rat(turning());
  }

  DevelopedCurve develop(const FlatSurface& s) const {
    size_t n = joints.size();
    DevelopedCurve d;
    d.dev_a.resize(n);
    d.dev_b.resize(n);
    d.acc.resize(n);
    Vec T{};
    for (size_t m = 0; m < n; ++m) {
      size_t seg = (marked + m) % n;
      Seg g = segment(seg);
      d.acc[m] = T;
      d.dev_a[m] = g.a + T;
      d.dev_b[m] = g.b + T;
      const Joint& next = joints[(seg + 1) % n];
      if (next.crossing) T = T - s.trans[next.edge];
    }
    d.period = T;
    return d;
  }

  // Curve parameter of a point on segment `seg` (chart index) at fraction t,
  // measured from the marked point: value in [0, n).
  Rat param_of(size_t seg, const Rat& t) const {
    size_t n = joints.size();
    size_t m = (seg + n - marked) % n;
    return Rat(m) + t;
  }
};

// One construction step: a straight segment to a point, or an edge crossing
// landing at the paired translate.
struct CurveStep {
  bool cross = false;
  Pt to;
};

// Build a curve from a start point and steps; the last step must return to
// the start. The marked point is the start.
inline PLCurve make_curve(const FlatSurface& s, std::string name, Pt start,
                          const std::vector<CurveStep>& steps) {
  size_t n = steps.size();
  if (n == 0) throw validation_error("curve '" + name + "' has no steps");
  std::vector<Pt> pos(n + 1);
  pos[0] = start;
  for (size_t k = 0; k < n; ++k) pos[k + 1] = steps[k].to;
  if (pos[n] != start)
    throw validation_error("curve '" + name + "' does not close up");
  for (size_t k = 0; k < n; ++k)
    if (steps[k].cross && steps[(k + 1) % n].cross)
      throw validation_error("curve '" + name + "' has consecutive crossings");

  PLCurve c;
  c.name = std::move(name);
  int marked_joint = -1;
  for (size_t k = 0; k < n; ++k) {
    if (steps[k].cross) continue;  // crossings become joints, lines segments
    Joint j;
    size_t prev = (k + n - 1) % n;
    if (steps[prev].cross) {
      j.crossing = true;
      j.out = pos[prev];
      j.in = pos[k];
      j.edge = s.edge_interior_at(j.out);
      if (j.edge < 0)
        throw validation_error("curve '" + c.name +
                               "' crossing point is not on an edge");
      if (j.in != j.out + s.trans[j.edge])
        throw validation_error("curve '" + c.name +
                               "' crossing target is not the paired translate");
    } else {
      j.out = j.in = pos[k];
    }
    if ((j.in == start || j.out == start) && marked_joint < 0)
      marked_joint = int(c.joints.size());
    c.joints.push_back(j);
  }
  if (c.joints.empty())
    throw validation_error("curve '" + c.name + "' has no segments");
  if (marked_joint < 0) marked_joint = 0;
  c.marked = marked_joint;
  c.validate(s);
  return c;
}

// Developed position of curve parameter p + wraps*n (p in [0, n)).
inline Pt dev_at(const DevelopedCurve& d, const PLCurve& c, const Rat& p,
                 long wraps) {
  size_t n = c.size();
  Int mi = numerator(p) / denominator(p);
  long m = static_cast<long>(mi);
  Rat t = p - Rat(m);
  if (m < 0 || m >= long(n)) throw std::invalid_argument("parameter out of range");
  Pt base = d.dev_a[m] + (d.dev_b[m] - d.dev_a[m]) * t;
  return base + d.period * Rat(wraps);
}

// Number of marked-point passes on the oriented arc from parameter p1 to
// parameter p2 + extra full wraps (eps = +1 forward, -1 backward). The arc is
// open at both ends; parameters never sit exactly on the marked point for
// valid scenes.
inline long marked_passes(const PLCurve& c, const Rat& p1, const Rat& p2,
                          long wraps, int eps) {
  Rat n(c.size());
  if (p1 == 0 || p2 == 0)
    throw validation_error("polygon corner at a marked point (degenerate scene)");
  Rat len;
  if (eps > 0) {
    len = p2 - p1;
    if (len <= 0) len += n;
  } else {
    len = p1 - p2;
    if (len <= 0) len += n;
  }
  len += n * wraps;
  // Count multiples of n in the open interval starting at p1 of length len.
  // Walking forward from p1: passes at n - p1 + k n < len. Backward: p1 + k n < len.
  Rat first = eps > 0 ? n - p1 : p1;
  if (len <= first) return 0;
  Rat q = (len - first) / n;
  Int fl = numerator(q) / denominator(q);
  long extra = static_cast<long>(fl);
  if (Rat(fl) == q && q >= 0) extra -= 1;  // endpoint exactly on marked: excluded
  return 1 + extra;
}

}  // namespace flatfloer
