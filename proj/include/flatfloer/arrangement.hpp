#pragma once

// Transversal crossing data for curves in a scene. A crossing may sit at a
// PL corner of one strand provided that strand changes sides strictly; the
// intersection degree is then independent of which adjacent segment
// represents the strand. Rejected outright: tangencies, overlaps, crossings
// on a chart edge, corner contact without a side change, crossings at
// corners of both strands, and triple points.

#include "flatfloer/curve.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace flatfloer {

// A point on a curve: fraction t in [0,1) along chart segment `seg`;
// t == 0 means the joint starting that segment.
struct StrandRef {
  size_t seg = 0;
  Rat t;
};

struct Crossing {
  Pt p;
  StrandRef on_a, on_b;
  Rat pa, pb;      // curve parameters measured from the marked points
  int degree = 0;  // of p as a morphism from the first curve to the second
};

// Arrival and departure directions of a strand at a reference point. They
// differ only at a PL corner (t == 0 at a plain joint).
inline std::pair<Vec, Vec> strand_dirs(const PLCurve& c, const StrandRef& r) {
  Vec out = c.seg_dir(r.seg);
  if (r.t != 0) return {out, out};
  size_t n = c.size();
  return {c.seg_dir((r.seg + n - 1) % n), out};
}

// Degree of a crossing as a morphism a -> b: 1 when the frame (strand of a,
// strand of b) is positively oriented. All arrival/departure representatives
// must give the same sign, which is exactly the strict side-change condition
// at a corner.
inline int crossing_degree(const PLCurve& a, const StrandRef& ra,
                           const PLCurve& b, const StrandRef& rb, const Pt& p) {
  auto [ain, aout] = strand_dirs(a, ra);
  auto [bin, bout] = strand_dirs(b, rb);
  int sign = 0;
  for (const Vec& da : {ain, aout})
    for (const Vec& db : {bin, bout}) {
      Rat d = det(da, db);
      if (d == 0)
        throw validation_error("tangential contact of '" + a.name + "' and '" +
                               b.name + "' at " + pt_str(p));
      int sd = d > 0 ? 1 : -1;
      if (sign == 0) sign = sd;
      if (sign != sd)
        throw validation_error("corner contact without a crossing of '" +
                               a.name + "' and '" + b.name + "' at " + pt_str(p));
    }
  return sign > 0 ? 1 : 0;
}

namespace arrangement_detail {

// Handle one segment pair. Meetings at t == 1 are skipped: the same chart
// point reappears as t == 0 of the next segment, so each crossing is
// recorded once. A meeting at a curve's edge-crossing joint means the two
// curves intersect on a chart edge, which the combinatorics does not
// support; such scenes must be re-charted.
inline void collect(const PLCurve& a, size_t i, const PLCurve& b, size_t j,
                    std::vector<Crossing>& out) {
  SegX x = seg_intersect(a.segment(i), b.segment(j));
  if (x.kind == SegXKind::none) return;
  if (x.kind == SegXKind::overlap)
    throw validation_error("curves '" + a.name + "' and '" + b.name +
                           "' overlap along a segment");
  size_t na = a.size(), nb = b.size();
  auto on_edge = [&](const PLCurve& c, size_t joint) {
    return c.joints[joint].crossing;
  };
  if (x.t1 == 1) {
    if (on_edge(a, (i + 1) % na))
      throw validation_error("curves '" + a.name + "' and '" + b.name +
                             "' cross on a chart edge at " + pt_str(x.p));
    return;
  }
  if (x.t2 == 1) {
    if (on_edge(b, (j + 1) % nb))
      throw validation_error("curves '" + a.name + "' and '" + b.name +
                             "' cross on a chart edge at " + pt_str(x.p));
    return;
  }
  bool ca = x.t1 == 0, cb = x.t2 == 0;
  if (ca && on_edge(a, i))
    throw validation_error("curves '" + a.name + "' and '" + b.name +
                           "' cross on a chart edge at " + pt_str(x.p));
  if (cb && on_edge(b, j))
    throw validation_error("curves '" + a.name + "' and '" + b.name +
                           "' cross on a chart edge at " + pt_str(x.p));
  if (ca && cb)
    throw validation_error("curves '" + a.name + "' and '" + b.name +
                           "' meet at joints of both at " + pt_str(x.p));
  Crossing c;
  c.p = x.p;
  c.on_a = {i, x.t1};
  c.on_b = {j, x.t2};
  c.pa = a.param_of(i, x.t1);
  c.pb = b.param_of(j, x.t2);
  c.degree = crossing_degree(a, c.on_a, b, c.on_b, x.p);
  out.push_back(c);
}

inline void sort_crossings(std::vector<Crossing>& v) {
  std::sort(v.begin(), v.end(), [](const Crossing& l, const Crossing& r) {
    if (l.pa != r.pa) return l.pa < r.pa;
    return l.pb < r.pb;
  });
}

}  // namespace arrangement_detail

// All transversal crossings of two distinct curves, sorted along `a`.
inline std::vector<Crossing> crossings_between(const PLCurve& a,
                                               const PLCurve& b) {
  std::vector<Crossing> out;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      arrangement_detail::collect(a, i, b, j, out);
  arrangement_detail::sort_crossings(out);
  return out;
}

// Self-crossings of one curve; each geometric crossing appears once, with
// the strand of smaller parameter first. Shared joints of adjacent segments
// are not crossings.
inline std::vector<Crossing> self_crossings(const PLCurve& a) {
  std::vector<Crossing> out;
  size_t n = a.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      arrangement_detail::collect(a, i, a, j, out);
  for (Crossing& c : out)
    if (c.pb < c.pa) {
      std::swap(c.on_a, c.on_b);
      std::swap(c.pa, c.pb);
      c.degree = 1 - c.degree;
    }
  arrangement_detail::sort_crossings(out);
  return out;
}

// Validate a whole scene: every pair of curves and every curve against
// itself intersects transversally, and no chart point lies on three strands.
inline void validate_scene(const FlatSurface& s,
                           const std::vector<PLCurve>& curves) {
  std::map<Pt, std::pair<size_t, size_t>, PtLess> seen;
  auto record = [&](const Pt& p, size_t ci, size_t cj) {
    auto [it, fresh] = seen.emplace(p, std::make_pair(ci, cj));
    if (!fresh)
      throw validation_error("triple point at " + pt_str(p) + ": curves '" +
                             curves[it->second.first].name + "', '" +
                             curves[it->second.second].name + "', '" +
                             curves[cj].name + "'");
  };
  for (size_t i = 0; i < curves.size(); ++i) {
    curves[i].validate(s);
    for (const Crossing& c : self_crossings(curves[i])) record(c.p, i, i);
    for (size_t j = i + 1; j < curves.size(); ++j)
      for (const Crossing& c : crossings_between(curves[i], curves[j]))
        record(c.p, i, j);
  }
}

}  // namespace flatfloer
