#pragma once

// Exact geometric operations on curves: invariant vectors, an essentialness
// certificate, Hamiltonian pushoffs, connect-sum resolution of a crossing,
// and Dehn twists along straight circles. Every construction is rational,
// returns a validated curve, and fails loudly when its hypotheses are not
// met rather than perturbing the input.

#include "flatfloer/arrangement.hpp"
#include "flatfloer/curve.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace flatfloer {

// ---------------------------------------------------------------------------
// Invariant vectors

// (homology class, holonomy, winding degree) of a curve or formal sum of
// curves. Addition is componentwise and a reversed curve contributes the
// negative; wd is stored raw, comparisons modulo the Euler characteristic go
// through wd_mod.
struct InvariantVector {
  std::vector<long> h1;
  Rat hol = Rat(0);
  long wd = 0;

  bool operator==(const InvariantVector& o) const {
    return h1 == o.h1 && hol == o.hol && wd == o.wd;
  }
  InvariantVector operator+(const InvariantVector& o) const {
    if (h1.size() != o.h1.size())
      throw validation_error("invariant vectors live on different surfaces");
    InvariantVector r = *this;
    for (size_t i = 0; i < h1.size(); ++i) r.h1[i] += o.h1[i];
    r.hol += o.hol;
    r.wd += o.wd;
    return r;
  }
  InvariantVector operator-() const {
    InvariantVector r = *this;
    for (long& v : r.h1) v = -v;
    r.hol = -r.hol;
    r.wd = -r.wd;
    return r;
  }
  long wd_mod(long chi) const {
    if (chi == 0) return wd;
    long m = chi < 0 ? -chi : chi;
    return ((wd % m) + m) % m;
  }
};

inline bool equal_mod_chi(const InvariantVector& a, const InvariantVector& b,
                          long chi) {
  return a.h1 == b.h1 && a.hol == b.hol && a.wd_mod(chi) == b.wd_mod(chi);
}

inline InvariantVector invariant_vector(const FlatSurface& s,
                                        const PLCurve& c) {
  InvariantVector v;
  v.h1 = c.homology_class(s);
  v.hol = c.holonomy(s);
  v.wd = c.winding_degree();
  return v;
}

// ---------------------------------------------------------------------------
// Shared geometric helpers

namespace curve_ops_detail {

inline Vec perp_left(const Vec& d) { return {-d.y, d.x}; }

inline long floor_long(const Rat& p) {
  Int q = numerator(p) / denominator(p);
  long f = static_cast<long>(q);
  if (Rat(f) > p) --f;  // numerator division truncates toward zero
  return f;
}

// Chart point at global parameter p (measured from the marked point, any
// number of wraps).
inline Pt point_at(const PLCurve& c, const Rat& p) {
  long n = long(c.size());
  long m = floor_long(p);
  Rat t = p - Rat(m);
  size_t seg = size_t(((m % n + n) % n + c.marked) % n);
  Seg g = c.segment(seg);
  return g.a + g.dir() * t;
}

// Chart segment index at global parameter p.
inline size_t seg_at(const PLCurve& c, const Rat& p) {
  long n = long(c.size());
  long m = floor_long(p);
  return size_t(((m % n + n) % n + c.marked) % n);
}

// Developed position at an extended parameter in [0, 2n).
inline Pt dev_ext(const DevelopedCurve& d, const PLCurve& c, const Rat& p) {
  Rat n(long(c.size()));
  if (p < n) return dev_at(d, c, p, 0);
  return dev_at(d, c, p - n, 1);
}

// Per-segment offset vectors displacing a curve to its left (T > 0) or right
// (T < 0) at total area rate T per maximal straight run. Straight runs
// continue through chart crossings; a direction change at a crossing joint
// has no exact offset and is rejected.
struct OffsetPlan {
  std::vector<Vec> ov;  // per chart segment
};

inline OffsetPlan plan_offsets(const PLCurve& c, const Rat& T) {
  size_t n = c.size();
  OffsetPlan plan;
  plan.ov.resize(n);
  std::vector<char> breaks(n, 0);  // direction change entering segment i
  bool any_break = false;
  for (size_t i = 0; i < n; ++i) {
    Vec dp = c.seg_dir((i + n - 1) % n), dc = c.seg_dir(i);
    if (det(dp, dc) != 0) {
      if (c.joints[i].crossing)
        throw validation_error(
            "offset of '" + c.name + "': corner at a chart crossing");
      breaks[i] = 1;
      any_break = true;
    }
  }
  auto assign_run = [&](size_t start) {
    Vec dref = c.seg_dir(start);
    Rat len2 = dot(dref, dref);
    Rat C = Rat(0);
    size_t i = start;
    std::vector<size_t> members;
    do {
      members.push_back(i);
      C += dot(c.seg_dir(i), dref) / len2;
      i = (i + 1) % n;
    } while (i != start && !breaks[i]);
    Vec o = perp_left(dref) * (T / (C * len2));
    for (size_t m : members) plan.ov[m] = o;
    return i;
  };
  if (!any_break) {
    assign_run(0);
    return plan;
  }
  size_t first = 0;
  while (!breaks[first]) ++first;
  size_t i = first;
  do i = assign_run(i);
  while (i != first);
  return plan;
}

// Chart position of joint i on the offset copy: offset-line intersection for
// a genuine corner, plain translate inside a straight run.
inline Pt miter_at(const PLCurve& c, const OffsetPlan& plan, size_t i) {
  size_t n = c.size();
  size_t prev = (i + n - 1) % n;
  Vec dp = c.seg_dir(prev), dc = c.seg_dir(i);
  const Pt& p = c.joints[i].in;
  if (det(dp, dc) == 0) return p + plan.ov[i];
  Rat t = det(plan.ov[i] - plan.ov[prev], dc) / det(dp, dc);
  return p + plan.ov[prev] + dp * t;
}

// Offset displacement of joint i in developed coordinates (vector identical
// to the chart one).
inline Vec miter_offset(const PLCurve& c, const OffsetPlan& plan, size_t i) {
  return miter_at(c, plan, i) - c.joints[i].in;
}

// Edge-crossing pair (out, in) of the offset copy at crossing joint i: the
// offset line meets the edge at a point slid along the strand direction.
inline std::pair<Pt, Pt> offset_crossing(const FlatSurface& s,
                                         const PLCurve& c,
                                         const OffsetPlan& plan, size_t i) {
  const Joint& j = c.joints[i];
  Vec d = c.seg_dir(i);  // equal on both sides of a straight crossing
  Vec e = s.edge(j.edge).dir();
  Rat den = det(d, e);
  if (den == 0)
    throw validation_error("offset crossing is tangent to its edge");
  Rat t = -det(plan.ov[i], e) / den;
  Pt q = j.out + plan.ov[i] + d * t;
  return {q, q + s.trans[j.edge]};
}

// A perpendicular dip to the right of the curve between two parameters on
// one chart segment, at right-offset vector dv.
struct Dip {
  Rat p_s, p_e;  // global parameters in [0, n), same segment, p_s < p_e
  Vec dv;        // left-normal vector; the dip floor sits at -dv
};

// Steps for the full offset copy of c (with optional dips), walked from the
// image of the marked joint.
inline std::vector<CurveStep> offset_cycle_steps(const PLCurve& c,
                                                 const OffsetPlan& plan,
                                                 std::vector<Dip> dips,
                                                 Pt& start_out) {
  size_t n = c.size();
  std::sort(dips.begin(), dips.end(),
            [](const Dip& a, const Dip& b) { return a.p_s < b.p_s; });
  auto joint_image_steps = [&](size_t jidx, std::vector<CurveStep>& out) {
    const Joint& j = c.joints[jidx];
    if (j.crossing) {
      size_t prev = (jidx + n - 1) % n;
      out.push_back({false, j.out + plan.ov[prev]});
      out.push_back({true, j.in + plan.ov[jidx]});
    } else {
      out.push_back({false, miter_at(c, plan, jidx)});
    }
  };
  const Joint& mj = c.joints[size_t(c.marked)];
  start_out = mj.crossing ? mj.in + plan.ov[size_t(c.marked)]
                          : miter_at(c, plan, size_t(c.marked));
  std::vector<CurveStep> steps;
  for (size_t m = 1; m <= n; ++m) {
    Rat lo(long(m - 1)), hi(long(m));
    for (const Dip& d : dips) {
      if (d.p_s < lo || d.p_s >= hi) continue;
      size_t seg = seg_at(c, d.p_s);
      steps.push_back({false, point_at(c, d.p_s) + plan.ov[seg]});
      steps.push_back({false, point_at(c, d.p_s) - d.dv});
      steps.push_back({false, point_at(c, d.p_e) - d.dv});
      steps.push_back({false, point_at(c, d.p_e) + plan.ov[seg]});
    }
    joint_image_steps((size_t(c.marked) + m) % n, steps);
  }
  return steps;
}

// Holonomy primitive of a closed step path, without building a curve. Used
// to solve for free parameters of a construction before validating it.
inline Rat hol0_of_steps(const FlatSurface& s, const Pt& start,
                         const std::vector<CurveStep>& steps) {
  Rat h(0);
  Pt cur = start;
  for (const CurveStep& st : steps) {
    if (st.cross) {
      int e = s.edge_interior_at(cur);
      if (e < 0 || st.to != cur + s.trans[e])
        throw validation_error("crossing step is not a paired translate");
      const Vec& v = s.trans[e];
      h += v.x * (cur.y + v.y / 2);
    } else {
      h += xdy(cur, st.to);
    }
    cur = st.to;
  }
  if (cur != start) throw validation_error("step path does not close up");
  return h;
}

// Append the chart realization of a straight developed piece from dev_from
// to dev_to, starting at chart point chart_from (the chart image of
// dev_from). Inserts crossing steps at every seam; returns the final chart
// point.
inline Pt append_folded(const FlatSurface& s, Pt chart_from, Pt dev_from,
                        Pt dev_to, std::vector<CurveStep>& out) {
  Pt cur = chart_from;
  Pt tgt = dev_to + (chart_from - dev_from);
  for (int guard = 0; guard < 4096; ++guard) {
    int best_e = -1;
    Rat best_t(0);
    Pt best_p;
    for (size_t e = 0; e < s.n_edges(); ++e) {
      SegX x = seg_intersect({cur, tgt}, s.edge(e));
      if (x.kind == SegXKind::none) continue;
      if (x.kind == SegXKind::overlap)
        throw validation_error("folded path runs along a chart edge");
      if (x.p == cur) continue;
      if (s.corner_at(x.p) >= 0)
        throw validation_error("folded path passes through a chart corner");
      if (best_e < 0 || x.t1 < best_t) {
        best_e = int(e);
        best_t = x.t1;
        best_p = x.p;
      }
    }
    if (best_e < 0) {
      out.push_back({false, tgt});
      return tgt;
    }
    if (best_p == tgt)
      throw validation_error("folded path ends on a chart edge");
    if (!s.paired(best_e))
      throw validation_error("folded path exits through a boundary edge");
    out.push_back({false, best_p});
    out.push_back({true, best_p + s.trans[best_e]});
    cur = best_p + s.trans[best_e];
    tgt = tgt + s.trans[best_e];
  }
  throw std::logic_error("folded path does not terminate");
}

// Solve f(x) = target on (lo, hi) where f is continuous and affine between
// integer parameter values. Marches unit spans, interpolates from two exact
// samples, and re-evaluates the solution to certify it.
inline Rat solve_piecewise_affine(const std::function<Rat(const Rat&)>& f,
                                  const Rat& lo, const Rat& hi,
                                  const Rat& target, const char* what) {
  Rat a = lo;
  while (a < hi) {
    Rat b = Rat(floor_long(a) + 1);
    if (b <= a) b = a + 1;
    if (b > hi) b = hi;
    Rat s1 = a + (b - a) / 4, s2 = b - (b - a) / 4;
    Rat f1 = f(s1), f2 = f(s2);
    if (f1 != f2) {
      Rat x = s1 + (target - f1) * (s2 - s1) / (f2 - f1);
      if (x > a && x < b) {
        if (f(x) != target)
          throw std::logic_error(std::string(what) +
                                 ": area is not affine on a span");
        return x;
      }
    } else if (f1 == target) {
      throw validation_error(std::string(what) +
                             ": solution is not isolated on a span");
    }
    a = b;
  }
  throw validation_error(std::string(what) + ": no solution in range");
}

}  // namespace curve_ops_detail

// ---------------------------------------------------------------------------
// Essentialness certificate

enum class Essential { unobstructed, obstructed, inconclusive };

struct EssentialReport {
  Essential verdict = Essential::inconclusive;
  std::string witness;
};

// Semi-decision of unobstructedness. Embedded curves with nonzero period or
// homology class are essential; an embedded null-homologous curve whose
// development is an embedded plane loop is classified by locating the cone
// lifts inside it and computing the Euler characteristic of the cone-free
// complementary side from the winding degree. Immersed curves are probed for
// split loops with closed development (fish tails); otherwise the question
// is left open. depth <= 0 selects the default search depth.
inline EssentialReport is_unobstructed(const FlatSurface& s, const PLCurve& c,
                                       long depth = 0) {
  using namespace curve_ops_detail;
  std::vector<Crossing> selfx = self_crossings(c);
  if (depth <= 0) depth = 4 * (long(selfx.size()) + s.genus());
  if (depth < 4) depth = 4;
  DevelopedCurve d = c.develop(s);

  if (!selfx.empty()) {
    for (const Crossing& x : selfx) {
      Vec split = dev_at(d, c, x.pb, 0) - dev_at(d, c, x.pa, 0);
      Vec other = d.period - split;
      if (split.is_zero() || other.is_zero())
        return {Essential::obstructed,
                "self-crossing at " + pt_str(x.p) +
                    " bounds a split loop with closed development (fish tail)"};
    }
    return {Essential::inconclusive,
            "immersed curve with essential split loops; embeddedness of the "
            "development was not decided"};
  }

  std::vector<Pt> loop(d.dev_a.begin(), d.dev_a.end());
  if (!d.period.is_zero()) {
    // Embedded and homologically visible to the translation lattice.
    size_t n = loop.size();
    for (long k = 1; k <= depth; ++k) {
      Vec shift = d.period * Rat(k);
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
          Seg a{loop[i], loop[(i + 1) % n]};
          Seg b{loop[j] + shift, loop[(j + 1) % n] + shift};
          if (seg_intersect(a, b).kind != SegXKind::none)
            return {Essential::inconclusive,
                    "development meets its own period translate"};
        }
    }
    return {Essential::unobstructed, "embedded curve with nonzero period"};
  }

  std::vector<long> h = c.homology_class(s);
  bool h_zero = std::all_of(h.begin(), h.end(), [](long v) { return v == 0; });
  if (!h_zero)
    return {Essential::unobstructed,
            "embedded curve with nonzero homology class"};

  // Null-homologous and embedded: the development is a closed plane loop.
  size_t n = loop.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      Seg a{loop[i], loop[(i + 1) % n]};
      Seg b{loop[j], loop[(j + 1) % n]};
      SegX x = seg_intersect(a, b);
      if (x.kind == SegXKind::none) continue;
      bool adjacent = (j == i + 1 && x.p == a.b) ||
                      (i == 0 && j == n - 1 && x.p == a.a);
      if (!adjacent)
        return {Essential::inconclusive, "closed development is not embedded"};
    }

  Rat radius(1);
  for (const Pt& p : loop) {
    Rat ax = p.x < 0 ? -p.x : p.x, ay = p.y < 0 ? -p.y : p.y;
    if (ax + 1 > radius) radius = ax + 1;
    if (ay + 1 > radius) radius = ay + 1;
  }
  long cones_inside = 0;
  for (const Pt& q : s.corner_orbit(radius)) {
    bool on_loop = false;
    for (size_t i = 0; i < n && !on_loop; ++i)
      on_loop = point_on_segment(q, {loop[i], loop[(i + 1) % n]}) != OnSeg::off;
    if (on_loop)
      return {Essential::inconclusive,
              "a cone lift lies on the closed development"};
    if (winding_number_at(loop, q) != 0) ++cones_inside;
  }
  if (cones_inside == 0)
    return {Essential::obstructed,
            "null-homotopic: bounds an embedded cone-free flat disc"};

  long cone_classes = 0;
  for (int t : s.class_turns)
    if (t != 4 && t != 2) ++cone_classes;
  if (cone_classes > 1)
    return {Essential::inconclusive,
            "cone points on both sides cannot be excluded"};

  long t = c.turning();
  if (t != 1 && t != -1)
    return {Essential::inconclusive, "embedded development with |turning| != 1"};
  // The developed interior side carries the cone; the Euler characteristic
  // of the other side follows from the winding degree, and of the cone side
  // from additivity.
  bool cone_side_left = (t == 1);
  long wd = c.winding_degree();
  long chi_free = cone_side_left ? wd : -wd;
  long chi_cone = s.euler - chi_free;
  if (chi_free == 1 || chi_cone == 1)
    return {Essential::obstructed, "bounds a disc on one side"};
  return {Essential::unobstructed,
          "essential separating curve: neither complementary side is a disc"};
}

// ---------------------------------------------------------------------------
// Hamiltonian pushoff

// Exact Hamiltonian translate of an embedded curve. The copy is the area-
// rate 2*lambda left offset with one rightward dip per stretch between
// consecutive context crossings (one dip total when the context is empty).
// Both bigons cut by the curve and its copy have area lambda; when context
// crossings are present every crossing triangle has area lambda_prime, which
// forces lambda = 2*lambda_prime. Along the orientation, each stretch meets
// the copy twice: first in degree 0, then in degree 1. Holonomy is
// preserved exactly.
inline PLCurve hamiltonian_pushoff(const FlatSurface& s,
                                   const std::vector<const PLCurve*>& context,
                                   const PLCurve& c, const Rat& lambda,
                                   const Rat& lambda_prime) {
  using namespace curve_ops_detail;
  if (lambda <= 0) throw validation_error("pushoff area must be positive");
  if (!self_crossings(c).empty())
    throw validation_error("pushoff of an immersed curve is not supported");

  struct CtxX {
    Rat pa;
    Pt p;
    Vec w;  // context direction at the crossing
  };
  std::vector<CtxX> xs;
  std::vector<const PLCurve*> live;
  for (const PLCurve* other : context) {
    if (other == nullptr || other->name == c.name) continue;
    std::vector<Crossing> cb = crossings_between(c, *other);
    if (!cb.empty()) live.push_back(other);
    for (const Crossing& x : cb) {
      auto [ain, aout] = strand_dirs(c, x.on_a);
      auto [bin, bout] = strand_dirs(*other, x.on_b);
      if (!(ain == aout) || !(bin == bout))
        throw validation_error(
            "pushoff requires straight strands at context crossings");
      xs.push_back({x.pa, x.p, bout});
    }
  }
  std::sort(xs.begin(), xs.end(),
            [](const CtxX& a, const CtxX& b) { return a.pa < b.pa; });
  for (size_t i = 0; i + 1 < xs.size(); ++i)
    if (xs[i].pa == xs[i + 1].pa)
      throw validation_error("pushoff context has a triple point");
  if (!xs.empty() && lambda != 2 * lambda_prime)
    throw validation_error(
        "crossing triangles tile the bigons: lambda must equal "
        "2*lambda_prime");

  Rat T = 2 * lambda;
  OffsetPlan plan = plan_offsets(c, T);
  DevelopedCurve d = c.develop(s);
  size_t n = c.size();
  Rat np(long(n));

  auto corners_between = [&](const Rat& lo, const Rat& hi,
                             std::vector<Pt>& fwd, std::vector<Pt>& mit) {
    for (long k = floor_long(lo) + 1; Rat(k) < hi; ++k) {
      if (Rat(k) <= lo) continue;
      Rat kp(k);
      Pt dev = dev_ext(d, c, kp);
      size_t jidx = seg_at(c, kp);
      fwd.push_back(dev);
      mit.push_back(dev + miter_offset(c, plan, jidx));
    }
  };
  auto stub_point = [&](const Rat& pa, const Pt& dev_c, const Vec& w) {
    size_t seg = seg_at(c, pa);
    Vec dd = c.seg_dir(seg), o = plan.ov[seg];
    Rat den = det(dd, w);
    if (den == 0) throw std::logic_error("pushoff stub is tangent");
    Rat t = -det(o, w) / den;
    return dev_c + o + dd * t;
  };

  std::vector<Dip> dips;
  if (xs.empty()) {
    Pt base_start;
    std::vector<CurveStep> base =
        offset_cycle_steps(c, plan, {}, base_start);
    Rat S_tot = c.holonomy0(s) - hol0_of_steps(s, base_start, base);
    if (S_tot <= lambda)
      throw validation_error("pushoff: lambda exceeds the offset band area");
    // Longest segment hosts the dip, centered.
    size_t host = 0;
    Rat best(-1);
    for (size_t i = 0; i < n; ++i) {
      Rat l2 = dot(c.seg_dir(i), c.seg_dir(i));
      if (l2 > best) {
        best = l2;
        host = i;
      }
    }
    Rat rate = det(c.seg_dir(host), plan.ov[host]);
    Rat span = (S_tot - lambda) / rate;
    if (span >= 1)
      throw validation_error("pushoff: no segment has room for the dip");
    Rat m((long(host) + long(n) - c.marked) % long(n));
    Rat p_s = m + (1 - span) / 2, p_e = p_s + span;
    Rat Tdip = lambda / span;
    Vec dd = c.seg_dir(host);
    dips.push_back({p_s, p_e, perp_left(dd) * (Tdip / dot(dd, dd))});
  } else {
    size_t k = xs.size();
    for (size_t i = 0; i < k; ++i) {
      const CtxX& cur = xs[i];
      const CtxX& nxt = xs[(i + 1) % k];
      Rat hi = (i + 1 < k) ? nxt.pa : nxt.pa + np;
      Pt dev_cur = dev_ext(d, c, cur.pa);
      Pt dev_nxt = dev_ext(d, c, hi);
      Pt stub_cur = stub_point(cur.pa, dev_cur, cur.w);
      Pt stub_nxt = stub_point(hi, dev_nxt, nxt.w);

      auto after_area = [&](const Rat& sigma) {
        std::vector<Pt> fwd, mit;
        corners_between(cur.pa, sigma, fwd, mit);
        std::vector<Pt> poly;
        poly.push_back(dev_cur);
        for (const Pt& q : fwd) poly.push_back(q);
        Pt S = dev_ext(d, c, sigma);
        size_t seg = seg_at(c, sigma);
        poly.push_back(S);
        poly.push_back(S + plan.ov[seg]);
        for (auto it = mit.rbegin(); it != mit.rend(); ++it)
          poly.push_back(*it);
        poly.push_back(stub_cur);
        return shoelace(poly);
      };
      auto before_area = [&](const Rat& eps) {
        std::vector<Pt> fwd, mit;
        corners_between(eps, hi, fwd, mit);
        std::vector<Pt> poly;
        Pt E = dev_ext(d, c, eps);
        size_t seg = seg_at(c, eps);
        poly.push_back(E);
        for (const Pt& q : fwd) poly.push_back(q);
        poly.push_back(dev_nxt);
        poly.push_back(stub_nxt);
        for (auto it = mit.rbegin(); it != mit.rend(); ++it)
          poly.push_back(*it);
        poly.push_back(E + plan.ov[seg]);
        return shoelace(poly);
      };

      Rat p_s = solve_piecewise_affine(after_area, cur.pa, hi, lambda_prime,
                                       "pushoff dip start");
      Rat p_e = solve_piecewise_affine(before_area, cur.pa, hi, lambda_prime,
                                       "pushoff dip end");
      if (floor_long(p_s) != floor_long(p_e) || p_s >= p_e)
        throw validation_error(
            "pushoff: no straight room between context crossings");
      Rat span = p_e - p_s;
      Rat Tdip = lambda / span;
      size_t seg = seg_at(c, p_s);
      Vec dd = c.seg_dir(seg);
      Rat ws = p_s >= np ? p_s - np : p_s;
      Rat we = p_e >= np ? p_e - np : p_e;
      dips.push_back({ws, we, perp_left(dd) * (Tdip / dot(dd, dd))});
    }
  }

  Pt start;
  std::vector<CurveStep> steps = offset_cycle_steps(c, plan, dips, start);
  PLCurve r = make_curve(s, c.name + "'", start, steps);

  if (r.holonomy0(s) != c.holonomy0(s))
    throw std::logic_error("pushoff does not preserve holonomy");
  std::vector<Crossing> rx = crossings_between(c, r);
  size_t expect = 2 * std::max<size_t>(1, xs.size());
  long deg0 = 0, deg1 = 0;
  for (const Crossing& x : rx) (x.degree == 0 ? deg0 : deg1)++;
  if (rx.size() != expect || deg0 != deg1)
    throw std::logic_error("pushoff has unexpected crossing pattern");
  for (const PLCurve* other : live)
    if (crossings_between(r, *other).size() !=
        crossings_between(c, *other).size())
      throw validation_error(
          "pushoff collides with a context curve; decrease lambda");
  return r;
}

// ---------------------------------------------------------------------------
// Connect-sum resolution of a degree-one crossing

// Oriented smoothing of a degree-one crossing c of a with b: both curves are
// copied on offset lines (a on its right, b on its left) and joined by two
// short cuts near c. The free cut length along a is solved so that holonomy
// is exactly additive; homology is additive by construction. The marked
// point is the image of the marked point of a.
inline PLCurve resolve_connect_sum(const FlatSurface& s, const PLCurve& a,
                                   const PLCurve& b, const Pt& at) {
  using namespace curve_ops_detail;
  std::vector<Crossing> xs = crossings_between(a, b);
  const Crossing* hit = nullptr;
  for (const Crossing& x : xs)
    if (x.p == at) hit = &x;
  if (!hit)
    throw validation_error("resolution point is not a crossing of the curves");
  if (hit->degree != 1)
    throw validation_error("resolution requires a degree-one crossing");
  auto [ain, aout] = strand_dirs(a, hit->on_a);
  auto [bin, bout] = strand_dirs(b, hit->on_b);
  if (!(ain == aout) || !(bin == bout))
    throw validation_error("resolution requires straight strands at the "
                           "crossing");

  size_t na = a.size(), nb = b.size();
  Rat fa = hit->pa - Rat(floor_long(hit->pa));
  Rat fb = hit->pb - Rat(floor_long(hit->pb));
  Rat room = std::min(std::min(fa, 1 - fa), std::min(fb, 1 - fb));
  Rat q = room / 4;

  // Walk the offset copy of `arc` from global parameter p_from forward to
  // p_to (both inside segments), appending interior joint images and the
  // final endpoint.
  auto append_offset_arc = [&](const PLCurve& arc, const OffsetPlan& plan,
                               const Rat& p_from, const Rat& p_to,
                               std::vector<CurveStep>& out) {
    long nn = long(arc.size());
    long m = floor_long(p_from);
    for (int guard = 0;; ++guard) {
      if (guard > 2 * nn + 4)
        throw std::logic_error("offset arc does not terminate");
      long nxt = m + 1;
      Rat pj(nxt);
      bool last = false;
      Rat stop = p_to <= p_from ? p_to + Rat(nn) : p_to;
      if (pj >= stop) {
        last = true;
        pj = stop;
      }
      if (last) {
        size_t seg = seg_at(arc, pj);
        out.push_back({false, point_at(arc, pj) + plan.ov[seg]});
        return;
      }
      size_t jidx = seg_at(arc, pj);
      const Joint& j = arc.joints[jidx];
      if (j.crossing) {
        size_t prev = (jidx + arc.size() - 1) % arc.size();
        out.push_back({false, j.out + plan.ov[prev]});
        out.push_back({true, j.in + plan.ov[jidx]});
      } else {
        out.push_back({false, miter_at(arc, plan, jidx)});
      }
      m = nxt;
    }
  };

  Rat hol_target = a.holonomy0(s) + b.holonomy0(s);
  Rat tau = q / 16;
  for (int attempt = 0; attempt < 48; ++attempt, tau /= 2) {
    OffsetPlan plan_a = plan_offsets(a, -tau);  // right of a
    OffsetPlan plan_b = plan_offsets(b, tau);   // left of b
    auto build = [&](const Rat& d3, Pt& start_out) {
      std::vector<CurveStep> steps;
      Rat pa = hit->pa, pb = hit->pb;
      size_t seg_a = seg_at(a, pa), seg_b = seg_at(b, pb);
      start_out = point_at(a, pa + d3) + plan_a.ov[seg_a];
      append_offset_arc(a, plan_a, pa + d3, pa - q, steps);
      steps.push_back({false, point_at(b, pb + q) + plan_b.ov[seg_b]});
      append_offset_arc(b, plan_b, pb + q, pb - q, steps);
      steps.push_back({false, start_out});
      return steps;
    };
    Rat d1 = q / 2, d2 = q;
    Pt s1, s2;
    Rat h1 = hol0_of_steps(s, s1, [&] {
      auto st = build(d1, s1);
      return st;
    }());
    Rat h2 = hol0_of_steps(s, s2, [&] {
      auto st = build(d2, s2);
      return st;
    }());
    if (h1 == h2) continue;
    Rat d3 = d1 + (hol_target - h1) * (d2 - d1) / (h2 - h1);
    if (d3 <= 0 || d3 >= 1 - fa) continue;
    Pt start;
    std::vector<CurveStep> steps = build(d3, start);
    if (hol0_of_steps(s, start, steps) != hol_target)
      throw std::logic_error("resolution holonomy is not affine in the cut");
    PLCurve r;
    try {
      r = make_curve(s, a.name + "#" + b.name, start, steps);
    } catch (const validation_error&) {
      continue;  // offsets too wide for this geometry; retry smaller
    }
    std::vector<Crossing> ra = crossings_between(r, a);
    std::vector<Crossing> rb = crossings_between(r, b);
    if (ra.size() != 1 || rb.size() != 1 || ra[0].degree != 0 ||
        rb[0].degree != 0)
      continue;
    std::vector<long> hsum = a.homology_class(s);
    std::vector<long> hb = b.homology_class(s), hr = r.homology_class(s);
    for (size_t i = 0; i < hsum.size(); ++i) hsum[i] += hb[i];
    if (hr != hsum)
      throw std::logic_error("resolution does not add homology classes");
    // Move the marked point to the image of a's marked joint.
    const Joint& am = a.joints[size_t(a.marked)];
    Pt image = am.crossing ? am.in + plan_a.ov[size_t(a.marked)]
                           : miter_at(a, plan_a, size_t(a.marked));
    for (size_t i = 0; i < r.size(); ++i)
      if (r.joints[i].in == image) {
        r.marked = int(i);
        break;
      }
    return r;
  }
  throw validation_error("resolution cuts do not fit at this crossing");
}

// ---------------------------------------------------------------------------
// Dehn twist along a straight circle

// Twist `curve` along the embedded straight circle `along`, supported on a
// collar of the given width on the left of `along`. Inside the collar every
// strand is sheared by the period of `along`, interpolating linearly from
// the outer wall to the circle itself; the sheared strand is folded back
// into the chart. Axis-parallel circles only: their collars have exact
// rational walls.
inline PLCurve dehn_twist(const FlatSurface& s, const PLCurve& curve,
                          const PLCurve& along, const Rat& width) {
  using namespace curve_ops_detail;
  if (width <= 0) throw validation_error("twist collar width must be positive");
  if (!self_crossings(along).empty())
    throw validation_error("twist circle must be embedded");
  Vec d0 = along.seg_dir(0);
  for (size_t i = 0; i < along.size(); ++i) {
    Vec di = along.seg_dir(i);
    if (det(d0, di) != 0 || dot(d0, di) <= 0)
      throw validation_error("twist circle must be straight");
  }
  if (d0.x != 0 && d0.y != 0)
    throw validation_error("twist circle must be axis-parallel");
  DevelopedCurve dal = along.develop(s);
  if (dal.period.is_zero())
    throw std::logic_error("straight closed circle has zero period");
  Vec axis = d0.x == 0 ? Vec{Rat(0), d0.y > 0 ? Rat(1) : Rat(-1)}
                       : Vec{d0.x > 0 ? Rat(1) : Rat(-1), Rat(0)};
  Vec nrm = perp_left(axis);  // unit; perpendicular coordinate is exact
  auto perp = [&](const Pt& p) { return dot(Vec{p.x, p.y}, nrm); };
  Rat a_perp = perp(along.joints[size_t(along.marked)].in);
  for (const Joint& j : along.joints)
    if (perp(j.in) != a_perp || perp(j.out) != a_perp)
      throw std::logic_error("twist circle is not a perpendicular level set");
  Rat wall = a_perp + width;

  for (const Pt& v : s.verts) {
    Rat pv = perp(v);
    if (pv >= a_perp && pv <= wall)
      throw validation_error(
          "twist collar touches a chart corner; decrease the width");
  }
  for (const Joint& j : along.joints) {
    if (!j.crossing) continue;
    Pt wout = j.out + nrm * width;
    if (point_on_segment(wout, s.edge(j.edge)) != OnSeg::interior)
      throw validation_error("twist collar leaves its chart column");
  }

  std::vector<Crossing> xs = crossings_between(curve, along);
  for (const Joint& j : curve.joints) {
    Rat pj = perp(j.in);
    if (pj > a_perp && pj < wall)
      throw validation_error("curve has a joint inside the twist collar");
    if (pj == a_perp || pj == wall)
      throw validation_error("curve has a joint on the twist collar boundary");
  }
  if (xs.empty()) {
    bool touches = false;
    for (size_t i = 0; i < curve.size() && !touches; ++i) {
      Seg g = curve.segment(i);
      Rat p1 = perp(g.a), p2 = perp(g.b);
      Rat lo = std::min(p1, p2), hi = std::max(p1, p2);
      touches = lo < wall && hi > a_perp;
    }
    if (!touches) return curve;
    throw std::logic_error("collar incursion without a circle crossing");
  }

  // Entry/exit events per chart segment of the curve.
  struct Event {
    Rat t1, t2;  // segment fractions: entry, exit
  };
  std::vector<std::optional<Event>> events(curve.size());
  for (const Crossing& x : xs) {
    auto [cin, cout] = strand_dirs(curve, x.on_a);
    if (!(cin == cout))
      throw validation_error("twist strand has a corner on the circle");
    size_t seg = x.on_a.seg;
    Seg g = curve.segment(seg);
    Rat p1 = perp(g.a), p2 = perp(g.b);
    if (p1 == p2) throw std::logic_error("tangent strand reported as crossing");
    Rat tw = (wall - p1) / (p2 - p1);
    if (tw <= 0 || tw >= 1)
      throw validation_error(
          "twist strand does not cross the whole collar in one segment");
    if (events[seg])
      throw std::logic_error("two circle crossings on one straight segment");
    Rat tx = x.on_a.t;
    events[seg] = Event{std::min(tx, tw), std::max(tx, tw)};
  }

  Vec P = dal.period;
  auto phi = [&](const Pt& p) { return p + P * ((wall - perp(p)) / width); };

  size_t n = curve.size();
  const Joint& mj = curve.joints[size_t(curve.marked)];
  if (mj.crossing)
    throw validation_error("marked point of the curve sits on a chart edge "
                           "inside the twist; move it first");
  Pt start = mj.in;
  std::vector<CurveStep> steps;
  for (size_t m = 0; m < n; ++m) {
    size_t seg = (size_t(curve.marked) + m) % n;
    Seg g = curve.segment(seg);
    if (events[seg]) {
      Vec dd = g.dir();
      Pt e1 = g.a + dd * events[seg]->t1;
      Pt e2 = g.a + dd * events[seg]->t2;
      steps.push_back({false, e1});
      Pt endpt = append_folded(s, e1, phi(e1), phi(e2), steps);
      if (endpt != e2)
        throw std::logic_error("folded strand does not rejoin the curve");
    }
    size_t nxt = (seg + 1) % n;
    const Joint& j = curve.joints[nxt];
    if (j.crossing) {
      steps.push_back({false, j.out});
      steps.push_back({true, j.in});
    } else {
      steps.push_back({false, j.in});
    }
  }
  return make_curve(s, "tw_" + along.name + "(" + curve.name + ")", start,
                    steps);
}

}  // namespace flatfloer
