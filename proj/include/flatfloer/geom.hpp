#pragma once

// Exact planar primitives: points, segment intersection with full incidence
// classification, signed areas, and a rational pseudo-angle that makes
// turning numbers computable without trigonometry.

#include "flatfloer/rational.hpp"

#include <compare>
#include <optional>
#include <vector>

namespace flatfloer {

struct Vec {
  Rat x, y;
  Vec() : x(0), y(0) {}
  Vec(Rat x_, Rat y_) : x(std::move(x_)), y(std::move(y_)) {}
  Vec operator+(const Vec& o) const { return {x + o.x, y + o.y}; }
  Vec operator-(const Vec& o) const { return {x - o.x, y - o.y}; }
  Vec operator-() const { return {-x, -y}; }
  Vec operator*(const Rat& s) const { return {x * s, y * s}; }
  bool operator==(const Vec& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Vec& o) const { return !(*this == o); }
  bool is_zero() const { return x == 0 && y == 0; }
};

using Pt = Vec;

inline Rat det(const Vec& a, const Vec& b) { return a.x * b.y - a.y * b.x; }
inline Rat dot(const Vec& a, const Vec& b) { return a.x * b.x + a.y * b.y; }

// Total order for deterministic sorting and map keys.
inline bool pt_less(const Pt& a, const Pt& b) {
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

struct PtLess {
  bool operator()(const Pt& a, const Pt& b) const { return pt_less(a, b); }
};

inline std::string pt_str(const Pt& p) {
  return "(" + rat_str(p.x) + ", " + rat_str(p.y) + ")";
}

struct Seg {
  Pt a, b;
  Vec dir() const { return b - a; }
};

// Position of point p relative to segment s.
enum class OnSeg { off, at_a, at_b, interior };

inline OnSeg point_on_segment(const Pt& p, const Seg& s) {
  if (p == s.a) return OnSeg::at_a;
  if (p == s.b) return OnSeg::at_b;
  if (det(s.dir(), p - s.a) != 0) return OnSeg::off;
  Rat t = dot(p - s.a, s.dir());
  if (t <= 0 || t >= dot(s.dir(), s.dir())) return OnSeg::off;
  return OnSeg::interior;
}

enum class SegXKind {
  none,         // disjoint
  transversal,  // one point, interior to both
  endpoint,     // one point, endpoint of at least one segment
  overlap       // collinear with a common sub-segment
};

struct SegX {
  SegXKind kind = SegXKind::none;
  Pt p;         // meeting point for transversal/endpoint
  Rat t1, t2;   // parameters on each segment, in [0,1], for point meetings
};

inline SegX seg_intersect(const Seg& s1, const Seg& s2) {
  Vec d1 = s1.dir(), d2 = s2.dir();
  Rat denom = det(d1, d2);
  if (denom == 0) {
    if (det(d1, s2.a - s1.a) != 0) return {};
    // Collinear: project onto d1 and compare parameter intervals.
    Rat len = dot(d1, d1);
    Rat ta = dot(s2.a - s1.a, d1), tb = dot(s2.b - s1.a, d1);
    Rat lo = ta < tb ? ta : tb, hi = ta < tb ? tb : ta;
    if (hi < 0 || lo > len) return {};
    if (hi == 0) return {SegXKind::endpoint, s1.a, Rat(0), hi == ta ? Rat(0) : Rat(1)};
    if (lo == len) return {SegXKind::endpoint, s1.b, Rat(1), lo == ta ? Rat(0) : Rat(1)};
    SegX r;
    r.kind = SegXKind::overlap;
    return r;
  }
  Rat t1 = det(s2.a - s1.a, d2) / denom;
  Rat t2 = det(s2.a - s1.a, d1) / denom;
  if (t1 < 0 || t1 > 1 || t2 < 0 || t2 > 1) return {};
  SegX r;
  r.p = s1.a + d1 * t1;
  r.t1 = t1;
  r.t2 = t2;
  bool end = (t1 == 0 || t1 == 1 || t2 == 0 || t2 == 1);
  r.kind = end ? SegXKind::endpoint : SegXKind::transversal;
  return r;
}

// Signed area integral over a closed vertex loop, positive when
// counterclockwise; computed as the exact integral of x dy.
inline Rat shoelace(const std::vector<Pt>& loop) {
  Rat a = 0;
  size_t n = loop.size();
  for (size_t i = 0; i < n; ++i) {
    const Pt& p = loop[i];
    const Pt& q = loop[(i + 1) % n];
    a += (p.x + q.x) * (q.y - p.y);
  }
  return a / 2;
}

// Exact integral of x dy along one segment.
inline Rat xdy(const Pt& a, const Pt& b) {
  return (a.x + b.x) * (b.y - a.y) / 2;
}

// Rational pseudo-angle in [0,4): strictly monotone in true angle, with
// pseudo-angle(-v) = pseudo-angle(v) + 2 (mod 4). Quadrant k contributes k,
// the fraction y/(x+y) is monotone within a quadrant.
inline Rat pseudo_angle(Vec v) {
  if (v.is_zero()) throw std::invalid_argument("pseudo_angle of zero vector");
  int quad = 0;
  while (!(v.x > 0 && v.y >= 0)) {
    v = Vec{v.y, -v.x};  // rotate by -90 degrees
    if (++quad > 3) throw std::logic_error("pseudo_angle rotation failed");
  }
  return Rat(quad) + v.y / (v.x + v.y);
}

// Exterior turn at a joint, in quarter-turn-like units in (-2,2):
// positive for a left turn. Antiparallel directions are rejected.
inline Rat pseudo_turn(const Vec& din, const Vec& dout) {
  if (det(din, dout) == 0 && dot(din, dout) < 0)
    throw std::invalid_argument("pseudo_turn of antiparallel directions");
  Rat d = pseudo_angle(dout) - pseudo_angle(din);
  if (d >= 2) d -= 4;
  if (d < -2) d += 4;
  return d;
}

// Turning number of a closed direction cycle (directions of consecutive
// segments; consecutive entries never antiparallel). Exact integer.
inline long turning_number(const std::vector<Vec>& dirs) {
  Rat total = 0;
  size_t n = dirs.size();
  for (size_t i = 0; i < n; ++i) total += pseudo_turn(dirs[i], dirs[(i + 1) % n]);
  Rat quarter = total / 4;
  if (denominator(quarter) != 1)
    throw std::logic_error("turning number is not an integer");
  return static_cast<long>(numerator(quarter));
}

// Winding number of a closed polyline around a point not on it, by casting a
// ray from p through a direction chosen to avoid all vertices.
inline long winding_number_at(const std::vector<Pt>& loop, const Pt& p) {
  size_t n = loop.size();
  for (size_t i = 0; i < n; ++i)
    if (point_on_segment(p, {loop[i], loop[(i + 1) % n]}) != OnSeg::off)
      throw std::invalid_argument("winding_number_at: point lies on the loop");
  // Direction (1, m): pick m avoiding the slope from p to any vertex.
  Rat m(0);
  bool ok = false;
  for (long k = 0; !ok && k < 1000; ++k) {
    m = Rat(2 * k + 1, 2 * (k + 1));
    ok = true;
    for (const Pt& v : loop) {
      Vec d = v - p;
      if (d.is_zero() || det(Vec{Rat(1), m}, d) == 0) { ok = false; break; }
    }
  }
  if (!ok) throw std::logic_error("winding_number_at: no generic ray found");
  Vec ray{Rat(1), m};
  long w = 0;
  for (size_t i = 0; i < n; ++i) {
    Vec a = loop[i] - p, b = loop[(i + 1) % n] - p;
    Rat ca = det(ray, a), cb = det(ray, b);
    if (ca == 0 || cb == 0) throw std::logic_error("ray hits vertex");
    if ((ca < 0) == (cb < 0)) continue;  // both endpoints on one side
    // The segment meets the ray line at s*ray with s = det(a,b)/(cb-ca);
    // it crosses the actual ray iff s > 0.
    Rat dab = det(a, b);
    if (dab == 0) throw std::logic_error("ray origin on segment");
    if ((dab > 0) == (cb > ca)) w += (cb > ca) ? 1 : -1;
  }
  return w;
}

}  // namespace flatfloer
