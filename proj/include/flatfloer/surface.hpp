#pragma once

// Flat surfaces presented by a single rectilinear polygon chart with
// translation edge-pairings. Supported topologies: closed surfaces whose
// corners form one vertex class, and flat annuli (exactly two unpaired
// parallel edges). All derived data (vertex class, cone angle, genus, Euler
// characteristic, area, holonomy normalization) is exact.

#include "flatfloer/geom.hpp"

#include <functional>
#include <numeric>
#include <string>
#include <vector>

namespace flatfloer {

struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Pairing {
  int e1 = -1, e2 = -1;
  Vec t;  // edge e1 translated by t equals edge e2 reversed
};

// Rank <= 2 subgroup of the rational plane, as a Hermite-style basis.
struct RatLattice {
  std::vector<Vec> basis;  // 0, 1, or 2 independent generators

  static RatLattice span(const std::vector<Vec>& gens) {
    // Scale to a common denominator, run integer Hermite reduction.
    Int lcm = 1;
    for (const Vec& g : gens) {
      lcm = boost::multiprecision::lcm(lcm, denominator(g.x));
      lcm = boost::multiprecision::lcm(lcm, denominator(g.y));
    }
    std::vector<std::pair<Int, Int>> rows;
    for (const Vec& g : gens) {
      Int gx = numerator(Rat(g.x * lcm)), gy = numerator(Rat(g.y * lcm));
      if (gx != 0 || gy != 0) rows.emplace_back(gx, gy);
    }
    // Reduce to at most two rows: first make all but one row have gx == 0
    // via gcd steps on the x column, then gcd the y column.
    std::pair<Int, Int> rx{0, 0};  // row with nonzero x (pivot)
    Int gy = 0;                    // gcd of y parts of x-free rows
    for (auto row : rows) {
      while (row.first != 0) {
        if (rx.first == 0) { std::swap(rx, row); break; }
        // Euclid on the x coefficients.
        Int q = row.first / rx.first;
        row.first -= q * rx.first;
        row.second -= q * rx.second;
        if (row.first != 0) std::swap(rx, row);
      }
      if (row.second != 0) gy = boost::multiprecision::gcd(gy, abs(row.second));
    }
    if (rx.first != 0 && gy != 0) {
      // Normalize the pivot's y part into [0, gy).
      Int q = rx.second / gy;
      rx.second -= q * gy;
      if (rx.second < 0) rx.second += gy;
    }
    RatLattice l;
    Rat d(1, 1);
    d /= Rat(lcm);
    if (rx.first != 0)
      l.basis.push_back(Vec{Rat(rx.first) * d, Rat(rx.second) * d});
    if (gy != 0) l.basis.push_back(Vec{Rat(0), Rat(gy) * d});
    return l;
  }

  static long ceil_long(const Rat& r) {
    Int q = numerator(r) / denominator(r);
    if (Rat(q) < r) q += 1;
    return static_cast<long>(q);
  }

  // All points offset + lattice within the box |x| <= r, |y| <= r.
  std::vector<Pt> points_in_box(const Pt& offset, const Rat& r) const {
    std::vector<Pt> out;
    if (basis.empty()) {
      if (abs(offset.x) <= r && abs(offset.y) <= r) out.push_back(offset);
      return out;
    }
    if (basis.size() == 1) {
      const Vec& u = basis[0];
      // Bound |k| via whichever component of u is nonzero.
      Rat uc = u.x != 0 ? abs(u.x) : abs(u.y);
      Rat oc = u.x != 0 ? abs(offset.x) : abs(offset.y);
      long kb = ceil_long((r + oc) / uc) + 1;
      for (long k = -kb; k <= kb; ++k) {
        Pt p = offset + u * Rat(k);
        if (abs(p.x) <= r && abs(p.y) <= r) out.push_back(p);
      }
      return out;
    }
    // basis[0] = (a, b) with a != 0, basis[1] = (0, c).
    const Vec& u = basis[0];
    const Vec& v = basis[1];
    long kb = ceil_long((r + abs(offset.x)) / abs(u.x)) + 1;
    for (long k = -kb; k <= kb; ++k) {
      Pt base = offset + u * Rat(k);
      if (abs(base.x) > r) continue;
      long mb = ceil_long((r + abs(base.y)) / abs(v.y)) + 1;
      for (long m = -mb; m <= mb; ++m) {
        Pt p = base + v * Rat(m);
        if (abs(p.x) <= r && abs(p.y) <= r) out.push_back(p);
      }
    }
    return out;
  }

  bool contains(const Vec& w) const {
    if (w.is_zero()) return true;
    if (basis.empty()) return false;
    if (basis.size() == 1) {
      const Vec& u = basis[0];
      if (det(u, w) != 0) return false;
      Rat k = dot(w, u) / dot(u, u);
      return denominator(k) == 1;
    }
    // Solve w = k*basis[0] + m*basis[1], basis[1].x == 0.
    Rat k = w.x / basis[0].x;
    if (denominator(k) != 1) return false;
    Rat m = (w.y - k * basis[0].y) / basis[1].y;
    return denominator(m) == 1;
  }
};

class FlatSurface {
 public:
  std::vector<Pt> verts;          // ccw simple rectilinear polygon
  std::vector<Pairing> pairings;  // each edge in at most one pairing

  // Derived.
  std::vector<int> partner;       // per edge: paired edge or -1
  std::vector<Vec> trans;         // per edge: continuation offset, zero if unpaired
  std::vector<int> vclass;        // per vertex: class id
  std::vector<int> class_turns;   // per class: total interior quarter turns
  int cone_class = -1;            // closed: the unique class; its branching k
  long branching = 1;
  long euler = 0;
  long genus_ = 0;
  bool closed_ = true;
  Rat area_;
  Rat kappa_;                     // holonomy normalization -area/chi, 0 if chi == 0
  RatLattice lattice;             // group generated by pairing translations

  size_t n_edges() const { return verts.size(); }
  Seg edge(size_t i) const { return {verts[i], verts[(i + 1) % verts.size()]}; }
  bool paired(size_t i) const { return partner[i] >= 0; }
  bool closed() const { return closed_; }
  long genus() const { return genus_; }
  const Rat& area() const { return area_; }
  const Rat& kappa() const { return kappa_; }

  static FlatSurface torus(const Rat& w, const Rat& h) {
    FlatSurface s;
    s.verts = {{Rat(0), Rat(0)}, {w, Rat(0)}, {w, h}, {Rat(0), h}};
    s.pairings.push_back({0, 2, Vec{Rat(0), h}});
    s.pairings.push_back({3, 1, Vec{w, Rat(0)}});
    s.finalize();
    return s;
  }

  static FlatSurface annulus(const Rat& w, const Rat& h) {
    // Square chart, vertical sides glued; top and bottom are boundary.
    FlatSurface s;
    s.verts = {{Rat(0), Rat(0)}, {w, Rat(0)}, {w, h}, {Rat(0), h}};
    s.pairings.push_back({3, 1, Vec{w, Rat(0)}});
    s.finalize();
    return s;
  }

  static FlatSurface rectilinear(std::vector<Pt> vs, std::vector<Pairing> ps) {
    FlatSurface s;
    s.verts = std::move(vs);
    s.pairings = std::move(ps);
    s.finalize();
    return s;
  }

  // Genus-2 fixture: L-shaped chart of area 3 with one cone point of
  // angle 6 pi. Pairings: each boundary edge glues to its translate.
  static FlatSurface genus2_L() {
    std::vector<Pt> vs = {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(2), Rat(0)},
                          {Rat(2), Rat(1)}, {Rat(1), Rat(1)}, {Rat(1), Rat(2)},
                          {Rat(0), Rat(2)}, {Rat(0), Rat(1)}};
    // Edges: 0 b1, 1 b2, 2 r1, 3 t1, 4 r2, 5 t2, 6 l1, 7 l2.
    std::vector<Pairing> ps;
    ps.push_back({0, 5, Vec{Rat(0), Rat(2)}});   // b1 -> t2
    ps.push_back({1, 3, Vec{Rat(0), Rat(1)}});   // b2 -> t1
    ps.push_back({2, 7, Vec{Rat(-2), Rat(0)}});  // r1 -> l2
    ps.push_back({4, 6, Vec{Rat(-1), Rat(0)}});  // r2 -> l1
    return rectilinear(vs, ps);
  }

  void finalize() {
    size_t n = verts.size();
    if (n < 4) throw validation_error("polygon needs at least 4 vertices");
    for (size_t i = 0; i < n; ++i) {
      Vec d = edge(i).dir();
      if ((d.x == 0) == (d.y == 0))
        throw validation_error("edge " + std::to_string(i) +
                               " is not axis-parallel or is degenerate");
    }
    if (shoelace(verts) <= 0)
      throw validation_error("polygon must be counterclockwise");
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) {
        SegX x = seg_intersect(edge(i), edge(j));
        bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
        if (x.kind == SegXKind::none) continue;
        if (adjacent && x.kind == SegXKind::endpoint) continue;
        throw validation_error("polygon is not simple (edges " +
                               std::to_string(i) + "," + std::to_string(j) + ")");
      }

    partner.assign(n, -1);
    trans.assign(n, Vec{});
    for (const Pairing& p : pairings) {
      if (p.e1 < 0 || p.e2 < 0 || p.e1 >= int(n) || p.e2 >= int(n) || p.e1 == p.e2)
        throw validation_error("pairing has bad edge indices");
      if (partner[p.e1] != -1 || partner[p.e2] != -1)
        throw validation_error("edge appears in more than one pairing");
      Seg a = edge(p.e1), b = edge(p.e2);
      if (a.a + p.t != b.b || a.b + p.t != b.a)
        throw validation_error("pairing translation does not match edges " +
                               std::to_string(p.e1) + "," + std::to_string(p.e2));
      partner[p.e1] = p.e2;
      partner[p.e2] = p.e1;
      trans[p.e1] = p.t;
      trans[p.e2] = -p.t;
    }
    std::vector<int> unpaired;
    for (size_t i = 0; i < n; ++i)
      if (partner[i] < 0) unpaired.push_back(int(i));
    if (unpaired.size() == 0) closed_ = true;
    else if (unpaired.size() == 2) {
      closed_ = false;
      Vec d1 = edge(unpaired[0]).dir(), d2 = edge(unpaired[1]).dir();
      if ((d1.x == 0) != (d2.x == 0))
        throw validation_error("boundary edges must be parallel");
    } else {
      throw validation_error("surface must be closed or have exactly two boundary edges");
    }

    // Vertex classes from pairing endpoint identifications.
    std::vector<int> uf(n);
    std::iota(uf.begin(), uf.end(), 0);
    std::function<int(int)> find = [&](int a) {
      while (uf[a] != a) a = uf[a] = uf[uf[a]];
      return a;
    };
    for (const Pairing& p : pairings) {
      uf[find(p.e1)] = find((p.e2 + 1) % n);
      uf[find((p.e1 + 1) % n)] = find(p.e2);
    }
    vclass.assign(n, -1);
    class_turns.clear();
    for (size_t i = 0; i < n; ++i) {
      int r = find(int(i));
      if (vclass[r] < 0) {
        vclass[r] = int(class_turns.size());
        class_turns.push_back(0);
      }
      vclass[i] = vclass[r];
    }
    for (size_t i = 0; i < n; ++i) {
      Vec din = edge((i + n - 1) % n).dir(), dout = edge(i).dir();
      Rat c = det(din, dout);
      int qt = c > 0 ? 1 : (c == 0 ? 2 : 3);  // interior angle in quarter turns
      class_turns[vclass[i]] += qt;
    }

    long V = long(class_turns.size());
    long E, F = 1;
    if (closed_) {
      E = long(n) / 2;
      if (V != 1)
        throw validation_error("closed surface must have a single vertex class");
      if (class_turns[0] % 4 != 0)
        throw validation_error("cone angle is not a multiple of 2 pi");
      cone_class = 0;
      branching = class_turns[0] / 4;
    } else {
      E = long(pairings.size()) + 2;
      // Interior classes must close up to full angle; boundary classes to pi.
      std::vector<bool> on_boundary(class_turns.size(), false);
      for (int e : unpaired) {
        on_boundary[vclass[e]] = true;
        on_boundary[vclass[(e + 1) % n]] = true;
      }
      for (size_t c = 0; c < class_turns.size(); ++c) {
        if (on_boundary[c] && class_turns[c] != 2)
          throw validation_error("boundary vertex class is not smooth");
        if (!on_boundary[c] && class_turns[c] % 4 != 0)
          throw validation_error("interior cone angle is not a multiple of 2 pi");
      }
      branching = 1;
    }
    euler = V - E + F;
    if (closed_) {
      if ((2 - euler) % 2 != 0) throw validation_error("odd Euler characteristic");
      genus_ = (2 - euler) / 2;
      if (branching != 2 * genus_ - 1)
        throw validation_error("cone angle inconsistent with genus");
    } else {
      if (euler != 0) throw validation_error("surface with boundary must be an annulus");
      genus_ = 0;
    }

    area_ = shoelace(verts);
    kappa_ = euler != 0 ? -area_ / Rat(euler) : Rat(0);

    std::vector<Vec> gens;
    for (const Pairing& p : pairings) gens.push_back(p.t);
    lattice = RatLattice::span(gens);
  }

  // Locate p relative to the chart polygon.
  int corner_at(const Pt& p) const {
    for (size_t i = 0; i < verts.size(); ++i)
      if (verts[i] == p) return int(i);
    return -1;
  }

  int edge_interior_at(const Pt& p) const {
    for (size_t i = 0; i < verts.size(); ++i)
      if (point_on_segment(p, edge(i)) == OnSeg::interior) return int(i);
    return -1;
  }

  bool strictly_inside(const Pt& p) const {
    if (corner_at(p) >= 0 || edge_interior_at(p) >= 0) return false;
    return winding_number_at(verts, p) == 1;
  }

  // Continuation of a point exiting through edge e.
  Pt continue_across(int e, const Pt& p) const {
    if (!paired(e)) throw validation_error("continuation across boundary edge");
    return p + trans[e];
  }

  // Developed positions of cone points: the orbit of the chart corners under
  // the translation group, within box radius r. On the L fixture this orbit
  // is exactly the set of branch values of the developing map; in general it
  // contains them, so tests against it are conservative.
  std::vector<Pt> corner_orbit(const Rat& r) const {
    std::vector<Pt> out;
    for (const Pt& v : verts) {
      auto pts = lattice.points_in_box(v, r);
      for (const Pt& p : pts) out.push_back(p);
    }
    std::sort(out.begin(), out.end(), PtLess{});
    out.erase(std::unique(out.begin(), out.end(),
                          [](const Pt& a, const Pt& b) { return a == b; }),
              out.end());
    return out;
  }
};

}  // namespace flatfloer
