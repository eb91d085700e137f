#pragma once

// Named example configurations used by tests and the command line tool.
// All coordinates are exact dyadic rationals chosen so that arrangements are
// transversal: no triple points, no tangencies, and every crossing that sits
// at a PL corner of a curve changes sides strictly.

#include "flatfloer/curve.hpp"
#include "flatfloer/novikov.hpp"

#include <map>

namespace flatfloer {

struct Fixture {
  std::string name;
  FlatSurface surface;
  std::vector<PLCurve> curves;
  Cutoff cutoff;

  const PLCurve& curve(const std::string& n) const {
    for (const PLCurve& c : curves)
      if (c.name == n) return c;
    throw validation_error("fixture has no curve named '" + n + "'");
  }
};

namespace fixture_detail {

inline CurveStep L(const Rat& x, const Rat& y) { return {false, Pt{x, y}}; }
inline CurveStep X(const Rat& x, const Rat& y) { return {true, Pt{x, y}}; }

// Vertical circle {x = c} on the unit torus, oriented upward.
inline PLCurve vert(const FlatSurface& s, const std::string& name, const Rat& c) {
  return make_curve(s, name, Pt{c, Rat(0)}, {L(c, 1), X(c, 0)});
}

// Horizontal circle {y = c} on the unit torus, oriented rightward.
inline PLCurve horiz(const FlatSurface& s, const std::string& name, const Rat& c) {
  return make_curve(s, name, Pt{Rat(0), c}, {L(1, c), X(0, c)});
}

// The embedded separating loop on the L surface: a rectangle around the
// lower-left cross of cylinders, corners (5/16,3/16), (3/16,3/16),
// (3/16,9/16), (5/16,9/16), traversed with the one-holed torus on its left.
// Each side wraps once around its cylinder.
inline PLCurve separating_loop(const FlatSurface& s) {
  return make_curve(
      s, "sigma", Pt{Rat(5, 16), Rat(9, 16)},
      {L(Rat(5, 16), Rat(2)), X(Rat(5, 16), Rat(0)), L(Rat(5, 16), Rat(3, 16)),
       L(Rat(2), Rat(3, 16)), X(Rat(0), Rat(3, 16)), L(Rat(3, 16), Rat(3, 16)),
       L(Rat(3, 16), Rat(0)), X(Rat(3, 16), Rat(2)), L(Rat(3, 16), Rat(9, 16)),
       L(Rat(0), Rat(9, 16)), X(Rat(2), Rat(9, 16)), L(Rat(5, 16), Rat(9, 16))});
}

}  // namespace fixture_detail

// Unit torus with V = {x=1/4}, H = {y=1/8}, a Hamiltonian translate V' of V
// crossing it at (1/4,1/4) and (1/4,3/4) with two bigons of equal area 1/32,
// a second translate V3 of V, and a slope-one circle Dg. Every pair crosses
// transversally away from the crossings of every other pair.
inline Fixture fixture_torus_vh() {
  using namespace fixture_detail;
  Fixture f;
  f.name = "torus-vh";
  f.surface = FlatSurface::torus(1, 1);
  f.cutoff = Rat(1);
  f.curves.push_back(vert(f.surface, "V", Rat(1, 4)));
  f.curves.push_back(horiz(f.surface, "H", Rat(1, 8)));
  f.curves.push_back(make_curve(f.surface, "Vp", Pt{Rat(1, 8), Rat(0)},
                                {L(Rat(3, 8), Rat(1, 2)), L(Rat(1, 8), Rat(1)),
                                 X(Rat(1, 8), Rat(0))}));
  f.curves.push_back(make_curve(
      f.surface, "V3", Pt{Rat(11, 32), Rat(0)},
      {L(Rat(1, 8), Rat(7, 16)), L(Rat(3, 8), Rat(15, 16)),
       L(Rat(11, 32), Rat(1)), X(Rat(11, 32), Rat(0))}));
  f.curves.push_back(make_curve(f.surface, "Dg", Pt{Rat(0), Rat(5, 8)},
                                {L(Rat(3, 8), Rat(1)), X(Rat(3, 8), Rat(0)),
                                 L(Rat(1), Rat(5, 8)), X(Rat(0), Rat(5, 8))}));
  return f;
}

// V together with a non-Hamiltonian pushoff V2 crossing it at the corners
// (1/4,11/32) and (1/4,5/8): the two bigons have areas 9/512 and 23/512, so
// the pair is displaceable and its Floer homology vanishes.
inline Fixture fixture_torus_pushoff_unequal() {
  using namespace fixture_detail;
  Fixture f;
  f.name = "torus-pushoff-unequal";
  f.surface = FlatSurface::torus(1, 1);
  f.cutoff = Rat(1);
  f.curves.push_back(vert(f.surface, "V", Rat(1, 4)));
  f.curves.push_back(make_curve(
      f.surface, "V2", Pt{Rat(3, 16), Rat(0)},
      {L(Rat(1, 8), Rat(3, 8)), L(Rat(1, 4), Rat(11, 32)),
       L(Rat(3, 8), Rat(31, 64)), L(Rat(1, 4), Rat(5, 8)),
       L(Rat(3, 16), Rat(1)), X(Rat(3, 16), Rat(0))}));
  return f;
}

// V and its Hamiltonian translate Vp alone: both bigons have area 1/32.
inline Fixture fixture_torus_pushoff_equal() {
  using namespace fixture_detail;
  Fixture f;
  f.name = "torus-pushoff-equal";
  f.surface = FlatSurface::torus(1, 1);
  f.cutoff = Rat(1);
  f.curves.push_back(vert(f.surface, "V", Rat(1, 4)));
  f.curves.push_back(make_curve(f.surface, "Vp", Pt{Rat(1, 8), Rat(0)},
                                {L(Rat(3, 8), Rat(1, 2)), L(Rat(1, 8), Rat(1)),
                                 X(Rat(1, 8), Rat(0))}));
  return f;
}

// Downward V against H: their crossing is a degree-one morphism V -> H, so
// the connect-sum resolution at it is defined. B1 and B2 are test circles
// transversal to V, H and the resolved curve.
inline Fixture fixture_torus_resolve() {
  using namespace fixture_detail;
  Fixture f;
  f.name = "torus-resolve";
  f.surface = FlatSurface::torus(1, 1);
  f.cutoff = Rat(1);
  f.curves.push_back(make_curve(f.surface, "V", Pt{Rat(1, 4), Rat(1)},
                                {L(Rat(1, 4), Rat(0)), X(Rat(1, 4), Rat(1))}));
  f.curves.push_back(horiz(f.surface, "H", Rat(1, 8)));
  f.curves.push_back(horiz(f.surface, "B1", Rat(3, 4)));
  f.curves.push_back(vert(f.surface, "B2", Rat(5, 8)));
  return f;
}

// Three slopes 0, infinity, 1 pairwise crossing once: triangle products
// with areas 1/32, 9/32, 25/32.
inline Fixture fixture_torus_theta() {
  using namespace fixture_detail;
  Fixture f;
  f.name = "torus-theta";
  f.surface = FlatSurface::torus(1, 1);
  f.cutoff = Rat(1);
  f.curves.push_back(horiz(f.surface, "L0", Rat(1, 2)));
  f.curves.push_back(vert(f.surface, "Linf", Rat(1, 2)));
  f.curves.push_back(make_curve(f.surface, "L1", Pt{Rat(0), Rat(1, 4)},
                                {L(Rat(3, 4), Rat(1)), X(Rat(3, 4), Rat(0)),
                                 L(Rat(1), Rat(1, 4)), X(Rat(0), Rat(1, 4))}));
  return f;
}

// Five distinct slopes {0, 1, infinity, -1, 2}, pairwise transversal with no
// triple points: composable strings of length four exist.
inline Fixture fixture_torus_four_slopes() {
  using namespace fixture_detail;
  Fixture f;
  f.name = "torus-four-slopes";
  f.surface = FlatSurface::torus(1, 1);
  f.cutoff = Rat(1);
  f.curves.push_back(horiz(f.surface, "S0", Rat(1, 2)));
  f.curves.push_back(make_curve(f.surface, "S1", Pt{Rat(0), Rat(1, 4)},
                                {L(Rat(3, 4), Rat(1)), X(Rat(3, 4), Rat(0)),
                                 L(Rat(1), Rat(1, 4)), X(Rat(0), Rat(1, 4))}));
  f.curves.push_back(vert(f.surface, "Sinf", Rat(1, 2)));
  f.curves.push_back(make_curve(f.surface, "Sm1", Pt{Rat(0), Rat(5, 8)},
                                {L(Rat(5, 8), Rat(0)), X(Rat(5, 8), Rat(1)),
                                 L(Rat(1), Rat(5, 8)), X(Rat(0), Rat(5, 8))}));
  f.curves.push_back(make_curve(
      f.surface, "S2", Pt{Rat(1, 16), Rat(0)},
      {L(Rat(9, 16), Rat(1)), X(Rat(9, 16), Rat(0)), L(Rat(1), Rat(7, 8)),
       X(Rat(0), Rat(7, 8)), L(Rat(1, 16), Rat(1)), X(Rat(1, 16), Rat(0))}));
  return f;
}

// Flat annulus with a core circle and a Hamiltonian translate: the two
// bigons both have area 1/32.
inline Fixture fixture_annulus_e12() {
  using namespace fixture_detail;
  Fixture f;
  f.name = "annulus-e12";
  f.surface = FlatSurface::annulus(1, 1);
  f.cutoff = Rat(1);
  f.curves.push_back(make_curve(f.surface, "g1", Pt{Rat(0), Rat(1, 2)},
                                {L(Rat(1), Rat(1, 2)), X(Rat(0), Rat(1, 2))}));
  f.curves.push_back(make_curve(f.surface, "g2", Pt{Rat(0), Rat(3, 8)},
                                {L(Rat(1, 2), Rat(5, 8)), L(Rat(1), Rat(3, 8)),
                                 X(Rat(0), Rat(3, 8))}));
  return f;
}

// Genus-2 L-surface with a spanning set of curves:
//   A = {x=1/4}, B = {y=1/4}, C = {x=5/4}, D = {y=7/4}, E of slope one,
//   sigma = embedded separating loop (boundary of a one-holed torus),
//   coneloop = loop around the cone point (counterclockwise as built),
//   disc = boundary of an embedded square disc.
inline Fixture fixture_genus2_L() {
  using namespace fixture_detail;
  Fixture f;
  f.name = "genus2-L";
  f.surface = FlatSurface::genus2_L();
  f.cutoff = Rat(3);
  const FlatSurface& s = f.surface;
  f.curves.push_back(make_curve(s, "A", Pt{Rat(1, 4), Rat(0)},
                                {L(Rat(1, 4), Rat(2)), X(Rat(1, 4), Rat(0))}));
  f.curves.push_back(make_curve(s, "B", Pt{Rat(0), Rat(1, 4)},
                                {L(Rat(2), Rat(1, 4)), X(Rat(0), Rat(1, 4))}));
  f.curves.push_back(make_curve(s, "C", Pt{Rat(5, 4), Rat(0)},
                                {L(Rat(5, 4), Rat(1)), X(Rat(5, 4), Rat(0))}));
  f.curves.push_back(make_curve(s, "D", Pt{Rat(0), Rat(7, 4)},
                                {L(Rat(1), Rat(7, 4)), X(Rat(0), Rat(7, 4))}));
  f.curves.push_back(make_curve(
      s, "E", Pt{Rat(0), Rat(1, 8)},
      {L(Rat(1), Rat(9, 8)), X(Rat(0), Rat(9, 8)), L(Rat(7, 8), Rat(2)),
       X(Rat(7, 8), Rat(0)), L(Rat(15, 8), Rat(1)), X(Rat(15, 8), Rat(0)),
       L(Rat(2), Rat(1, 8)), X(Rat(0), Rat(1, 8))}));
  f.curves.push_back(separating_loop(s));
  f.curves.push_back(make_curve(
      s, "coneloop", Pt{Rat(3, 32), Rat(0)},
      {L(Rat(0), Rat(3, 32)), X(Rat(2), Rat(3, 32)), L(Rat(61, 32), Rat(0)),
       X(Rat(61, 32), Rat(1)), L(Rat(2), Rat(29, 32)), X(Rat(0), Rat(29, 32)),
       L(Rat(1, 32), Rat(1)), L(Rat(0), Rat(35, 32)), X(Rat(1), Rat(35, 32)),
       L(Rat(31, 32), Rat(31, 32)), L(Rat(35, 32), Rat(1)), X(Rat(35, 32), Rat(0)),
       L(Rat(1), Rat(1, 32)), L(Rat(29, 32), Rat(0)), X(Rat(29, 32), Rat(2)),
       L(Rat(1), Rat(61, 32)), X(Rat(0), Rat(61, 32)), L(Rat(3, 32), Rat(2)),
       X(Rat(3, 32), Rat(0))}));
  f.curves.push_back(make_curve(
      s, "disc", Pt{Rat(5, 32), Rat(5, 32)},
      {L(Rat(11, 32), Rat(5, 32)), L(Rat(11, 32), Rat(11, 32)),
       L(Rat(5, 32), Rat(11, 32)), L(Rat(5, 32), Rat(5, 32))}));
  return f;
}

// Cylinder decomposition data on the L-surface: three cylinder boundary
// pairs of total area 3, the separating loop sigma, and a small correcting
// cylinder pair of area 61/64 matching the holonomy of sigma. Complex
// structures over these curves are assembled by the twisted-complex tests.
inline Fixture fixture_genus2_krelation() {
  using namespace fixture_detail;
  Fixture f;
  f.name = "genus2-krelation";
  f.surface = FlatSurface::genus2_L();
  f.cutoff = Rat(3);
  const FlatSurface& s = f.surface;
  auto vfull = [&](const std::string& n, const Rat& c) {
    return make_curve(s, n, Pt{c, Rat(0)}, {L(c, 2), X(c, 0)});
  };
  auto vright = [&](const std::string& n, const Rat& c) {
    return make_curve(s, n, Pt{c, Rat(0)}, {L(c, 1), X(c, 0)});
  };
  auto hfull = [&](const std::string& n, const Rat& c) {
    return make_curve(s, n, Pt{Rat(0), c}, {L(2, c), X(0, c)});
  };
  f.curves.push_back(vfull("x18", Rat(1, 8)));
  f.curves.push_back(vfull("x78", Rat(7, 8)));
  f.curves.push_back(vright("x98", Rat(9, 8)));
  f.curves.push_back(vright("x138", Rat(13, 8)));
  f.curves.push_back(hfull("y38", Rat(3, 8)));
  f.curves.push_back(hfull("y78", Rat(7, 8)));
  f.curves.push_back(separating_loop(s));
  f.curves.push_back(vfull("x38", Rat(3, 8)));
  f.curves.push_back(vfull("x109", Rat(109, 128)));
  return f;
}

inline Fixture get_fixture(const std::string& name) {
  if (name == "torus-vh") return fixture_torus_vh();
  if (name == "torus-pushoff-unequal") return fixture_torus_pushoff_unequal();
  if (name == "torus-pushoff-equal") return fixture_torus_pushoff_equal();
  if (name == "torus-resolve") return fixture_torus_resolve();
  if (name == "torus-theta") return fixture_torus_theta();
  if (name == "torus-four-slopes") return fixture_torus_four_slopes();
  if (name == "annulus-e12") return fixture_annulus_e12();
  if (name == "genus2-L") return fixture_genus2_L();
  if (name == "genus2-krelation") return fixture_genus2_krelation();
  throw parse_error("unknown fixture '" + name + "'");
}

inline std::vector<std::string> fixture_names() {
  return {"torus-vh",          "torus-pushoff-unequal", "torus-pushoff-equal",
          "torus-resolve",     "torus-theta",           "torus-four-slopes",
          "annulus-e12",       "genus2-L",              "genus2-krelation"};
}

}  // namespace flatfloer
