#include "flatfloer/surface.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace flatfloer;

TEST_CASE("unit torus") {
  FlatSurface t = FlatSurface::torus(1, 1);
  CHECK(t.closed());
  CHECK(t.euler == 0);
  CHECK(t.genus() == 1);
  CHECK(t.branching == 1);
  CHECK(t.area() == 1);
  CHECK(t.kappa() == 0);
  CHECK(t.class_turns.size() == 1);
  CHECK(t.class_turns[0] == 4);
  CHECK(t.lattice.basis.size() == 2);
  CHECK(t.lattice.contains(Vec{Rat(3), Rat(-5)}));
  CHECK(!t.lattice.contains(Vec{Rat(1, 2), Rat(0)}));
}

TEST_CASE("L-shaped genus two surface") {
  FlatSurface s = FlatSurface::genus2_L();
  CHECK(s.closed());
  CHECK(s.euler == -2);
  CHECK(s.genus() == 2);
  CHECK(s.branching == 3);
  CHECK(s.class_turns[0] == 12);  // cone angle 6 pi
  CHECK(s.area() == 3);
  CHECK(s.kappa() == Rat(3, 2));
  // Pairing translations generate the full integer lattice.
  CHECK(s.lattice.contains(Vec{Rat(1), Rat(0)}));
  CHECK(s.lattice.contains(Vec{Rat(0), Rat(1)}));
  CHECK(!s.lattice.contains(Vec{Rat(1, 2), Rat(1, 2)}));
  // Corner orbit = all integer points of the box.
  auto orbit = s.corner_orbit(2);
  CHECK(orbit.size() == 25);
}

TEST_CASE("flat annulus") {
  FlatSurface a = FlatSurface::annulus(1, 1);
  CHECK(!a.closed());
  CHECK(a.euler == 0);
  CHECK(a.genus() == 0);
  CHECK(a.kappa() == 0);
  CHECK(a.lattice.basis.size() == 1);
}

TEST_CASE("point location") {
  FlatSurface s = FlatSurface::genus2_L();
  CHECK(s.strictly_inside(Pt{Rat(1, 2), Rat(1, 2)}));
  CHECK(s.strictly_inside(Pt{Rat(1, 2), Rat(3, 2)}));
  CHECK(!s.strictly_inside(Pt{Rat(3, 2), Rat(3, 2)}));  // outside the notch
  CHECK(!s.strictly_inside(Pt{Rat(0), Rat(1, 2)}));     // on an edge
  CHECK(s.edge_interior_at(Pt{Rat(0), Rat(1, 2)}) == 7);
  CHECK(s.corner_at(Pt{Rat(1), Rat(1)}) == 4);
  CHECK(s.edge_interior_at(Pt{Rat(1), Rat(1, 2)}) == -1);  // interior point
  // Continuation across the right edge of the lower arm.
  Pt p{Rat(2), Rat(1, 2)};
  CHECK(s.edge_interior_at(p) == 2);
  Pt q = s.continue_across(2, p);
  CHECK(q == Pt(Rat(0), Rat(1, 2)));
}

TEST_CASE("validation rejects bad input") {
  // Clockwise polygon.
  CHECK_THROWS_AS(FlatSurface::rectilinear(
                      {{Rat(0), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(1)}, {Rat(1), Rat(0)}},
                      {}),
                  validation_error);
  // Non-axis-parallel edge.
  CHECK_THROWS_AS(FlatSurface::rectilinear(
                      {{Rat(0), Rat(0)}, {Rat(1), Rat(1)}, {Rat(0), Rat(1)}, {Rat(0), Rat(1, 2)}},
                      {}),
                  validation_error);
  // Wrong pairing translation.
  std::vector<Pt> sq = {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(1), Rat(1)}, {Rat(0), Rat(1)}};
  CHECK_THROWS_AS(FlatSurface::rectilinear(sq, {{0, 2, Vec{Rat(0), Rat(2)}}}),
                  validation_error);
  // Edge used twice.
  CHECK_THROWS_AS(FlatSurface::rectilinear(
                      sq, {{0, 2, Vec{Rat(0), Rat(1)}}, {2, 0, Vec{Rat(0), Rat(-1)}}}),
                  validation_error);
  // Four boundary edges: neither closed nor an annulus.
  CHECK_THROWS_AS(FlatSurface::rectilinear(sq, {}), validation_error);
  // Two vertex classes on a closed surface is unsupported.
  CHECK_THROWS_AS(
      FlatSurface::rectilinear({{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(2), Rat(0)},
                                {Rat(2), Rat(1)}, {Rat(1), Rat(1)}, {Rat(0), Rat(1)}},
                               {{0, 4, Vec{Rat(0), Rat(1)}},
                                {1, 3, Vec{Rat(0), Rat(1)}},
                                {5, 2, Vec{Rat(2), Rat(0)}}}),
      validation_error);
}

TEST_CASE("lattice reduction") {
  RatLattice l = RatLattice::span({Vec{Rat(2), Rat(0)}, Vec{Rat(3), Rat(0)}});
  REQUIRE(l.basis.size() == 1);
  CHECK(l.basis[0] == Vec{Rat(1), Rat(0)});
  RatLattice h = RatLattice::span({Vec{Rat(1, 2), Rat(1, 3)}});
  CHECK(h.contains(Vec{Rat(3, 2), Rat(1)}));
  CHECK(h.contains(Vec{Rat(1), Rat(2, 3)}));
  CHECK(!h.contains(Vec{Rat(1, 2), Rat(1, 2)}));
  CHECK(!h.contains(Vec{Rat(1, 4), Rat(1, 6)}));
  RatLattice f = RatLattice::span(
      {Vec{Rat(2), Rat(1)}, Vec{Rat(0), Rat(3)}, Vec{Rat(2), Rat(4)}});
  REQUIRE(f.basis.size() == 2);
  CHECK(f.contains(Vec{Rat(2), Rat(1)}));
  CHECK(f.contains(Vec{Rat(2), Rat(4)}));
  CHECK(f.contains(Vec{Rat(0), Rat(3)}));
  CHECK(!f.contains(Vec{Rat(0), Rat(1)}));
  CHECK(!f.contains(Vec{Rat(1), Rat(0)}));
  auto pts = f.points_in_box(Pt{Rat(0), Rat(0)}, Rat(3));
  // Lattice {(2,1),(0,3)}: points with |x|<=3, |y|<=3:
  // k=0: (0,0),(0,3),(0,-3); k=1: (2,1),(2,-2); k=-1: (-2,-1),(-2,2).
  CHECK(pts.size() == 7);
}
