#include "flatfloer/arrangement.hpp"
#include "flatfloer/fixtures.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>

using namespace flatfloer;
using fixture_detail::L;
using fixture_detail::X;

TEST_CASE("one crossing of the vertical and horizontal circles") {
  FlatSurface t = FlatSurface::torus(1, 1);
  PLCurve v = fixture_detail::vert(t, "V", Rat(1, 4));
  PLCurve h = fixture_detail::horiz(t, "H", Rat(1, 4));
  auto vh = crossings_between(v, h);
  REQUIRE(vh.size() == 1);
  CHECK(vh[0].p == Pt(Rat(1, 4), Rat(1, 4)));
  CHECK(vh[0].pa == Rat(1, 4));
  CHECK(vh[0].pb == Rat(1, 4));
  CHECK(vh[0].degree == 0);
  auto hv = crossings_between(h, v);
  REQUIRE(hv.size() == 1);
  CHECK(hv[0].degree == 1);
}

TEST_CASE("bigon pair crossings and degrees") {
  Fixture f = fixture_torus_vh();
  auto c = crossings_between(f.curve("V"), f.curve("Vp"));
  REQUIRE(c.size() == 2);
  CHECK(c[0].p == Pt(Rat(1, 4), Rat(1, 4)));
  CHECK(c[1].p == Pt(Rat(1, 4), Rat(3, 4)));
  CHECK(c[0].degree == 0);
  CHECK(c[1].degree == 1);
  CHECK(c[0].on_b.t != 0);  // interior of a chord of Vp
}

TEST_CASE("corner crossings of the unequal pushoff") {
  Fixture f = fixture_torus_pushoff_unequal();
  auto c = crossings_between(f.curve("V"), f.curve("V2"));
  REQUIRE(c.size() == 2);
  CHECK(c[0].p == Pt(Rat(1, 4), Rat(11, 32)));
  CHECK(c[1].p == Pt(Rat(1, 4), Rat(5, 8)));
  // Both crossings sit at PL corners of V2.
  CHECK(c[0].on_b.t == 0);
  CHECK(c[1].on_b.t == 0);
  CHECK(c[0].degree == 0);
  CHECK(c[1].degree == 1);
  auto [din, dout] = strand_dirs(f.curve("V2"), c[0].on_b);
  CHECK(din != dout);
}

TEST_CASE("complementary degrees") {
  Fixture f = fixture_genus2_L();
  std::vector<std::string> names = {"A", "B", "C", "D", "E", "sigma", "disc"};
  for (size_t i = 0; i < names.size(); ++i)
    for (size_t j = i + 1; j < names.size(); ++j) {
      const PLCurve& a = f.curve(names[i]);
      const PLCurve& b = f.curve(names[j]);
      auto ab = crossings_between(a, b);
      auto ba = crossings_between(b, a);
      REQUIRE(ab.size() == ba.size());
      for (const Crossing& c : ab) {
        bool found = false;
        for (const Crossing& d : ba)
          if (d.p == c.p) {
            found = true;
            CHECK(d.degree + c.degree == 1);
            CHECK(d.pa == c.pb);
            CHECK(d.pb == c.pa);
          }
        CHECK(found);
      }
    }
}

TEST_CASE("crossing counts on the genus two scene") {
  Fixture f = fixture_genus2_L();
  auto count = [&](const char* a, const char* b) {
    return crossings_between(f.curve(a), f.curve(b)).size();
  };
  CHECK(count("A", "B") == 1);
  CHECK(count("A", "D") == 1);
  CHECK(count("A", "E") == 2);
  CHECK(count("B", "E") == 2);
  CHECK(count("B", "C") == 1);
  CHECK(count("C", "E") == 1);
  CHECK(count("D", "E") == 1);
  CHECK(count("E", "sigma") == 6);
  CHECK(count("sigma", "disc") == 4);
  CHECK(count("A", "disc") == 2);
  CHECK(count("B", "disc") == 2);
  CHECK(count("E", "disc") == 2);
  CHECK(count("B", "sigma") == 0);
  CHECK(count("A", "sigma") == 0);
  CHECK(count("C", "sigma") == 2);
  CHECK(count("D", "sigma") == 2);
  CHECK(count("coneloop", "sigma") == 0);
  CHECK(count("coneloop", "E") == 0);
  CHECK(count("coneloop", "disc") == 0);
}

TEST_CASE("crossing counts match the homological pairing") {
  Fixture f = fixture_torus_four_slopes();
  const FlatSurface& s = f.surface;
  for (size_t i = 0; i < f.curves.size(); ++i)
    for (size_t j = i + 1; j < f.curves.size(); ++j) {
      auto ca = f.curves[i].homology_class(s);
      auto cb = f.curves[j].homology_class(s);
      long d = ca[0] * cb[1] - ca[1] * cb[0];
      CHECK(crossings_between(f.curves[i], f.curves[j]).size() ==
            size_t(std::abs(d)));
    }
}

TEST_CASE("self crossings of a figure eight") {
  FlatSurface t = FlatSurface::torus(1, 1);
  PLCurve bow = make_curve(t, "bow", Pt{Rat(1, 8), Rat(1, 8)},
                           {L(Rat(3, 8), Rat(3, 8)), L(Rat(1, 8), Rat(3, 8)),
                            L(Rat(3, 8), Rat(1, 8)), L(Rat(1, 8), Rat(1, 8))});
  auto sc = self_crossings(bow);
  REQUIRE(sc.size() == 1);
  CHECK(sc[0].p == Pt(Rat(1, 4), Rat(1, 4)));
  CHECK(sc[0].pa == Rat(1, 2));
  CHECK(sc[0].pb == Rat(5, 2));
  CHECK(sc[0].degree == 0);

  Fixture f = fixture_torus_vh();
  for (const char* n : {"V", "Vp", "V3", "Dg", "H"})
    CHECK(self_crossings(f.curve(n)).empty());
}

TEST_CASE("all fixture scenes are transversal") {
  for (const std::string& n : fixture_names()) {
    Fixture f = get_fixture(n);
    CHECK_NOTHROW(validate_scene(f.surface, f.curves));
  }
}

TEST_CASE("degenerate contacts are rejected") {
  FlatSurface t = FlatSurface::torus(1, 1);
  PLCurve v = fixture_detail::vert(t, "V", Rat(1, 4));

  // Corner touching V from the left without crossing.
  PLCurve graze = make_curve(t, "graze", Pt{Rat(1, 8), Rat(3, 8)},
                             {L(Rat(1, 4), Rat(1, 2)), L(Rat(1, 8), Rat(5, 8)),
                              L(Rat(1, 8), Rat(3, 8))});
  CHECK_THROWS_AS(crossings_between(v, graze), validation_error);

  // Collinear overlap along V.
  PLCurve slide = make_curve(t, "slide", Pt{Rat(1, 4), Rat(3, 8)},
                             {L(Rat(1, 4), Rat(5, 8)), L(Rat(3, 8), Rat(1, 2)),
                              L(Rat(1, 4), Rat(3, 8))});
  CHECK_THROWS_AS(crossings_between(v, slide), validation_error);

  // Crossing exactly on the chart edge.
  PLCurve am = make_curve(t, "am", Pt{Rat(0), Rat(1, 2)},
                          {L(Rat(1, 2), Rat(0)), X(Rat(1, 2), Rat(1)),
                           L(Rat(1), Rat(1, 2)), X(Rat(0), Rat(1, 2))});
  PLCurve hedge = fixture_detail::horiz(t, "hedge", Rat(1, 2));
  // am passes through (0,1/2) and (1,1/2) which lie on hedge's wrap joint.
  CHECK_THROWS_AS(crossings_between(hedge, am), validation_error);

  // Triple point: V, H and the antidiagonal all pass through (1/4,1/4).
  PLCurve h = fixture_detail::horiz(t, "H", Rat(1, 4));
  CHECK_THROWS_AS(validate_scene(t, {v, h, am}), validation_error);
}

TEST_CASE("joint meeting of two curves is rejected") {
  FlatSurface t = FlatSurface::torus(1, 1);
  // Two wedges sharing the corner point (1/2,1/2).
  PLCurve w1 = make_curve(t, "w1", Pt{Rat(3, 8), Rat(1, 4)},
                          {L(Rat(1, 2), Rat(1, 2)), L(Rat(5, 8), Rat(1, 4)),
                           L(Rat(3, 8), Rat(1, 4))});
  PLCurve w2 = make_curve(t, "w2", Pt{Rat(3, 8), Rat(3, 4)},
                          {L(Rat(5, 8), Rat(3, 4)), L(Rat(1, 2), Rat(1, 2)),
                           L(Rat(3, 8), Rat(3, 4))});
  CHECK_THROWS_AS(crossings_between(w1, w2), validation_error);
}
