#include "flatfloer/novikov.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <random>

using namespace flatfloer;

namespace {

Rat rnd_rat(std::mt19937_64& rng, int lo, int hi, int max_den) {
  std::uniform_int_distribution<int> num(lo * max_den, hi * max_den);
  std::uniform_int_distribution<int> den(1, max_den);
  return Rat(num(rng), den(rng));
}

// Exact series (no cutoff) with a few random terms.
Series rnd_series(std::mt19937_64& rng, bool allow_negative_exponents) {
  std::uniform_int_distribution<int> nterms(0, 4);
  int n = nterms(rng);
  Series s;
  std::map<Rat, Rat> acc;
  for (int i = 0; i < n; ++i) {
    Rat e = rnd_rat(rng, allow_negative_exponents ? -2 : 0, 3, 6);
    Rat c = rnd_rat(rng, -3, 3, 4);
    acc[e] += c;
  }
  for (const auto& [e, c] : acc)
    if (c != 0) s.terms.emplace_back(e, c);
  return s;
}

Cutoff rnd_cutoff(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 3);
  if (kind(rng) == 0) return std::nullopt;
  return rnd_rat(rng, 1, 4, 4);
}

}  // namespace

TEST_CASE("monomial product") {
  Series a = Series::monomial(Rat(1, 32), 1);
  Series b = Series::monomial(Rat(9, 32), 2);
  Series p = a * b;
  REQUIRE(p.terms.size() == 1);
  CHECK(p.terms[0].first == Rat(10, 32));
  CHECK(p.terms[0].second == 2);
  CHECK(!p.cutoff);
}

TEST_CASE("geometric identity modulo t^3") {
  Series a = Series::one() - Series::monomial(1, 1);
  Series b = Series::one(Rat(3)) + Series::monomial(1, 1, Rat(3)) +
             Series::monomial(2, 1, Rat(3));
  Series p = a * b;
  REQUIRE(p.cutoff);
  CHECK(*p.cutoff == 3);
  CHECK(eq_mod_cutoff(p, Series::one()));
}

TEST_CASE("addition truncates to the smaller cutoff") {
  Series a = Series::monomial(Rat(5, 2), 1, Rat(3)) + Series::monomial(1, 2, Rat(3));
  Series b = Series::monomial(Rat(1, 2), 3, Rat(2));
  Series s = a + b;
  REQUIRE(s.cutoff);
  CHECK(*s.cutoff == 2);
  REQUIRE(s.terms.size() == 2);  // t^{5/2} dropped
  CHECK(s.terms[0].first == Rat(1, 2));
  CHECK(s.terms[1].first == Rat(1));
}

TEST_CASE("monomial inverse is exact") {
  Series a = Series::monomial(Rat(7, 5), Rat(-3, 2));
  Series inv = a.inverse();
  REQUIRE(inv.terms.size() == 1);
  CHECK(inv.terms[0].first == Rat(-7, 5));
  CHECK(inv.terms[0].second == Rat(-2, 3));
  CHECK(!inv.cutoff);
  CHECK(eq_mod_cutoff(a * inv, Series::one()));
}

TEST_CASE("inverse of a unit with several terms") {
  // (1 - t)^{-1} = 1 + t + t^2 + ... mod t^3
  Series a = (Series::one() - Series::monomial(1, 1)).truncated(Rat(3));
  Series inv = a.inverse();
  REQUIRE(inv.cutoff);
  CHECK(*inv.cutoff == 3);
  REQUIRE(inv.terms.size() == 3);
  CHECK(inv.terms[2] == std::pair<Rat, Rat>(Rat(2), Rat(1)));
  CHECK(eq_mod_cutoff(a * inv, Series::one()));
}

TEST_CASE("inverse with negative valuation tracks precision loss") {
  // x = t^{-1} + 1, cutoff 2. The inverse is only known mod t^{2-2(-1)} = t^4.
  Series x = Series::monomial(-1, 1, Rat(2)) + Series::monomial(0, 1, Rat(2));
  Series inv = x.inverse();
  REQUIRE(inv.cutoff);
  CHECK(*inv.cutoff == 4);
  CHECK(eq_mod_cutoff(x * inv, Series::one()));
  // Exact inverse is t - t^2 + t^3 - ...; check the first terms.
  REQUIRE(inv.terms.size() >= 3);
  CHECK(inv.terms[0] == std::pair<Rat, Rat>(Rat(1), Rat(1)));
  CHECK(inv.terms[1] == std::pair<Rat, Rat>(Rat(2), Rat(-1)));
}

TEST_CASE("json round trip") {
  Series s = Series::monomial(Rat(1, 3), Rat(-2, 7), Rat(5)) +
             Series::monomial(Rat(3, 2), 4, Rat(5));
  Series back = Series::from_json(s.to_json());
  CHECK(back == s);
  Series exact = Series::monomial(0, 1);
  CHECK(Series::from_json(exact.to_json()) == exact);
}

// Soundness: an operation applied to truncations must agree with the
// truncation of the exact result, below the cutoff the operation reports.
TEST_CASE("add and mul are sound under truncation") {
  std::mt19937_64 rng(20260822);
  for (int iter = 0; iter < 1000; ++iter) {
    bool neg = iter % 2 == 0;
    Series x = rnd_series(rng, neg), y = rnd_series(rng, neg);
    Series xt = x.truncated(rnd_cutoff(rng));
    Series yt = y.truncated(rnd_cutoff(rng));

    Series sum = xt + yt;
    REQUIRE(eq_mod_cutoff(sum, x + y));

    Series prod = xt * yt;
    REQUIRE(eq_mod_cutoff(prod, x * y));
  }
}

TEST_CASE("ring identities modulo the tracked cutoff") {
  std::mt19937_64 rng(987654321);
  for (int iter = 0; iter < 1000; ++iter) {
    bool neg = iter % 3 == 0;
    Series a = rnd_series(rng, neg).truncated(rnd_cutoff(rng));
    Series b = rnd_series(rng, neg).truncated(rnd_cutoff(rng));
    Series c = rnd_series(rng, neg).truncated(rnd_cutoff(rng));

    REQUIRE(eq_mod_cutoff(a + b, b + a));
    REQUIRE(eq_mod_cutoff((a + b) + c, a + (b + c)));
    REQUIRE(eq_mod_cutoff(a * b, b * a));
    REQUIRE(eq_mod_cutoff((a * b) * c, a * (b * c)));
    REQUIRE(eq_mod_cutoff(a * (b + c), a * b + a * c));
    REQUIRE(eq_mod_cutoff(a - a, Series::zero()));
    REQUIRE(eq_mod_cutoff(a * Series::one(), a));
  }
}

TEST_CASE("random units invert") {
  std::mt19937_64 rng(55);
  int done = 0;
  for (int iter = 0; iter < 2000 && done < 1000; ++iter) {
    Series x = rnd_series(rng, iter % 2 == 0).truncated(rnd_cutoff(rng));
    if (x.is_zero() || !x.cutoff) continue;
    Series inv = x.inverse();
    REQUIRE(eq_mod_cutoff(x * inv, Series::one()));
    ++done;
  }
  REQUIRE(done == 1000);
}
