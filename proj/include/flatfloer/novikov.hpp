#pragma once

// Truncated Novikov series: finite formal sums sum_i c_i t^{e_i} with
// rational coefficients and exponents, carried modulo t^cutoff. A null
// cutoff means the series is exact. Every operation computes the largest
// cutoff below which its result is fully determined by its inputs:
//   add/sub:  min(A, B)
//   mul:      min(A, B, A + val(y), B + val(x))
//   invert:   A - 2 val(x)   (and 1/x is exact when x is an exact monomial)
// where val is the leading exponent. For nonnegative valuations the product
// rule reduces to min(A, B); the extra terms keep truncation sound when
// negative exponents appear.

#include "flatfloer/rational.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

namespace flatfloer {

using Cutoff = std::optional<Rat>;  // nullopt = exact (no truncation)

inline Cutoff cutoff_min(const Cutoff& a, const Cutoff& b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

inline bool cutoff_le(const Cutoff& a, const Cutoff& b) {
  // a <= b in the extended order where nullopt is +infinity.
  if (!a) return !b ? true : false;
  if (!b) return true;
  return *a <= *b;
}

class Series {
 public:
  // Terms sorted by strictly increasing exponent, all coefficients nonzero,
  // all exponents below the cutoff.
  std::vector<std::pair<Rat, Rat>> terms;  // (exponent, coefficient)
  Cutoff cutoff;

  Series() = default;
  explicit Series(Cutoff c) : cutoff(std::move(c)) {}

  static Series zero(Cutoff c = std::nullopt) { return Series(std::move(c)); }

  static Series monomial(const Rat& exp, const Rat& coeff,
                         Cutoff c = std::nullopt) {
    Series s(std::move(c));
    if (coeff != 0 && (!s.cutoff || exp < *s.cutoff)) s.terms.emplace_back(exp, coeff);
    return s;
  }

  static Series one(Cutoff c = std::nullopt) { return monomial(0, 1, std::move(c)); }

  bool is_zero() const { return terms.empty(); }

  // Leading exponent; for the zero series the valuation is unknown beyond
  // the cutoff, so val() returns the cutoff itself (+infinity if exact zero).
  Cutoff val() const {
    if (terms.empty()) return cutoff;
    return terms.front().first;
  }

  const Rat& leading_coeff() const {
    if (terms.empty()) throw std::domain_error("leading_coeff of zero series");
    return terms.front().second;
  }

  Series truncated(const Cutoff& c) const {
    Series r(cutoff_min(cutoff, c));
    for (const auto& [e, co] : terms)
      if (!r.cutoff || e < *r.cutoff) r.terms.emplace_back(e, co);
    return r;
  }

  Series operator-() const {
    Series r(*this);
    for (auto& [e, c] : r.terms) c = -c;
    return r;
  }

  Series scaled(const Rat& s) const {
    Series r(cutoff);
    if (s == 0) return r;
    for (const auto& [e, c] : terms) r.terms.emplace_back(e, c * s);
    return r;
  }

  // Multiply by a single exact monomial c t^e (used by pivoting code).
  Series shifted(const Rat& e, const Rat& c) const {
    if (c == 0) return Series(cutoff ? Cutoff(*cutoff + e) : Cutoff{});
    Series r(cutoff ? Cutoff(*cutoff + e) : Cutoff{});
    for (const auto& [ex, co] : terms) r.terms.emplace_back(ex + e, co * c);
    return r;
  }

  friend Series operator+(const Series& a, const Series& b) {
    Series r(cutoff_min(a.cutoff, b.cutoff));
    auto ia = a.terms.begin(), ib = b.terms.begin();
    auto push = [&r](const Rat& e, const Rat& c) {
      if (c != 0 && (!r.cutoff || e < *r.cutoff)) r.terms.emplace_back(e, c);
    };
    while (ia != a.terms.end() || ib != b.terms.end()) {
      if (ib == b.terms.end() || (ia != a.terms.end() && ia->first < ib->first)) {
        push(ia->first, ia->second);
        ++ia;
      } else if (ia == a.terms.end() || ib->first < ia->first) {
        push(ib->first, ib->second);
        ++ib;
      } else {
        push(ia->first, ia->second + ib->second);
        ++ia;
        ++ib;
      }
    }
    return r;
  }

  friend Series operator-(const Series& a, const Series& b) { return a + (-b); }

  friend Series operator*(const Series& x, const Series& y) {
    Cutoff c = cutoff_min(x.cutoff, y.cutoff);
    if (x.cutoff) c = cutoff_min(c, y.val() ? Cutoff(*x.cutoff + *y.val()) : Cutoff{});
    if (y.cutoff) c = cutoff_min(c, x.val() ? Cutoff(*y.cutoff + *x.val()) : Cutoff{});
    std::map<Rat, Rat> acc;
    for (const auto& [ex, cx] : x.terms)
      for (const auto& [ey, cy] : y.terms) acc[ex + ey] += cx * cy;
    Series r(c);
    for (const auto& [e, co] : acc)
      if (co != 0 && (!r.cutoff || e < *r.cutoff)) r.terms.emplace_back(e, co);
    return r;
  }

  // Multiplicative inverse. Requires a nonzero leading term; the input must
  // be a monomial or carry a finite cutoff (otherwise the inverse is an
  // infinite series, which this representation cannot hold).
  Series inverse() const {
    if (terms.empty()) throw std::domain_error("inverse of zero series");
    Rat v = terms.front().first;
    Rat lc = terms.front().second;
    if (terms.size() == 1) {
      Cutoff c = cutoff ? Cutoff(*cutoff - 2 * v) : Cutoff{};
      return monomial(-v, 1 / lc, c);
    }
    if (!cutoff)
      throw std::domain_error("inverse of a non-monomial exact series");
    // x = lc t^v (1 + u), val(u) > 0. Invert the unit by geometric series.
    Cutoff rc = Cutoff(*cutoff - 2 * v);
    Series unit_inv = one(Cutoff(*cutoff - v));
    Series u(Cutoff(*cutoff - v));
    for (size_t i = 1; i < terms.size(); ++i)
      u.terms.emplace_back(terms[i].first - v, terms[i].second / lc);
    Series pow = one(Cutoff(*cutoff - v));
    Rat uval = u.terms.front().first;
    for (Rat reached = uval; reached < *cutoff - v; reached += uval) {
      pow = pow * (-u);
      if (pow.is_zero()) break;
      unit_inv = unit_inv + pow;
    }
    return unit_inv.shifted(-v, 1 / lc).truncated(rc);
  }

  bool operator==(const Series& o) const {
    return cutoff == o.cutoff && terms == o.terms;
  }

  json to_json() const {
    json jt = json::array();
    for (const auto& [e, c] : terms)
      jt.push_back(json::array({rat_to_json(e), rat_to_json(c)}));
    return json{{"terms", jt}, {"cutoff", opt_rat_to_json(cutoff)}};
  }

  static Series from_json(const json& j) {
    Series s;
    if (!j.is_object() || !j.contains("terms"))
      throw parse_error("series must be {terms, cutoff}");
    s.cutoff = j.contains("cutoff") ? opt_rat_from_json(j.at("cutoff")) : Cutoff{};
    std::map<Rat, Rat> acc;
    for (const auto& t : j.at("terms")) {
      if (!t.is_array() || t.size() != 2)
        throw parse_error("series term must be [exponent, coefficient]");
      acc[rat_from_json(t[0])] += rat_from_json(t[1]);
    }
    for (const auto& [e, c] : acc)
      if (c != 0 && (!s.cutoff || e < *s.cutoff)) s.terms.emplace_back(e, c);
    return s;
  }
};

// Equality modulo t^c where c = min of the two cutoffs: the finest
// comparison both operands support.
inline bool eq_mod_cutoff(const Series& a, const Series& b) {
  Cutoff c = cutoff_min(a.cutoff, b.cutoff);
  return a.truncated(c).terms == b.truncated(c).terms;
}

inline std::string series_str(const Series& s) {
  if (s.terms.empty()) return s.cutoff ? "0 (mod t^" + rat_str(*s.cutoff) + ")" : "0";
  std::string out;
  for (size_t i = 0; i < s.terms.size(); ++i) {
    const auto& [e, c] = s.terms[i];
    if (i) out += c >= 0 ? " + " : " - ";
    else if (c < 0) out += "-";
    Rat ac = abs(c);
    if (ac != 1 || e == 0) out += rat_str(ac);
    if (e != 0) {
      if (ac != 1) out += "*";
      out += "t^" + rat_str(e);
    }
  }
  if (s.cutoff) out += " (mod t^" + rat_str(*s.cutoff) + ")";
  return out;
}

}  // namespace flatfloer
