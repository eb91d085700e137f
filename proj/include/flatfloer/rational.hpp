#pragma once

// Exact rational scalar type used throughout the library, plus the JSON
// encoding shared by scenes and reports: every rational travels as a
// two-element array ["num","den"] of decimal strings, denominator positive.

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace flatfloer {

using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;
using json = nlohmann::ordered_json;

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Rat rat_parse(const std::string& s) {
  try {
    return Rat(s);
  } catch (const std::exception&) {
    throw parse_error("not a rational: '" + s + "'");
  }
}

inline std::string rat_str(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline json rat_to_json(const Rat& r) {
  return json::array({numerator(r).str(), denominator(r).str()});
}

inline Rat rat_from_json(const json& j) {
  if (j.is_string()) return rat_parse(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_array() && j.size() == 2) {
    Rat num, den;
    if (j[0].is_string()) num = rat_parse(j[0].get<std::string>());
    else if (j[0].is_number_integer()) num = j[0].get<long long>();
    else throw parse_error("rational numerator must be string or integer");
    if (j[1].is_string()) den = rat_parse(j[1].get<std::string>());
    else if (j[1].is_number_integer()) den = j[1].get<long long>();
    else throw parse_error("rational denominator must be string or integer");
    if (den == 0) throw parse_error("rational with zero denominator");
    return num / den;
  }
  throw parse_error("expected rational as [num,den], string, or integer");
}

inline json opt_rat_to_json(const std::optional<Rat>& r) {
  if (!r) return nullptr;
  return rat_to_json(*r);
}

inline std::optional<Rat> opt_rat_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  return rat_from_json(j);
}

// Deterministic decimal rendering with a fixed number of fraction digits,
// used only for SVG coordinates where exactness is not required.
inline std::string rat_decimal(const Rat& r, int digits = 6) {
  Int num = numerator(r), den = denominator(r);
  bool neg = num < 0;
  if (neg) num = -num;
  Int whole = num / den, rem = num % den;
  std::string out = whole.str();
  if (digits > 0) {
    out += '.';
    for (int i = 0; i < digits; ++i) {
      rem *= 10;
      out += char('0' + int(rem / den));
      rem %= den;
    }
  }
  if (neg && (whole != 0 || out.find_first_not_of("0.") != std::string::npos))
    out = "-" + out;
  return out;
}

}  // namespace flatfloer
