#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "selfish/error.hpp"

namespace selfish {

using Integer = boost::multiprecision::cpp_int;

/// Exact fraction with arbitrary-precision numerator and denominator, always
/// kept in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw Error(Errc::ZeroDenominator, "denominator is zero");
  if (den < 0) return Rational(-Integer(num), -Integer(den));
  return Rational(Integer(num), Integer(den));
}

inline Integer numerator_of(const Rational& q) {
  return boost::multiprecision::numerator(q);
}

inline Integer denominator_of(const Rational& q) {
  return boost::multiprecision::denominator(q);
}

inline bool is_integer(const Rational& q) { return denominator_of(q) == 1; }

/// Lowest-terms rendering: "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& q) {
  std::string out = numerator_of(q).str();
  if (!is_integer(q)) {
    out += '/';
    out += denominator_of(q).str();
  }
  return out;
}

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Digit strings with a leading 0 would otherwise be read as octal.
inline Integer decimal_integer(std::string_view digits) {
  while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
  return Integer{std::string(digits)};
}

}  // namespace detail

/// Parses "p", "p/q" or a finite decimal such as "-0.5"; surrounding blanks
/// are ignored. The result is exact.
inline Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const std::string original(text);

  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den)) {
      throw Error(Errc::SyntaxError, "malformed rational '" + original + "'");
    }
    Integer d = detail::decimal_integer(den);
    if (d == 0) throw Error(Errc::ZeroDenominator, "in '" + original + "'");
    value = Rational(detail::decimal_integer(num), d);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    auto frac = text.substr(dot + 1);
    if ((!whole.empty() && !detail::all_digits(whole)) || !detail::all_digits(frac)) {
      throw Error(Errc::SyntaxError, "malformed decimal '" + original + "'");
    }
    Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(frac.size()));
    Integer digits = detail::decimal_integer(std::string(whole) + std::string(frac));
    value = Rational(digits, scale);
  } else {
    if (!detail::all_digits(text)) {
      throw Error(Errc::SyntaxError, "malformed rational '" + original + "'");
    }
    value = Rational(detail::decimal_integer(text));
  }
  return negative ? Rational(-value) : value;
}

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::abs(a / boost::multiprecision::gcd(a, b) * b);
}

}  // namespace selfish
