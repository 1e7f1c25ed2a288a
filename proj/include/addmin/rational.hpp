#pragma once

#include <addmin/errors.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace addmin {

/// Exact rational scalar. Always normalized (lowest terms, positive
/// denominator); no operation on it ever rounds.
using Rat = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                          boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::cpp_int;

using Vector = std::vector<Rat>;
using Matrix = std::vector<Vector>;

namespace detail {

inline bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
           return std::isdigit(c) != 0;
         });
}

inline BigInt pow10(std::size_t k) {
  BigInt r = 1;
  for (std::size_t i = 0; i < k; ++i) r *= 10;
  return r;
}

[[noreturn]] inline void bad_numeral(std::string_view text) {
  throw ParseError("malformed numeral '" + std::string(text) + "'");
}

}  // namespace detail

/// Parses an optionally signed decimal numeral ("0.4", "-1", ".5", "1e-2")
/// into its exact rational value.
inline Rat parse_decimal(std::string_view text) {
  std::string_view s = text;
  if (s.empty()) detail::bad_numeral(text);

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  long long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    s = s.substr(0, e);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!detail::all_digits(exp_part) || exp_part.size() > 6) detail::bad_numeral(text);
    exponent = std::stoll(std::string(exp_part));
    if (exp_negative) exponent = -exponent;
  }

  std::string_view int_part = s;
  std::string_view frac_part;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
    if (!frac_part.empty() && !detail::all_digits(frac_part)) detail::bad_numeral(text);
  }
  if (!int_part.empty() && !detail::all_digits(int_part)) detail::bad_numeral(text);
  if (int_part.empty() && frac_part.empty()) detail::bad_numeral(text);

  std::string digits = std::string(int_part) + std::string(frac_part);
  // cpp_int reads a leading 0 as an octal prefix
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size()));
  BigInt numerator(digits.empty() ? std::string("0") : digits);
  exponent -= static_cast<long long>(frac_part.size());

  Rat value;
  if (exponent >= 0) {
    value = Rat(numerator * detail::pow10(static_cast<std::size_t>(exponent)));
  } else {
    value = Rat(numerator, detail::pow10(static_cast<std::size_t>(-exponent)));
  }
  return negative ? Rat(-value) : value;
}

/// Parses either a decimal numeral or a fraction "p/q".
inline Rat parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);

  std::string_view num = text.substr(0, slash);
  std::string_view den = text.substr(slash + 1);
  bool negative = false;
  if (!num.empty() && (num.front() == '+' || num.front() == '-')) {
    negative = num.front() == '-';
    num.remove_prefix(1);
  }
  if (!detail::all_digits(num) || !detail::all_digits(den)) detail::bad_numeral(text);
  BigInt d = parse_decimal(den).convert_to<BigInt>();
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rat value(parse_decimal(num).convert_to<BigInt>(), d);
  return negative ? Rat(-value) : value;
}

/// Renders a rational as an exact decimal string when its expansion
/// terminates ("0.35", "-1", "2") and as "p/q" otherwise.
inline std::string to_string(const Rat& value) {
  BigInt num = boost::multiprecision::numerator(value);
  BigInt den = boost::multiprecision::denominator(value);

  BigInt rest = den;
  std::size_t twos = 0;
  std::size_t fives = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  if (rest != 1) return num.str() + "/" + den.str();

  const std::size_t places = std::max(twos, fives);
  const bool negative = num < 0;
  if (negative) num = -num;
  BigInt scaled = num * detail::pow10(places) / den;
  std::string digits = scaled.str();
  if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');

  std::string out = negative ? "-" : "";
  out += digits.substr(0, digits.size() - places);
  if (places > 0) {
    out += '.';
    out += digits.substr(digits.size() - places);
  }
  return out;
}

inline std::string to_string(const Vector& v) {
  std::string out = "(";
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (j > 0) out += ", ";
    out += to_string(v[j]);
  }
  out += ")";
  return out;
}

/// Componentwise x <= y.
inline bool leq(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) throw DimensionError("vector length mismatch in comparison");
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] > y[j]) return false;
  }
  return true;
}

}  // namespace addmin
