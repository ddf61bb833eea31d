#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace solvcoh {

/// Arbitrary-precision integer.
using Integer = boost::multiprecision::cpp_int;

/// Exact rational number, always stored in lowest terms with positive
/// denominator. No rounding ever occurs.
using Rational = boost::multiprecision::cpp_rational;

/// Coordinate vector over Q.
using RatVec = std::vector<Rational>;

/// Base error for every mathematical failure in the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Parses "p/q" or "p" (optional sign, q > 0 after reduction).
Rational parse_rational(const std::string& text);

/// Formats as "p/q", or "p" when the denominator is 1.
std::string rational_to_string(const Rational& value);

inline bool is_integer(const Rational& value) { return denominator(value) == 1; }

}  // namespace solvcoh
