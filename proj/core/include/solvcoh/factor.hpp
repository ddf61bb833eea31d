#pragma once

#include "solvcoh/rational.hpp"

#include <cstdint>
#include <map>

namespace solvcoh {

/// Trial-division bound; SOLVCOH_PRIME_BOUND overrides the default 10^6.
std::uint64_t prime_bound();

/// Prime factorization of |n| by trial division, n != 0. A cofactor left
/// after trial division is accepted as prime when it is < bound^2 and
/// rejected with an error otherwise.
std::map<Integer, unsigned> factor_integer(const Integer& n);

/// Exponent map of a nonzero rational: prime -> (num exponent - den exponent).
std::map<Integer, long> factor_rational(const Rational& q);

std::vector<Integer> divisors(const Integer& n);

}  // namespace solvcoh
