#include "solvcoh/factor.hpp"

#include <cstdlib>

namespace solvcoh {

std::uint64_t prime_bound() {
  static const std::uint64_t bound = [] {
    if (const char* env = std::getenv("SOLVCOH_PRIME_BOUND")) {
      const auto v = std::strtoull(env, nullptr, 10);
      if (v >= 2) return static_cast<std::uint64_t>(v);
    }
    return std::uint64_t{1000000};
  }();
  return bound;
}

std::map<Integer, unsigned> factor_integer(const Integer& n) {
  if (n == 0) throw Error("cannot factor zero");
  Integer m = abs(n);
  std::map<Integer, unsigned> out;
  const std::uint64_t bound = prime_bound();
  for (Integer p = 2; p <= bound && p * p <= m; p == 2 ? p = 3 : p += 2) {
    while (m % p == 0) {
      ++out[p];
      m /= p;
    }
  }
  if (m > 1) {
    // m has no factor below min(bound, sqrt(m)), so it is prime iff m < bound^2.
    if (m >= Integer(bound) * Integer(bound))
      throw Error("factorization bound " + std::to_string(bound) +
                  " exceeded for " + m.str() +
                  " (set SOLVCOH_PRIME_BOUND to raise it)");
    ++out[m];
  }
  return out;
}

std::map<Integer, long> factor_rational(const Rational& q) {
  if (q == 0) throw Error("cannot factor zero");
  std::map<Integer, long> out;
  if (numerator(q) != 1 && numerator(q) != -1)
    for (const auto& [p, e] : factor_integer(numerator(q))) out[p] += static_cast<long>(e);
  if (denominator(q) != 1)
    for (const auto& [p, e] : factor_integer(denominator(q))) out[p] -= static_cast<long>(e);
  return out;
}

std::vector<Integer> divisors(const Integer& n) {
  std::vector<Integer> out{1};
  for (const auto& [p, e] : factor_integer(n)) {
    const std::size_t base = out.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  return out;
}

}  // namespace solvcoh
