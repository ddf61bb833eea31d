#pragma once

// Random exact models for property tests: nilpotent subalgebras of the
// strictly upper-triangular 4x4 algebra found by Lie closure, modules from
// flag quotients of the natural representation, and random rational basis
// changes to roughen the structure constants.

#include "solvcoh/lie_module.hpp"

#include <random>

namespace testsupport {

using namespace solvcoh;

inline Rational random_rational(std::mt19937& rng, int num_range = 3, int den_range = 2) {
  std::uniform_int_distribution<int> num(-num_range, num_range);
  std::uniform_int_distribution<int> den(1, den_range);
  return Rational(num(rng), den(rng));
}

inline RatMatrix random_strictly_upper(std::mt19937& rng, std::size_t k) {
  RatMatrix m(k, k);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = r + 1; c < k; ++c) m(r, c) = random_rational(rng);
  return m;
}

struct RandomNilpotent {
  LieAlgebra algebra;
  LieModule module;           // flag-quotient module, dim <= 3
  std::vector<RatMatrix> matrix_basis;  // 4x4 realizations of the basis
};

// Lie closure of a couple of random strictly upper 4x4 matrices; the span is
// closed under brackets, so Jacobi holds by construction and is re-verified.
inline RandomNilpotent random_nilpotent(std::mt19937& rng) {
  const std::size_t k = 4;
  std::vector<RatMatrix> basis;
  auto entries_vec = [&](const RatMatrix& m) {
    RatVec v;
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) v.push_back(m(r, c));
    return v;
  };
  auto in_span = [&](const RatMatrix& m) {
    if (basis.empty()) return m.is_zero();
    std::vector<RatVec> rows;
    for (const auto& b : basis) rows.push_back(entries_vec(b));
    return Subspace::span_of_vectors(k * k, rows).contains(entries_vec(m));
  };
  const std::size_t seeds = 2 + rng() % 2;
  for (std::size_t s = 0; s < seeds; ++s) {
    const RatMatrix m = random_strictly_upper(rng, k);
    if (!in_span(m)) basis.push_back(m);
  }
  if (basis.empty()) basis.push_back(random_strictly_upper(rng, k));
  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t count = basis.size();
    for (std::size_t i = 0; i < count && !grew; ++i)
      for (std::size_t j = 0; j < count && !grew; ++j) {
        const RatMatrix br = RatMatrix::commutator(basis[i], basis[j]);
        if (!in_span(br)) {
          basis.push_back(br);
          grew = true;
        }
      }
  }

  const std::size_t dim = basis.size();
  RandomNilpotent out;
  out.matrix_basis = basis;
  out.algebra = LieAlgebra(dim, {});
  // Structure constants by solving in the flattened span.
  RatMatrix columns(k * k, dim);
  for (std::size_t b = 0; b < dim; ++b) {
    const RatVec v = entries_vec(basis[b]);
    for (std::size_t r = 0; r < k * k; ++r) columns(r, b) = v[r];
  }
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j) {
      const auto coords =
          solve_in_column_span(columns, entries_vec(RatMatrix::commutator(basis[i], basis[j])));
      out.algebra.set_bracket(i, j, *coords);
    }

  // Module: quotient of the natural Q^4 by the invariant flag span(e_0..e_c).
  const std::size_t cut = 1 + rng() % 3;  // module dim 4 - cut in 1..3
  const std::size_t mdim = k - cut;
  std::vector<RatMatrix> actions;
  for (std::size_t b = 0; b < dim; ++b) {
    RatMatrix a(mdim, mdim);
    for (std::size_t r = 0; r < mdim; ++r)
      for (std::size_t c = 0; c < mdim; ++c) a(r, c) = basis[b](cut + r, cut + c);
    actions.push_back(std::move(a));
  }
  out.module = LieModule(mdim, actions);
  return out;
}

// Random rational change of basis applied to an algebra and a module over it.
inline void random_basis_change(std::mt19937& rng, LieAlgebra& g, LieModule& m) {
  const std::size_t n = g.dim();
  RatMatrix p = RatMatrix::identity(n);
  // Product of random elementary operations keeps p invertible.
  for (int step = 0; step < 6; ++step) {
    const std::size_t i = rng() % n, j = rng() % n;
    if (i == j) continue;
    RatMatrix e = RatMatrix::identity(n);
    e(i, j) = random_rational(rng, 2, 1);
    p = p * e;
  }
  const RatMatrix p_inv = inverse(p);
  LieAlgebra changed(n, {});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const RatVec br = g.bracket(p.col(i), p.col(j));
      changed.set_bracket(i, j, p_inv.apply(br));
    }
  std::vector<RatMatrix> actions;
  for (std::size_t i = 0; i < n; ++i) actions.push_back(m.action_of(p.col(i)));
  g = std::move(changed);
  m = LieModule(m.dim(), actions);
}

inline RatVec random_cochain(std::mt19937& rng, std::size_t dim) {
  RatVec v(dim);
  for (auto& x : v) x = random_rational(rng);
  return v;
}

}  // namespace testsupport
