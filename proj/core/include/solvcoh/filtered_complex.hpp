#pragma once

#include "solvcoh/ce_complex.hpp"

namespace solvcoh {

/// Cochain complex with a decreasing filtration respected by the
/// differential, canonically bounded: F^0 C^n = C^n and F^{n+1} C^n = 0.
struct FilteredComplex {
  std::vector<std::size_t> dims;         // dim C^n for n = 0..top
  std::vector<RatMatrix> differentials;  // d^n: C^n -> C^{n+1}; the last is into 0
  std::vector<std::vector<Subspace>> filtration;  // filtration[n][p], p = 0..n+1

  std::size_t top_degree() const { return dims.empty() ? 0 : dims.size() - 1; }

  /// F^p C^n with the canonical clamping: full space for p <= 0, zero for
  /// p > n, and the zero space for n outside 0..top.
  Subspace filtered(long n, long p) const;

  const RatMatrix& differential(long n) const;
  std::size_t space_dim(long n) const;

  /// Decreasing, canonically bounded, d-compatible.
  void validate() const;
};

/// The filtration of C^*(g, M) by the number of torus indices: F^p is
/// spanned by basis cochains whose index subset contains at least p of the
/// torus indices (those >= u_dim in the u-first basis ordering).
FilteredComplex hs_filtration(const CochainComplex& cg, std::size_t u_dim);

}  // namespace solvcoh
