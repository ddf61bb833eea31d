#pragma once

#include "solvcoh/lie_module.hpp"

namespace solvcoh {

/// Presentation of a solvable algebra u x| t: a nilpotent u, an abelian
/// torus algebra t of dimension t_dim, and one derivation of u per t basis
/// element. The derivations must commute pairwise and be diagonalizable
/// over Q; t itself is structural (no brackets are ever stored for it).
struct SemidirectPresentation {
  LieAlgebra u;
  std::size_t t_dim = 0;
  std::vector<RatMatrix> derivations;

  std::size_t total_dim() const { return u.dim() + t_dim; }

  /// Checks nilpotency of u, the derivation law on basis pairs, pairwise
  /// commutation, and Q-split (rational diagonalizable) spectra.
  void validate() const;
};

/// Builds the semidirect product with basis ordering u-first, then t.
/// Brackets: u-u from u, [t_a, u_i] = derivation_a(u_i), t-t = 0.
LieAlgebra semidirect(const SemidirectPresentation& p);

/// Joint weight decomposition of u under the derivations; weight vectors
/// have length t_dim and are listed in lexicographic order.
std::vector<std::pair<RatVec, Subspace>> weight_decomposition(const SemidirectPresentation& p);

/// Extends a module over u (or checks one over u x| t) to the semidirect
/// product basis ordering: u actions first, then t actions.
LieModule semidirect_module(const SemidirectPresentation& p, const LieModule& u_module,
                            const std::vector<RatMatrix>& t_actions);

}  // namespace solvcoh
