#pragma once

#include "solvcoh/lie_algebra.hpp"

namespace solvcoh {

/// Finite-dimensional module over a Lie algebra, one action matrix per
/// algebra basis element. The trivial module has all-zero action.
class LieModule {
 public:
  LieModule() = default;
  LieModule(std::size_t dim, std::vector<RatMatrix> actions);

  static LieModule trivial(const LieAlgebra& g, std::size_t dim = 1);

  std::size_t dim() const { return dim_; }
  std::size_t algebra_dim() const { return actions_.size(); }
  const RatMatrix& action(std::size_t basis_index) const { return actions_[basis_index]; }
  const std::vector<RatMatrix>& actions() const { return actions_; }

  /// Action of a general algebra element given by coordinates.
  RatMatrix action_of(const RatVec& x) const;

  bool is_trivial() const;

  /// Checks action([e_i, e_j]) = [action(e_i), action(e_j)] on all pairs.
  /// Throws naming the first violating pair.
  void validate_over(const LieAlgebra& g) const;

  /// Restriction to the first `count` basis elements of the algebra.
  LieModule restrict_to_initial(std::size_t count) const;

 private:
  std::size_t dim_ = 0;
  std::vector<RatMatrix> actions_;
};

}  // namespace solvcoh
