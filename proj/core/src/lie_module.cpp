#include "solvcoh/lie_module.hpp"

namespace solvcoh {

LieModule::LieModule(std::size_t dim, std::vector<RatMatrix> actions)
    : dim_(dim), actions_(std::move(actions)) {
  for (const auto& a : actions_)
    if (a.rows() != dim_ || a.cols() != dim_)
      throw Error("module action matrix has wrong shape");
}

LieModule LieModule::trivial(const LieAlgebra& g, std::size_t dim) {
  return LieModule(dim, std::vector<RatMatrix>(g.dim(), RatMatrix::zero(dim, dim)));
}

RatMatrix LieModule::action_of(const RatVec& x) const {
  if (x.size() != actions_.size()) throw Error("element length does not match algebra dimension");
  RatMatrix out(dim_, dim_);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) out = out + x[i] * actions_[i];
  return out;
}

bool LieModule::is_trivial() const {
  for (const auto& a : actions_)
    if (!a.is_zero()) return false;
  return true;
}

void LieModule::validate_over(const LieAlgebra& g) const {
  if (actions_.size() != g.dim())
    throw Error("module has " + std::to_string(actions_.size()) +
                " action matrices but the algebra has dimension " + std::to_string(g.dim()));
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = i + 1; j < g.dim(); ++j) {
      const RatMatrix lhs = action_of(g.bracket_basis(i, j));
      const RatMatrix rhs = RatMatrix::commutator(actions_[i], actions_[j]);
      if (!(lhs == rhs))
        throw Error("module law fails on basis pair (" + std::to_string(i) + ", " +
                    std::to_string(j) + ")");
    }
}

LieModule LieModule::restrict_to_initial(std::size_t count) const {
  if (count > actions_.size()) throw Error("restriction exceeds algebra dimension");
  return LieModule(dim_, std::vector<RatMatrix>(actions_.begin(), actions_.begin() + count));
}

}  // namespace solvcoh
