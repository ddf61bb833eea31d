#include "solvcoh/semidirect.hpp"

namespace solvcoh {

void SemidirectPresentation::validate() const {
  if (derivations.size() != t_dim)
    throw Error("need one derivation per torus basis element");
  const JacobiReport jac = validate_jacobi(u);
  if (!jac.ok) throw Error("unipotent part is not a Lie algebra: " + jac.to_string());
  if (!is_nilpotent(u)) throw Error("unipotent part is not nilpotent");
  const std::size_t n = u.dim();
  for (std::size_t a = 0; a < derivations.size(); ++a) {
    const RatMatrix& d = derivations[a];
    if (d.rows() != n || d.cols() != n)
      throw Error("derivation " + std::to_string(a) + " has wrong shape");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        RatVec ei(n, Rational(0)), ej(n, Rational(0));
        ei[i] = 1;
        ej[j] = 1;
        const RatVec lhs = d.apply(u.bracket_basis(i, j));
        const RatVec rhs =
            vec_add(u.bracket(d.apply(ei), ej), u.bracket(ei, d.apply(ej)));
        if (lhs != rhs)
          throw Error("derivation law fails for derivation " + std::to_string(a) +
                      " on basis pair (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    for (std::size_t b = a + 1; b < derivations.size(); ++b)
      if (!RatMatrix::commutator(derivations[a], derivations[b]).is_zero())
        throw Error("derivations " + std::to_string(a) + " and " + std::to_string(b) +
                    " do not commute");
    if (!is_diagonalizable_over_q(d))
      throw Error("not Q-split: derivation " + std::to_string(a) +
                  " is not diagonalizable over Q");
  }
}

LieAlgebra semidirect(const SemidirectPresentation& p) {
  p.validate();
  const std::size_t n = p.u.dim();
  const std::size_t total = p.total_dim();
  std::vector<std::string> names = p.u.basis_names();
  for (std::size_t a = 0; a < p.t_dim; ++a) names.push_back("t" + std::to_string(a));
  LieAlgebra g(total, names);
  auto embed = [&](const RatVec& v) {
    RatVec out(total, Rational(0));
    std::copy(v.begin(), v.end(), out.begin());
    return out;
  };
  for (const auto& [key, value] : p.u.brackets())
    g.set_bracket(key.first, key.second, embed(value));
  for (std::size_t a = 0; a < p.t_dim; ++a)
    for (std::size_t i = 0; i < n; ++i) {
      RatVec ei(n, Rational(0));
      ei[i] = 1;
      // [u_i, t_a] = -derivation_a(u_i) in the i < n + a storage slot.
      g.set_bracket(i, n + a, embed(vec_scale(-1, p.derivations[a].apply(ei))));
    }
  const JacobiReport jac = validate_jacobi(g);
  if (!jac.ok) throw Error("semidirect product fails Jacobi: " + jac.to_string());
  return g;
}

std::vector<std::pair<RatVec, Subspace>> weight_decomposition(const SemidirectPresentation& p) {
  p.validate();
  return simultaneous_eigenspaces(p.derivations, p.u.dim());
}

LieModule semidirect_module(const SemidirectPresentation& p, const LieModule& u_module,
                            const std::vector<RatMatrix>& t_actions) {
  if (t_actions.size() != p.t_dim)
    throw Error("need one torus action matrix per torus basis element");
  std::vector<RatMatrix> actions;
  actions.reserve(p.total_dim());
  if (u_module.algebra_dim() != p.u.dim())
    throw Error("module is not over the unipotent part");
  for (const auto& a : u_module.actions()) actions.push_back(a);
  for (const auto& a : t_actions) {
    if (a.rows() != u_module.dim() || a.cols() != u_module.dim())
      throw Error("torus action matrix has wrong shape");
    actions.push_back(a);
  }
  return LieModule(u_module.dim(), std::move(actions));
}

}  // namespace solvcoh
