#include "solvcoh/filtered_complex.hpp"

#include <bit>

namespace solvcoh {

Subspace FilteredComplex::filtered(long n, long p) const {
  if (n < 0 || n > static_cast<long>(top_degree())) return Subspace::zero(0);
  const auto& per_degree = filtration[static_cast<std::size_t>(n)];
  if (p <= 0) return per_degree[0];
  if (p >= static_cast<long>(per_degree.size()))
    return Subspace::zero(dims[static_cast<std::size_t>(n)]);
  return per_degree[static_cast<std::size_t>(p)];
}

const RatMatrix& FilteredComplex::differential(long n) const {
  static const RatMatrix empty;
  if (n < 0 || n > static_cast<long>(top_degree())) return empty;
  return differentials[static_cast<std::size_t>(n)];
}

std::size_t FilteredComplex::space_dim(long n) const {
  if (n < 0 || n > static_cast<long>(top_degree())) return 0;
  return dims[static_cast<std::size_t>(n)];
}

void FilteredComplex::validate() const {
  if (dims.size() != differentials.size() || dims.size() != filtration.size())
    throw Error("filtered complex pieces have inconsistent lengths");
  for (std::size_t n = 0; n <= top_degree(); ++n) {
    const auto& per_degree = filtration[n];
    if (per_degree.empty() || per_degree[0].dim() != dims[n] ||
        per_degree[0].ambient_dim() != dims[n])
      throw Error("filtration is not canonically bounded below at degree " + std::to_string(n));
    if (per_degree.back().dim() != 0)
      throw Error("filtration is not canonically bounded above at degree " + std::to_string(n));
    for (std::size_t p = 0; p + 1 < per_degree.size(); ++p)
      if (!per_degree[p].contains(per_degree[p + 1]))
        throw Error("filtration is not decreasing at degree " + std::to_string(n));
    for (std::size_t p = 0; p < per_degree.size(); ++p)
      for (std::size_t i = 0; i < per_degree[p].dim(); ++i) {
        const RatVec image = differentials[n].apply(per_degree[p].basis_vector(i));
        if (!filtered(static_cast<long>(n) + 1, static_cast<long>(p)).contains(image) &&
            n < top_degree())
          throw Error("differential does not respect the filtration");
        if (n == top_degree() && !vec_is_zero(image))
          throw Error("top differential is not zero");
      }
  }
}

FilteredComplex hs_filtration(const CochainComplex& cg, std::size_t u_dim) {
  const std::size_t total = cg.algebra().dim();
  if (u_dim > total) throw Error("u block larger than the algebra");
  const std::size_t t_dim = total - u_dim;
  // Basis-convention guard: torus block abelian, u block an ideal.
  for (std::size_t a = u_dim; a < total; ++a)
    for (std::size_t b = a + 1; b < total; ++b)
      if (!vec_is_zero(cg.algebra().bracket_basis(a, b)))
        throw Error("wrong basis convention: torus block is not abelian");
  for (std::size_t a = 0; a < total; ++a)
    for (std::size_t b = 0; b < u_dim; ++b) {
      const RatVec br = cg.algebra().bracket_basis(a, b);
      for (std::size_t k = u_dim; k < total; ++k)
        if (br[k] != 0) throw Error("wrong basis convention: u block is not an ideal");
    }

  FilteredComplex fc;
  const Mask torus_mask = ((Mask{1} << t_dim) - 1) << u_dim;
  const std::size_t top = cg.top_degree();
  for (std::size_t n = 0; n <= top; ++n) {
    fc.dims.push_back(cg.space_dim(static_cast<long>(n)));
    fc.differentials.push_back(cg.differential(n));
    std::vector<Subspace> per_degree;
    const auto& subs = cg.subsets(n);
    const std::size_t mdim = cg.module().dim();
    for (std::size_t p = 0; p <= n + 1; ++p) {
      std::vector<RatVec> gens;
      for (std::size_t mi = 0; mi < mdim; ++mi)
        for (std::size_t sp = 0; sp < subs.size(); ++sp)
          if (static_cast<std::size_t>(std::popcount(subs[sp] & torus_mask)) >= p) {
            RatVec e(fc.dims[n], Rational(0));
            e[mi * subs.size() + sp] = 1;
            gens.push_back(std::move(e));
          }
      per_degree.push_back(Subspace::span_of_vectors(fc.dims[n], gens));
    }
    fc.filtration.push_back(std::move(per_degree));
  }
  fc.validate();
  return fc;
}

}  // namespace solvcoh
