#pragma once

#include "solvcoh/linalg.hpp"

#include <map>
#include <string>

namespace solvcoh {

/// Report of a Jacobi-identity scan. Failure is data, not an exception.
struct JacobiReport {
  bool ok = true;
  std::size_t i = 0, j = 0, k = 0;  // first violating triple, when !ok
  RatVec residual;                  // [[ei,ej],ek] + [[ej,ek],ei] + [[ek,ei],ej]
  std::string to_string() const;
};

/// Finite-dimensional Lie algebra over Q given by structure constants.
/// Brackets are stored for i < j only; antisymmetry is structural.
class LieAlgebra {
 public:
  LieAlgebra() = default;
  LieAlgebra(std::size_t dim, std::vector<std::string> basis_names);

  static LieAlgebra abelian(std::size_t dim);
  /// The 3-dimensional Heisenberg algebra [x, y] = z with basis (x, y, z).
  static LieAlgebra heisenberg3();

  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& basis_names() const { return names_; }

  /// Defines [e_i, e_j] = value for i < j. Only nonzero brackets need setting.
  void set_bracket(std::size_t i, std::size_t j, RatVec value);

  /// Bracket of basis elements, any order of indices (antisymmetric fill).
  RatVec bracket_basis(std::size_t i, std::size_t j) const;

  /// Bilinear extension of the bracket to coordinate vectors.
  RatVec bracket(const RatVec& x, const RatVec& y) const;

  /// Stored nonzero brackets, key (i, j) with i < j.
  const std::map<std::pair<std::size_t, std::size_t>, RatVec>& brackets() const {
    return brackets_;
  }

  /// Adjoint action matrix ad(x): y -> [x, y].
  RatMatrix adjoint(const RatVec& x) const;

 private:
  std::size_t dim_ = 0;
  std::vector<std::string> names_;
  std::map<std::pair<std::size_t, std::size_t>, RatVec> brackets_;
};

JacobiReport validate_jacobi(const LieAlgebra& g);

/// Lower central series g = g_1 >= [g, g_1] >= ... until stabilization.
std::vector<Subspace> lower_central_series(const LieAlgebra& g);

/// Derived series g = g^(0) >= [g^(0), g^(0)] >= ... until stabilization.
std::vector<Subspace> derived_series(const LieAlgebra& g);

bool is_nilpotent(const LieAlgebra& g);
bool is_solvable(const LieAlgebra& g);

/// Span of all brackets [A, B] between two subspaces.
Subspace bracket_span(const LieAlgebra& g, const Subspace& a, const Subspace& b);

/// Center {x : [x, g] = 0}.
Subspace center(const LieAlgebra& g);

}  // namespace solvcoh
