#pragma once

#include "solvcoh/matrix.hpp"

#include <optional>
#include <utility>

namespace solvcoh {

struct RrefResult {
  RatMatrix matrix;        // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column per pivot row, leftmost-first
  std::size_t rank = 0;
};

/// Reduced row echelon form with the deterministic leftmost-pivot rule.
RrefResult rref(const RatMatrix& m);

/// A linear subspace of Q^ambient, canonically represented by a basis in
/// reduced echelon form. Equality of subspaces is bitwise basis equality.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient_dim)
      : ambient_(ambient_dim), basis_(0, ambient_dim) {}

  /// Canonicalizes an arbitrary spanning set (rows) into an echelon basis.
  static Subspace span_of_rows(std::size_t ambient_dim, const RatMatrix& rows);
  static Subspace span_of_vectors(std::size_t ambient_dim, const std::vector<RatVec>& vecs);
  static Subspace full(std::size_t ambient_dim);
  static Subspace zero(std::size_t ambient_dim) { return Subspace(ambient_dim); }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const RatMatrix& basis() const { return basis_; }
  RatVec basis_vector(std::size_t i) const { return basis_.row(i); }

  bool contains(const RatVec& v) const;
  bool contains(const Subspace& other) const;
  bool is_full() const { return dim() == ambient_; }

  /// Coordinates of v in the echelon basis; nullopt when v is outside.
  std::optional<RatVec> coordinates_of(const RatVec& v) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

  friend Subspace subspace_sum(const Subspace& a, const Subspace& b);
  friend Subspace subspace_intersection(const Subspace& a, const Subspace& b);

 private:
  std::size_t ambient_ = 0;
  RatMatrix basis_;  // rows, in reduced echelon form
};

/// Basis of {v : m v = 0}, canonical echelon form; dim = cols - rank.
Subspace kernel_basis(const RatMatrix& m);

/// Basis of the column space; dim = rank.
Subspace image_basis(const RatMatrix& m);

/// Representative vectors projecting to a basis of big/small, chosen by
/// greedy completion of the small basis inside big's echelon basis.
/// Throws when small is not contained in big, naming the offending vector.
std::vector<RatVec> quotient_basis(const Subspace& big, const Subspace& small);

/// Solves for x with (columns of A) * x = b; nullopt when b is outside the
/// column span. Solution is the deterministic one produced by RREF.
std::optional<RatVec> solve_in_column_span(const RatMatrix& a, const RatVec& b);

/// Inverse of a square matrix; throws when singular.
RatMatrix inverse(const RatMatrix& m);

/// Joint eigenspace decomposition of pairwise commuting matrices, each
/// diagonalizable over Q with rational eigenvalues. Weights are listed in
/// lexicographic order; the eigenspaces are independent and sum to Q^n.
/// Throws "not Q-split" when an operator has an irrational or defective
/// spectrum, and an error naming the indices of a non-commuting pair.
std::vector<std::pair<RatVec, Subspace>> simultaneous_eigenspaces(
    const std::vector<RatMatrix>& ops, std::size_t ambient_dim);

/// Distinct rational eigenvalues of a Q-diagonalizable matrix, ascending.
/// Throws "not Q-split" if m is not diagonalizable over Q.
RatVec rational_spectrum(const RatMatrix& m);

bool is_diagonalizable_over_q(const RatMatrix& m);

/// Characteristic polynomial, coefficients ascending (constant term first),
/// monic of degree n.
RatVec characteristic_polynomial(const RatMatrix& m);

}  // namespace solvcoh
