#pragma once

#include "solvcoh/semidirect.hpp"

#include <cstdint>

namespace solvcoh {

/// Sorted index subset of the algebra basis, encoded as a bitmask.
using Mask = std::uint32_t;

int popcount_below(Mask mask, std::size_t index);
std::vector<std::size_t> mask_elements(Mask mask);

/// Cochain complex of alternating multilinear maps on a Lie algebra with
/// values in a module. Basis of C^n: module basis x n-subsets of the algebra
/// basis, module index major, subsets ordered by bitmask value. Immutable
/// after construction; d^{n+1} o d^n = 0 is verified at build time.
class CochainComplex {
 public:
  CochainComplex() = default;

  const LieAlgebra& algebra() const { return h_; }
  const LieModule& module() const { return m_; }
  std::size_t top_degree() const { return h_.dim(); }

  /// dim C^n = dim M * C(dim h, n); zero outside 0..dim h.
  std::size_t space_dim(long n) const;

  /// Subsets of size n, ordered by bitmask value.
  const std::vector<Mask>& subsets(std::size_t n) const;
  std::size_t subset_position(std::size_t n, Mask mask) const;

  std::size_t basis_index(std::size_t n, std::size_t module_index, Mask mask) const;

  /// d^n : C^n -> C^{n+1} (a rows(C^{n+1}) x cols(C^n) matrix); the matrix is
  /// empty-shaped outside 0..dim h.
  const RatMatrix& differential(std::size_t n) const;

  /// Value of a cochain on a basis subset, as a module coordinate vector.
  RatVec value_at(const RatVec& cochain, std::size_t degree, Mask mask) const;

  friend CochainComplex build_complex(const LieAlgebra& h, const LieModule& m);

 private:
  LieAlgebra h_;
  LieModule m_;
  std::vector<std::vector<Mask>> subsets_;
  std::vector<std::map<Mask, std::size_t>> positions_;
  std::vector<RatMatrix> differentials_;
};

/// Builds the complex; validates the module law and d^2 = 0.
CochainComplex build_complex(const LieAlgebra& h, const LieModule& m);

/// Cohomology in one degree: representatives chosen deterministically by the
/// greedy quotient rule inside the echelon kernel basis.
struct CohomologySpace {
  std::size_t degree = 0;
  std::size_t dim = 0;
  RatMatrix representatives;  // rows = representative cocycles in C^degree coordinates
  Subspace kernel;            // Ker d^degree
  Subspace image;             // Im d^{degree-1}
};

/// Degrees above dim h yield the canonical zero space; negative degrees are
/// rejected.
CohomologySpace cohomology(const CochainComplex& c, long degree);

std::vector<std::size_t> betti_numbers(const CochainComplex& c);

/// Matrix of the cochain-level action of the ambient basis element with the
/// given index on C^n(h, M):
///   (X.phi)(Y_1..Y_n) = X.phi(Y_1..Y_n) - sum_i phi(Y_1,..,[X,Y_i],..,Y_n).
/// The algebra of the complex must sit in `ambient` as an ideal spanned by
/// the initial basis vectors, and `ambient_module` must restrict to the
/// complex's module.
RatMatrix cochain_action_matrix(const CochainComplex& c, std::size_t degree,
                                const LieAlgebra& ambient, const LieModule& ambient_module,
                                const RatVec& ambient_element);

RatMatrix cochain_action_matrix_basis(const CochainComplex& c, std::size_t degree,
                                      const LieAlgebra& ambient,
                                      const LieModule& ambient_module,
                                      std::size_t ambient_basis_index);

/// Applies the displayed formula to a single cochain.
RatVec ambient_action(const RatVec& ambient_element, const RatVec& cochain, std::size_t degree,
                      const CochainComplex& c, const LieAlgebra& ambient,
                      const LieModule& ambient_module);

/// Matrix of the action induced on H^degree by a cochain-level operator that
/// commutes with d. Column k holds the coordinates of op(rep_k) in the
/// representative basis modulo coboundaries.
RatMatrix induced_action(const CochainComplex& c, const CohomologySpace& hn,
                         const RatMatrix& cochain_op);

/// Torus-annihilated part of the cohomology of C^*(h, M) under the ambient
/// algebra: both as a subspace of H^n (joint kernel of the induced actions)
/// and as cochain-level annihilated representatives from the joint-kernel
/// subcomplex. The two routes must agree in the Q-split regime.
struct InvariantSpace {
  std::size_t degree = 0;
  std::size_t dim = 0;
  RatMatrix class_coords;  // rows = vectors in H^degree representative coordinates
  RatMatrix cochain_reps;  // rows = annihilated cocycles in C^degree coordinates
};

std::vector<InvariantSpace> invariant_cohomology(const CochainComplex& c,
                                                 const LieAlgebra& ambient,
                                                 const LieModule& ambient_module);

/// Bilinear pairing M x N -> P given on basis pairs.
struct Pairing {
  std::size_t m_dim = 1, n_dim = 1, p_dim = 1;
  std::vector<std::vector<RatVec>> table;  // table[i][j] in P coordinates

  static Pairing scalar();                            // Q x Q -> Q, multiplication
  static Pairing module_times_q(std::size_t m_dim);   // M x Q -> M, (v, a) -> a v
  static Pairing q_times_module(std::size_t m_dim);   // Q x M -> M, (a, v) -> a v

  RatVec pair(const RatVec& mv, const RatVec& nv) const;
};

/// Checks X.(m u n) = (X.m) u n + m u (X.n) on module bases for every
/// algebra basis element.
void validate_pairing(const Pairing& pr, const LieModule& m, const LieModule& n,
                      const LieModule& p);

/// Shuffle cup product of an i-cochain (values in M) and a j-cochain (values
/// in N) through the pairing, yielding an (i+j)-cochain with values in P.
/// Degree overflow returns the zero cochain. The pairing law is verified by
/// default; batch callers may skip it after validating once.
RatVec cup(const CochainComplex& cm, const RatVec& phi, std::size_t i, const CochainComplex& cn,
           const RatVec& psi, std::size_t j, const CochainComplex& cp, const Pairing& pr,
           bool check_pairing = true);

/// Cup product for trivial coefficients on a single complex.
RatVec cup_trivial(const CochainComplex& c, const RatVec& phi, std::size_t i, const RatVec& psi,
                   std::size_t j);

}  // namespace solvcoh
