#pragma once

#include "solvcoh/filtered_complex.hpp"
#include "solvcoh/group_cohomology.hpp"

namespace solvcoh {

/// One subquotient cell E_r^{pq}, stored as explicit representative vectors
/// inside the original cochain coordinates, with the numerator and
/// denominator subspaces kept for exact membership tests.
struct PageCell {
  std::size_t p = 0, q = 0;
  std::size_t dim = 0;
  RatMatrix representatives;  // rows, in C^{p+q} coordinates
  Subspace numerator;         // Z_r^{pq}
  Subspace denominator;       // boundaries plus deeper filtration
};

struct Page {
  std::size_t r = 0;
  std::map<std::pair<std::size_t, std::size_t>, PageCell> cells;
  // d_r^{pq}: coordinates of d(rep) in the target cell, one column per rep.
  std::map<std::pair<std::size_t, std::size_t>, RatMatrix> differentials;

  const PageCell* cell(std::size_t p, std::size_t q) const;
  std::size_t cell_dim(std::size_t p, std::size_t q) const;
};

struct SpectralSequence {
  FilteredComplex fc;
  std::vector<Page> pages;  // r = 0..r_max
  std::size_t stabilized_at = 0;
  std::vector<std::size_t> h_dims;                      // dim H^n of the total complex
  std::vector<std::vector<std::size_t>> abutment_dims;  // dim F^p H^n per n, p = 0..n+1

  const Page& infinity_page() const { return pages.back(); }
};

/// Computes pages 0..r_max (default: top degree + 2, past guaranteed
/// stabilization for a first-quadrant sequence).
SpectralSequence compute_pages(const FilteredComplex& fc, std::size_t r_max = 0);

struct CheckResult {
  bool pass = false;
  std::string detail;
};

/// E_2^{pq} must match the cohomology of the abelian torus algebra acting on
/// H^q(u, M), computed independently through the cochain pipeline, and (in
/// the Q-split regime) the binomial count of torus-annihilated classes.
CheckResult e2_identification(const SpectralSequence& ss, const SemidirectPresentation& hull,
                              const HullModule& hm);

/// Convergence: E_infinity subquotient dims sum to the Betti numbers of the
/// total complex degreewise and match the induced filtration subquotients.
CheckResult abutment_check(const SpectralSequence& ss);

/// Leibniz identity for the page products induced by the shuffle cup, checked
/// on every representative pair for r = 0, 1, 2 (trivial coefficients).
CheckResult page_multiplicativity_check(const SpectralSequence& ss, const CochainComplex& cg);

/// Comparison of the Hochschild-Serre E_2 with the group-side Koszul model
/// through the identity on H^q(u, M): componentwise isomorphism plus equal
/// abutment dimensions. Refuses when the hypothesis certificates fail.
struct ComparisonResult {
  bool pass = false;
  bool refused = false;
  std::string detail;
  std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>> e2_dims;
  std::vector<std::size_t> lie_dims;
  std::vector<std::size_t> group_dims;
};

ComparisonResult comparison(const SpectralSequence& ss_lie, const DenseSubgroupData& d,
                            const HullModule& hm);

/// Decomposition table of H^n(g, M) against the invariant classes tensored
/// with the torus exterior algebra, including the lifted-basis verification
/// and the sign rule on representative pairs.
struct KunnethRow {
  std::size_t i = 0, j = 0;
  std::size_t invariant_dim = 0;
  std::size_t exterior_dim = 0;
};

struct KunnethResult {
  bool pass = false;
  std::string detail;
  std::vector<KunnethRow> table;
  std::size_t expected_total = 0;  // sum of products
  std::size_t direct_dim = 0;      // dim H^n(g, M)
};

KunnethResult kunneth_decomposition(const SemidirectPresentation& hull, const HullModule& hm,
                                    std::size_t degree);

/// The ring map realized in bases: (annihilated class, torus exterior class)
/// maps to (same class, group exterior class). PASS iff the lifted classes
/// are a degreewise basis, the group and algebra invariant subspaces agree,
/// and products commute with the map on all basis pairs.
struct PhiResult {
  bool pass = false;
  bool refused = false;
  std::string detail;
  std::vector<std::size_t> dims;
};

PhiResult phi_ring_map(const SemidirectPresentation& hull, const DenseSubgroupData& d,
                       const HullModule& hm);

}  // namespace solvcoh
