#pragma once

#include "solvcoh/ce_complex.hpp"

namespace solvcoh {

/// Graded-commutative ring presented by structure constants in fixed
/// representative bases. products[(i,j)] has one row per basis pair (a, b)
/// (a major) holding the coordinates of rep_a^i * rep_b^j in H^{i+j}.
struct GradedRing {
  std::vector<std::size_t> dims;  // b_0 .. b_top
  std::map<std::pair<std::size_t, std::size_t>, RatMatrix> products;

  std::size_t top_degree() const { return dims.empty() ? 0 : dims.size() - 1; }

  /// Coordinates of the product of two classes given in basis coordinates.
  RatVec multiply(std::size_t i, const RatVec& a, std::size_t j, const RatVec& b) const;

  /// Graded commutativity, associativity on basis triples, unit in degree 0.
  void validate() const;
};

/// Cup-product ring of a trivial-coefficient complex in the deterministic
/// representative bases.
GradedRing ring_structure(const CochainComplex& c);

/// Isomorphism-necessary fingerprint of a graded ring.
struct RingFingerprint {
  std::vector<std::size_t> poincare;
  std::vector<std::size_t> exterior_h1_ranks;  // rank of wedge^a H^1 -> H^a
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> pairing_ranks;

  bool operator==(const RingFingerprint&) const = default;
  std::string to_string() const;
};

RingFingerprint ring_invariants(const GradedRing& r);

/// Whether the degreewise identity map is a ring isomorphism: equal dims and
/// identical structure constants.
bool identical_ring_presentation(const GradedRing& a, const GradedRing& b);

}  // namespace solvcoh
