#pragma once

#include "solvcoh/semidirect.hpp"

#include <optional>

namespace solvcoh {

/// Outcome of a decision procedure; UNKNOWN is an honest third verdict.
struct Certificate {
  enum class Verdict { Yes, No, Unknown };
  Verdict verdict = Verdict::Unknown;
  std::string witness;
  std::string justification;

  bool yes() const { return verdict == Verdict::Yes; }
  std::string verdict_string() const;
};

/// A generator of the torus part of the subgroup: either coordinates in the
/// split torus (Q*)^t_dim, or a declared integral automorphism of u for
/// mapping-torus towers on the group side.
struct TorusGenerator {
  RatVec coordinates;                          // coordinate mode when non-empty
  std::optional<RatMatrix> automorphism;       // matrix mode: action on u
  std::optional<RatMatrix> module_automorphism;  // action on M, identity if absent

  bool is_matrix_mode() const { return automorphism.has_value(); }
};

/// Desk-scale model of a Zariski dense subgroup Delta x| Gamma_T of the hull.
struct DenseSubgroupData {
  SemidirectPresentation hull;
  std::vector<RatVec> delta_logs;  // generators of Delta as log coordinates in u
  std::vector<TorusGenerator> torus_gens;
  std::vector<std::string> labels;

  std::size_t torus_rank_declared() const { return torus_gens.size(); }
};

/// Exact logarithm of a unipotent matrix; throws when m - I is not nilpotent.
RatMatrix unipotent_log(const RatMatrix& m);
RatMatrix unipotent_exp(const RatMatrix& n);

/// Expresses log(m) in the algebra basis through the stated faithful
/// representation (one nilpotent matrix per basis element).
RatVec unipotent_log_in_basis(const RatMatrix& m, const std::vector<RatMatrix>& representation);

/// Certificate that the Lie algebra generated by the delta logs is all of u.
struct DensityCertificate {
  Certificate cert;
  Subspace closure;                       // the Lie closure reached
  std::vector<std::string> witness_words;  // bracket words spanning the closure
};

DensityCertificate is_zariski_dense_unipotent(const DenseSubgroupData& d);

/// Zariski density of the subgroup generated by coordinate tuples in the
/// k-torus: dense iff no nonzero integer character is trivial on all
/// generators. Exact, via prime factorizations and signs.
Certificate torus_density_check(const std::vector<RatVec>& gens, std::size_t k);

/// Discreteness of the same subgroup in (R*)^k, decided on the exact cases
/// the exponent lattice supports; otherwise UNKNOWN.
Certificate torus_discreteness_check(const std::vector<RatVec>& gens, std::size_t k);

/// Combined discreteness verdict for the torus part of d, treating declared
/// automorphism generators as mapping-torus Z-steps.
Certificate subgroup_torus_discreteness(const DenseSubgroupData& d);

/// Ascending chain of ideals of u with rank-one quotients, produced by
/// descending through central lines exactly as in the dimension induction.
struct PolyrationalSeries {
  std::vector<Subspace> flags;              // dims 1..dim u
  std::vector<std::string> quotient_descriptors;  // "subgroup of Q" each step
};

PolyrationalSeries polyrational_series(const DenseSubgroupData& d);

/// dim u + number of torus generators, gated on the discreteness check.
std::size_t hirsch_length(const DenseSubgroupData& d);

}  // namespace solvcoh
