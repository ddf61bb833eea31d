#pragma once

#include "solvcoh/graded_ring.hpp"
#include "solvcoh/subgroup.hpp"

#include <optional>

namespace solvcoh {

/// Coefficient data for a hull: a module over u plus the torus actions,
/// assembling to a module over the semidirect product.
struct HullModule {
  LieModule u_module;
  std::vector<RatMatrix> t_actions;

  static HullModule trivial(const SemidirectPresentation& p);
  LieModule ambient_module(const SemidirectPresentation& p) const;
};

/// H^*(Gamma_U, M) computed through the restriction identification as
/// H^*(u, M), together with the action of each torus generator on the
/// representative basis of every degree.
struct UnipotentGroupCohomology {
  CochainComplex complex;
  std::vector<CohomologySpace> spaces;
  std::vector<std::vector<RatMatrix>> actions;  // actions[q][gen]
};

UnipotentGroupCohomology unipotent_group_cohomology(const DenseSubgroupData& d,
                                                    const HullModule& hm);

/// Koszul complex on the commuting operators (phi_1 - 1, ..., phi_k - 1),
/// computing H^*(Z^k, V); realized as the cochain complex of an abelian
/// algebra acting by phi_a - 1.
struct KoszulCohomology {
  std::vector<std::size_t> dims;
  std::vector<CohomologySpace> spaces;
  CochainComplex complex;
};

KoszulCohomology koszul_zk_cohomology(std::size_t v_dim, const std::vector<RatMatrix>& ops);

/// Invariant classes of H^*(u, M) under all generator actions, with chosen
/// representative cocycles, tensored with the exterior algebra on k
/// degree-1 generators. Cells of total degree n are ordered by exterior
/// degree p, then subset mask, then class index.
struct TensorModel {
  std::size_t k = 0;
  std::vector<RatMatrix> inv_class_coords;  // per u-degree, rows in H^q coordinates
  std::vector<RatMatrix> inv_reps;          // per u-degree, rows are cocycles in C^q
  struct Cell {
    std::size_t p = 0;
    Mask mask = 0;
    std::size_t cls = 0;
  };
  std::vector<std::vector<Cell>> basis;  // per total degree
  std::vector<std::size_t> dims;

  std::size_t u_degree(const Cell& cell, std::size_t total) const { return total - cell.p; }
};

TensorModel tensor_model(const UnipotentGroupCohomology& ug);

/// Sign of merging two disjoint exterior masks, and the combined Koszul sign
/// (-1)^{p1 * q2} used by the tensor product structure.
int merge_sign(Mask s1, Mask s2);

/// The model ring for trivial coefficients: structure constants of
/// (invariant subring of H^*(u, Q)) tensor (exterior algebra on k generators).
GradedRing tensor_model_ring(const TensorModel& model, const UnipotentGroupCohomology& ug);

struct WangStep {
  std::size_t generator_index = 0;
  std::vector<std::size_t> invariant_dims;
  std::vector<std::size_t> coinvariant_dims;
  bool semisimple = true;
};

/// Desk-scale model of H^*(Gamma, M) for Gamma = Gamma_U x| Z^k, obtained by
/// iterating the rank-one degeneration (invariants/coinvariants short exact
/// sequences) one generator at a time.
struct GroupCohModel {
  std::vector<std::size_t> dims;
  std::optional<GradedRing> ring;              // present in the semisimple regime
  std::optional<RingFingerprint> fingerprint;  // of the ring, when present
  bool all_steps_semisimple = true;
  std::vector<WangStep> steps;
  std::vector<std::string> notes;
};

GroupCohModel wang_tower(const DenseSubgroupData& d, const HullModule& hm);

struct LieSideSummary {
  std::vector<std::size_t> dims;
  std::optional<RingFingerprint> fingerprint;
};

struct CompareVerdict {
  bool pass = false;
  std::string detail;
};

/// Per-degree dimension comparison, plus fingerprint equality when both
/// rings are present. Failure names the first mismatching degree.
CompareVerdict compare_with_lie(const GroupCohModel& model, const LieSideSummary& lie);

}  // namespace solvcoh
