#include "solvcoh/group_cohomology.hpp"

#include <doctest.h>

using namespace solvcoh;

namespace {

DenseSubgroupData bs_model(long n) {
  DenseSubgroupData d;
  d.hull.u = LieAlgebra(1, {"u"});
  d.hull.t_dim = 1;
  d.hull.derivations = {RatMatrix{{Rational(1)}}};
  d.delta_logs = {RatVec{1}};
  TorusGenerator t;
  t.coordinates = RatVec{Rational(n)};
  d.torus_gens = {t};
  return d;
}

DenseSubgroupData heis_model(long n) {
  DenseSubgroupData d;
  d.hull.u = LieAlgebra(3, {"x", "z", "y"});
  d.hull.u.set_bracket(0, 2, RatVec{0, 1, 0});
  d.hull.t_dim = 1;
  d.hull.derivations = {RatMatrix::diagonal({1, 2, 1})};
  d.delta_logs = {RatVec{1, 0, 0}, RatVec{0, 0, 1}};
  TorusGenerator t;
  t.coordinates = RatVec{Rational(n)};
  d.torus_gens = {t};
  return d;
}

DenseSubgroupData anosov_model() {
  DenseSubgroupData d;
  d.hull.u = LieAlgebra::abelian(2);
  d.hull.t_dim = 1;
  d.hull.derivations = {RatMatrix{{Rational(2), Rational(1)}, {Rational(1), Rational(1)}}};
  d.delta_logs = {RatVec{1, 0}, RatVec{0, 1}};
  TorusGenerator t;
  t.automorphism = RatMatrix{{Rational(2), Rational(1)}, {Rational(1), Rational(1)}};
  d.torus_gens = {t};
  return d;
}

}  // namespace

TEST_CASE("torus generator actions on the unipotent cohomology") {
  SUBCASE("heisenberg tower eigenvalues are 1, 1/2, 1/8, 1/16") {
    const DenseSubgroupData d = heis_model(2);
    const auto ug = unipotent_group_cohomology(d, HullModule::trivial(d.hull));
    REQUIRE(ug.spaces.size() == 4);
    CHECK(ug.spaces[0].dim == 1);
    CHECK(ug.spaces[1].dim == 2);
    CHECK(ug.spaces[2].dim == 2);
    CHECK(ug.spaces[3].dim == 1);
    // Degreewise eigenvalues (1), (1/2, 1/2), (1/8, 1/8), (1/16): the
    // distinct spectra below, with scalar action matrices in degrees 1, 2.
    const RatVec spectra[] = {RatVec{1}, RatVec{Rational(1, 2)}, RatVec{Rational(1, 8)},
                              RatVec{Rational(1, 16)}};
    for (std::size_t q = 0; q <= 3; ++q) {
      const RatMatrix& action = ug.actions[q][0];
      CHECK(is_diagonalizable_over_q(action));
      CHECK(rational_spectrum(action) == spectra[q]);
      CHECK(action == spectra[q][0] * RatMatrix::identity(ug.spaces[q].dim));
    }
  }
  SUBCASE("bs model: H^1 action is multiplication by 1/2") {
    const DenseSubgroupData d = bs_model(2);
    const auto ug = unipotent_group_cohomology(d, HullModule::trivial(d.hull));
    CHECK(ug.spaces[0].dim == 1);
    CHECK(ug.spaces[1].dim == 1);
    CHECK(ug.actions[1][0] == RatMatrix{{Rational(1, 2)}});
  }
  SUBCASE("no torus generators leave plain dims with no actions") {
    DenseSubgroupData d;
    d.hull.u = LieAlgebra::heisenberg3();
    d.delta_logs = {RatVec{1, 0, 0}, RatVec{0, 1, 0}};
    const auto ug = unipotent_group_cohomology(d, HullModule::trivial(d.hull));
    CHECK(ug.spaces[1].dim == 2);
    CHECK(ug.actions[1].empty());
  }
  SUBCASE("density is a precondition") {
    DenseSubgroupData d = heis_model(2);
    d.delta_logs = {RatVec{1, 0, 0}};
    CHECK_THROWS_WITH_AS(unipotent_group_cohomology(d, HullModule::trivial(d.hull)),
                         doctest::Contains("dense"), Error);
  }
}

TEST_CASE("koszul cohomology of commuting operators") {
  SUBCASE("an invertible shift kills everything") {
    const auto k = koszul_zk_cohomology(1, {RatMatrix{{Rational(2)}}});
    CHECK(k.dims == std::vector<std::size_t>{0, 0});
  }
  SUBCASE("the identity operator gives (1, 1)") {
    const auto k = koszul_zk_cohomology(1, {RatMatrix{{Rational(1)}}});
    CHECK(k.dims == std::vector<std::size_t>{1, 1});
  }
  SUBCASE("trivial Z^2 action gives binomial dims") {
    const auto k = koszul_zk_cohomology(
        1, {RatMatrix{{Rational(1)}}, RatMatrix{{Rational(1)}}});
    CHECK(k.dims == std::vector<std::size_t>{1, 2, 1});
  }
  SUBCASE("non-commuting operators are rejected") {
    const RatMatrix a{{Rational(1), Rational(1)}, {Rational(0), Rational(1)}};
    const RatMatrix b{{Rational(1), Rational(0)}, {Rational(1), Rational(1)}};
    CHECK_THROWS_WITH_AS(koszul_zk_cohomology(2, {a, b}), doctest::Contains("commute"), Error);
  }
  SUBCASE("euler characteristic vanishes when some shift is invertible") {
    const RatMatrix op = RatMatrix::diagonal({Rational(2), Rational(3), Rational(1, 5)});
    const auto k = koszul_zk_cohomology(3, {op});
    long chi = 0;
    for (std::size_t p = 0; p < k.dims.size(); ++p)
      chi += (p % 2 == 0 ? 1 : -1) * static_cast<long>(k.dims[p]);
    CHECK(chi == 0);
  }
}

TEST_CASE("wang towers") {
  SUBCASE("bs models collapse to Q[a]/(a^2)") {
    for (const long n : {2L, 3L, 5L}) {
      const DenseSubgroupData d = bs_model(n);
      const GroupCohModel model = wang_tower(d, HullModule::trivial(d.hull));
      CHECK(model.dims == std::vector<std::size_t>{1, 1, 0});
      REQUIRE(model.ring.has_value());
      CHECK(model.ring->dims == std::vector<std::size_t>{1, 1, 0});
      CHECK(model.all_steps_semisimple);
    }
  }
  SUBCASE("heisenberg tower dims (1, 1, 0, 0, 0)") {
    const DenseSubgroupData d = heis_model(2);
    const GroupCohModel model = wang_tower(d, HullModule::trivial(d.hull));
    CHECK(model.dims == std::vector<std::size_t>{1, 1, 0, 0, 0});
    REQUIRE(model.ring.has_value());
  }
  SUBCASE("anosov mapping torus dims (1, 1, 1, 1), ring omitted") {
    const DenseSubgroupData d = anosov_model();
    const GroupCohModel model = wang_tower(d, HullModule::trivial(d.hull));
    CHECK(model.dims == std::vector<std::size_t>{1, 1, 1, 1});
    CHECK_FALSE(model.all_steps_semisimple);
    CHECK_FALSE(model.ring.has_value());
    REQUIRE_FALSE(model.notes.empty());
  }
  SUBCASE("wang step dimension identity holds at every step") {
    const DenseSubgroupData d = heis_model(2);
    const GroupCohModel model = wang_tower(d, HullModule::trivial(d.hull));
    REQUIRE(model.steps.size() == 1);
    const WangStep& step = model.steps[0];
    for (std::size_t n = 0; n < model.dims.size(); ++n) {
      const std::size_t inv = n < step.invariant_dims.size() ? step.invariant_dims[n] : 0;
      const std::size_t coinv =
          (n >= 1 && n - 1 < step.coinvariant_dims.size()) ? step.coinvariant_dims[n - 1] : 0;
      CHECK(model.dims[n] == inv + coinv);
    }
    // Semisimple actions: invariants and coinvariants agree dimensionwise.
    CHECK(step.invariant_dims == step.coinvariant_dims);
  }
  SUBCASE("euler characteristic vanishes with at least one generator") {
    for (const auto& d : {bs_model(2), heis_model(3), anosov_model()}) {
      const GroupCohModel model = wang_tower(d, HullModule::trivial(d.hull));
      long chi = 0;
      for (std::size_t n = 0; n < model.dims.size(); ++n)
        chi += (n % 2 == 0 ? 1 : -1) * static_cast<long>(model.dims[n]);
      CHECK(chi == 0);
    }
  }
  SUBCASE("dims are independent of the generator iteration order") {
    DenseSubgroupData d;
    d.hull.u = LieAlgebra::abelian(2);
    d.hull.t_dim = 2;
    d.hull.derivations = {RatMatrix::diagonal({1, 0}), RatMatrix::diagonal({0, 1})};
    d.delta_logs = {RatVec{1, 0}, RatVec{0, 1}};
    TorusGenerator g1, g2;
    g1.coordinates = RatVec{2, 1};
    g2.coordinates = RatVec{1, 3};
    d.torus_gens = {g1, g2};
    const GroupCohModel forward = wang_tower(d, HullModule::trivial(d.hull));
    std::swap(d.torus_gens[0], d.torus_gens[1]);
    const GroupCohModel backward = wang_tower(d, HullModule::trivial(d.hull));
    CHECK(forward.dims == backward.dims);
  }
  SUBCASE("inverting a generator preserves the dims") {
    DenseSubgroupData d = bs_model(2);
    const GroupCohModel original = wang_tower(d, HullModule::trivial(d.hull));
    d.torus_gens[0].coordinates = RatVec{Rational(1, 2)};
    const GroupCohModel inverted = wang_tower(d, HullModule::trivial(d.hull));
    CHECK(original.dims == inverted.dims);
  }
  SUBCASE("discreteness is a precondition") {
    DenseSubgroupData d = bs_model(2);
    TorusGenerator extra;
    extra.coordinates = RatVec{3};
    d.torus_gens.push_back(extra);
    CHECK_THROWS_WITH_AS(wang_tower(d, HullModule::trivial(d.hull)),
                         doctest::Contains("discrete"), Error);
  }
}

TEST_CASE("comparison with the lie side") {
  const DenseSubgroupData d = bs_model(2);
  const GroupCohModel model = wang_tower(d, HullModule::trivial(d.hull));
  SUBCASE("matching dims and fingerprints pass") {
    LieSideSummary lie;
    lie.dims = {1, 1, 0};
    lie.fingerprint = model.fingerprint;
    CHECK(compare_with_lie(model, lie).pass);
  }
  SUBCASE("failure names the first mismatching degree") {
    LieSideSummary lie;
    lie.dims = {1, 2, 0};
    const CompareVerdict verdict = compare_with_lie(model, lie);
    CHECK_FALSE(verdict.pass);
    CHECK(verdict.detail.find("degree 1") != std::string::npos);
  }
}

TEST_CASE("weight module over the bs hull") {
  DenseSubgroupData d = bs_model(2);
  HullModule hm;
  RatMatrix u_act(2, 2), t_act(2, 2);
  u_act(0, 1) = 1;
  t_act(1, 1) = -1;
  hm.u_module = LieModule(2, {u_act});
  hm.t_actions = {t_act};
  const GroupCohModel model = wang_tower(d, hm);
  CHECK(model.dims == std::vector<std::size_t>{1, 1, 0});
  CHECK_FALSE(model.ring.has_value());  // ring only for trivial coefficients
}
