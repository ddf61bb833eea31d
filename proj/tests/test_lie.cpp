#include "solvcoh/semidirect.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace solvcoh;

namespace {

SemidirectPresentation bs_hull() {
  SemidirectPresentation p;
  p.u = LieAlgebra::abelian(1);
  p.t_dim = 1;
  p.derivations = {RatMatrix{{Rational(1)}}};
  return p;
}

SemidirectPresentation heis_hull() {
  // Basis ordering (x, z, y) so the derivation is diag(1, 2, 1).
  SemidirectPresentation p;
  p.u = LieAlgebra(3, {"x", "z", "y"});
  p.u.set_bracket(0, 2, RatVec{0, 1, 0});
  p.t_dim = 1;
  p.derivations = {RatMatrix::diagonal({1, 2, 1})};
  return p;
}

}  // namespace

TEST_CASE("jacobi validation") {
  CHECK(validate_jacobi(LieAlgebra::abelian(3)).ok);
  CHECK(validate_jacobi(LieAlgebra::heisenberg3()).ok);
  SUBCASE("corrupted heisenberg fails at the witness triple") {
    // Note [x, z] = y would still satisfy Jacobi; [x, z] = x does not.
    LieAlgebra bad = LieAlgebra::heisenberg3();
    bad.set_bracket(0, 2, RatVec{1, 0, 0});
    const JacobiReport report = validate_jacobi(bad);
    REQUIRE_FALSE(report.ok);
    CHECK(report.i == 0);
    CHECK(report.j == 1);
    CHECK(report.k == 2);
    CHECK_FALSE(vec_is_zero(report.residual));
  }
}

TEST_CASE("semidirect products") {
  SUBCASE("bs hull is Q x| Q with [t, u] = u") {
    const LieAlgebra g = semidirect(bs_hull());
    CHECK(g.dim() == 2);
    CHECK(g.bracket_basis(1, 0) == RatVec{Rational(1), Rational(0)});
    CHECK(validate_jacobi(g).ok);
  }
  SUBCASE("heis hull is 4-dimensional and solvable, not nilpotent") {
    const LieAlgebra g = semidirect(heis_hull());
    CHECK(g.dim() == 4);
    CHECK(validate_jacobi(g).ok);
    CHECK(is_solvable(g));
    CHECK_FALSE(is_nilpotent(g));
  }
  SUBCASE("empty torus reproduces u") {
    SemidirectPresentation p;
    p.u = LieAlgebra::abelian(2);
    const LieAlgebra g = semidirect(p);
    CHECK(g.dim() == 2);
    CHECK(g.brackets().empty());
  }
  SUBCASE("u block of the product reproduces u's structure constants") {
    const LieAlgebra g = semidirect(heis_hull());
    const LieAlgebra u = heis_hull().u;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j) {
        const RatVec full = g.bracket_basis(i, j);
        const RatVec own = u.bracket_basis(i, j);
        for (std::size_t kk = 0; kk < 3; ++kk) CHECK(full[kk] == own[kk]);
        CHECK(full[3] == 0);
      }
  }
  SUBCASE("derivation law violations are rejected") {
    SemidirectPresentation p;
    p.u = LieAlgebra::heisenberg3();
    p.t_dim = 1;
    p.derivations = {RatMatrix::diagonal({1, 1, 1})};  // not a derivation of h3
    CHECK_THROWS_WITH_AS(semidirect(p), doctest::Contains("derivation law"), Error);
  }
  SUBCASE("non-commuting derivations are rejected") {
    SemidirectPresentation p;
    p.u = LieAlgebra::abelian(2);
    p.t_dim = 2;
    p.derivations = {RatMatrix{{Rational(1), Rational(0)}, {Rational(0), Rational(2)}},
                     RatMatrix{{Rational(0), Rational(1)}, {Rational(1), Rational(0)}}};
    CHECK_THROWS_WITH_AS(semidirect(p), doctest::Contains("commute"), Error);
  }
  SUBCASE("non-Q-split derivations are rejected") {
    SemidirectPresentation p;
    p.u = LieAlgebra::abelian(2);
    p.t_dim = 1;
    p.derivations = {RatMatrix{{Rational(2), Rational(1)}, {Rational(1), Rational(1)}}};
    CHECK_THROWS_WITH_AS(semidirect(p), doctest::Contains("not Q-split"), Error);
  }
}

TEST_CASE("series") {
  SUBCASE("heisenberg lower central series has step length 2") {
    const auto lcs = lower_central_series(LieAlgebra::heisenberg3());
    REQUIRE(lcs.size() == 3);
    CHECK(lcs[0].dim() == 3);
    CHECK(lcs[1].dim() == 1);
    CHECK(lcs[1].basis_vector(0) == RatVec{Rational(0), Rational(0), Rational(1)});
    CHECK(lcs[2].dim() == 0);
  }
  SUBCASE("abelian series stops at once") {
    const auto lcs = lower_central_series(LieAlgebra::abelian(2));
    REQUIRE(lcs.size() == 2);
    CHECK(lcs[1].dim() == 0);
  }
  SUBCASE("bs hull: derived length 2, central series stabilizes at u") {
    const LieAlgebra g = semidirect(bs_hull());
    const auto derived = derived_series(g);
    REQUIRE(derived.size() == 3);
    CHECK(derived[1].dim() == 1);
    CHECK(derived[2].dim() == 0);
    const auto lcs = lower_central_series(g);
    CHECK(lcs.back().dim() == 1);  // stabilizes at span{u}
    CHECK_FALSE(is_nilpotent(g));
    CHECK(is_solvable(g));
  }
}

TEST_CASE("weight decompositions") {
  SUBCASE("bs hull has the single weight 1") {
    const auto dec = weight_decomposition(bs_hull());
    REQUIRE(dec.size() == 1);
    CHECK(dec[0].first == RatVec{Rational(1)});
    CHECK(dec[0].second.dim() == 1);
  }
  SUBCASE("heis hull splits into weights 1 and 2") {
    const auto dec = weight_decomposition(heis_hull());
    REQUIRE(dec.size() == 2);
    CHECK(dec[0].first == RatVec{Rational(1)});
    CHECK(dec[0].second.dim() == 2);
    CHECK(dec[1].first == RatVec{Rational(2)});
    CHECK(dec[1].second.dim() == 1);
  }
  SUBCASE("empty torus gives the single empty weight") {
    SemidirectPresentation p;
    p.u = LieAlgebra::abelian(3);
    const auto dec = weight_decomposition(p);
    REQUIRE(dec.size() == 1);
    CHECK(dec[0].first.empty());
    CHECK(dec[0].second.is_full());
  }
  SUBCASE("weight space dims sum to dim u") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
      SemidirectPresentation p;
      p.u = LieAlgebra::abelian(3);
      p.t_dim = 2;
      std::uniform_int_distribution<int> w(-2, 2);
      p.derivations = {RatMatrix::diagonal({w(rng), w(rng), w(rng)}),
                       RatMatrix::diagonal({w(rng), w(rng), w(rng)})};
      std::size_t total = 0;
      for (const auto& [weight, space] : weight_decomposition(p)) total += space.dim();
      CHECK(total == 3);
    }
  }
}

TEST_CASE("module validation") {
  const LieAlgebra h3 = LieAlgebra::heisenberg3();
  SUBCASE("trivial module always validates") {
    CHECK_NOTHROW(LieModule::trivial(h3, 2).validate_over(h3));
  }
  SUBCASE("the natural 3-dimensional module of h3") {
    // x -> E12, y -> E23, z -> E13 on Q^3.
    RatMatrix ex(3, 3), ey(3, 3), ez(3, 3);
    ex(0, 1) = 1;
    ey(1, 2) = 1;
    ez(0, 2) = 1;
    const LieModule m(3, {ex, ey, ez});
    CHECK_NOTHROW(m.validate_over(h3));
  }
  SUBCASE("wrong action count is rejected") {
    CHECK_THROWS_AS(LieModule::trivial(LieAlgebra::abelian(2)).validate_over(h3), Error);
  }
  SUBCASE("broken module law is rejected with the pair") {
    RatMatrix ex(2, 2), ey(2, 2), ez(2, 2);
    ex(0, 1) = 1;
    ey(1, 0) = 1;  // [ex, ey] != 0 = action of z
    const LieModule m(2, {ex, ey, ez});
    CHECK_THROWS_WITH_AS(m.validate_over(h3), doctest::Contains("(0, 1)"), Error);
  }
}

TEST_CASE("random nilpotent models validate") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    auto model = testsupport::random_nilpotent(rng);
    CHECK(validate_jacobi(model.algebra).ok);
    CHECK(is_nilpotent(model.algebra));
    CHECK_NOTHROW(model.module.validate_over(model.algebra));
    testsupport::random_basis_change(rng, model.algebra, model.module);
    CHECK(validate_jacobi(model.algebra).ok);
    CHECK(is_nilpotent(model.algebra));
    CHECK_NOTHROW(model.module.validate_over(model.algebra));
  }
}
