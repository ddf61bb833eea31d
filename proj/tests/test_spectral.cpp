#include "solvcoh/spectral.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace solvcoh;

namespace {

SemidirectPresentation bs_hull() {
  SemidirectPresentation p;
  p.u = LieAlgebra(1, {"u"});
  p.t_dim = 1;
  p.derivations = {RatMatrix{{Rational(1)}}};
  return p;
}

SemidirectPresentation heis_hull() {
  SemidirectPresentation p;
  p.u = LieAlgebra(3, {"x", "z", "y"});
  p.u.set_bracket(0, 2, RatVec{0, 1, 0});
  p.t_dim = 1;
  p.derivations = {RatMatrix::diagonal({1, 2, 1})};
  return p;
}

DenseSubgroupData bs_model(long n) {
  DenseSubgroupData d;
  d.hull = bs_hull();
  d.delta_logs = {RatVec{1}};
  TorusGenerator t;
  t.coordinates = RatVec{Rational(n)};
  d.torus_gens = {t};
  return d;
}

DenseSubgroupData heis_model(long n) {
  DenseSubgroupData d;
  d.hull = heis_hull();
  d.delta_logs = {RatVec{1, 0, 0}, RatVec{0, 0, 1}};
  TorusGenerator t;
  t.coordinates = RatVec{Rational(n)};
  d.torus_gens = {t};
  return d;
}

SpectralSequence hull_sequence(const SemidirectPresentation& hull, const HullModule& hm) {
  const LieAlgebra g = semidirect(hull);
  const CochainComplex cg = build_complex(g, hm.ambient_module(hull));
  return compute_pages(hs_filtration(cg, hull.u.dim()));
}

// Degreewise-shifted block sum: block b contributes its degree-(n - b) space
// to C^n and sits at filtration level b. Canonically bounded, d-compatible,
// and the abutment is the shifted sum of the blocks' cohomologies.
FilteredComplex block_filtered(const std::vector<CochainComplex>& blocks) {
  FilteredComplex fc;
  std::size_t top = 0;
  for (std::size_t b = 0; b < blocks.size(); ++b)
    top = std::max(top, blocks[b].top_degree() + b);
  auto block_dim = [&](std::size_t b, long n) {
    return blocks[b].space_dim(n - static_cast<long>(b));
  };
  for (std::size_t n = 0; n <= top; ++n) {
    std::size_t dim = 0, next = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      dim += block_dim(b, static_cast<long>(n));
      next += block_dim(b, static_cast<long>(n) + 1);
    }
    fc.dims.push_back(dim);
    RatMatrix d(next, dim);
    std::size_t row0 = 0, col0 = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const long local = static_cast<long>(n) - static_cast<long>(b);
      const std::size_t bn = block_dim(b, static_cast<long>(n));
      const std::size_t bn1 = block_dim(b, static_cast<long>(n) + 1);
      if (local >= 0 && local < static_cast<long>(blocks[b].top_degree()) + 1) {
        const RatMatrix& db = blocks[b].differential(static_cast<std::size_t>(local));
        for (std::size_t r = 0; r < bn1; ++r)
          for (std::size_t c = 0; c < bn; ++c) d(row0 + r, col0 + c) = db(r, c);
      }
      row0 += bn1;
      col0 += bn;
    }
    fc.differentials.push_back(std::move(d));
    // F^p holds blocks p, p+1, ...
    std::vector<Subspace> per_degree;
    for (std::size_t p = 0; p <= n + 1; ++p) {
      std::vector<RatVec> gens;
      std::size_t offset = 0;
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        const std::size_t bdim = block_dim(b, static_cast<long>(n));
        if (b >= p)
          for (std::size_t i = 0; i < bdim; ++i) {
            RatVec e(dim, Rational(0));
            e[offset + i] = 1;
            gens.push_back(std::move(e));
          }
        offset += bdim;
      }
      per_degree.push_back(Subspace::span_of_vectors(dim, gens));
    }
    fc.filtration.push_back(std::move(per_degree));
  }
  return fc;
}

}  // namespace

TEST_CASE("hochschild-serre filtration shape") {
  SUBCASE("bs hull: F^1 C^1 is the torus line, F^2 C^1 = 0") {
    const LieAlgebra g = semidirect(bs_hull());
    const CochainComplex cg = build_complex(g, LieModule::trivial(g));
    const FilteredComplex fc = hs_filtration(cg, 1);
    CHECK(fc.filtered(1, 1).dim() == 1);
    CHECK(fc.filtered(1, 1).contains(RatVec{0, 1}));
    CHECK(fc.filtered(1, 2).dim() == 0);
  }
  SUBCASE("trivial filtration for an empty torus") {
    const LieAlgebra a = LieAlgebra::abelian(2);
    const CochainComplex cg = build_complex(a, LieModule::trivial(a));
    const FilteredComplex fc = hs_filtration(cg, 2);
    CHECK(fc.filtered(1, 0).dim() == 2);
    CHECK(fc.filtered(1, 1).dim() == 0);
  }
  SUBCASE("heis hull: dim F^1 C^2 = 3") {
    const LieAlgebra g = semidirect(heis_hull());
    const CochainComplex cg = build_complex(g, LieModule::trivial(g));
    const FilteredComplex fc = hs_filtration(cg, 3);
    CHECK(fc.filtered(2, 1).dim() == 3);
  }
  SUBCASE("wrong basis convention is rejected") {
    LieAlgebra flipped(2, {"t", "u"});
    flipped.set_bracket(0, 1, RatVec{0, 1});
    const CochainComplex cg = build_complex(flipped, LieModule::trivial(flipped));
    CHECK_THROWS_WITH_AS(hs_filtration(cg, 1), doctest::Contains("convention"), Error);
  }
}

TEST_CASE("pages of the bs hull") {
  const SpectralSequence ss = hull_sequence(bs_hull(), HullModule::trivial(bs_hull()));
  const Page& e2 = ss.pages[2];
  CHECK(e2.cell_dim(0, 0) == 1);
  CHECK(e2.cell_dim(1, 0) == 1);
  CHECK(e2.cell_dim(0, 1) == 0);
  CHECK(e2.cell_dim(1, 1) == 0);
  CHECK(ss.stabilized_at <= 2);
  CHECK(ss.h_dims == std::vector<std::size_t>{1, 1, 0});
}

TEST_CASE("pages of the heis hull concentrate on the bottom row") {
  const SpectralSequence ss = hull_sequence(heis_hull(), HullModule::trivial(heis_hull()));
  const Page& e2 = ss.pages[2];
  for (const auto& [key, cell] : e2.cells) {
    const std::size_t expected =
        (key == std::make_pair<std::size_t, std::size_t>(0, 0) ||
         key == std::make_pair<std::size_t, std::size_t>(1, 0))
            ? 1
            : 0;
    CHECK(cell.dim == expected);
  }
  CHECK(ss.h_dims == std::vector<std::size_t>{1, 1, 0, 0, 0});
}

TEST_CASE("zero differential with trivial filtration keeps E_r constant") {
  const LieAlgebra a = LieAlgebra::abelian(2);
  const CochainComplex cg = build_complex(a, LieModule::trivial(a));
  const SpectralSequence ss = compute_pages(hs_filtration(cg, 2));
  for (const auto& page : ss.pages)
    for (const auto& [key, cell] : page.cells)
      CHECK(cell.dim == (key.first == 0 ? cg.space_dim(static_cast<long>(key.second)) : 0));
  CHECK(ss.stabilized_at == 0);
}

TEST_CASE("spectral checks on the catalog hulls") {
  for (const auto& hull : {bs_hull(), heis_hull()}) {
    const HullModule trivial = HullModule::trivial(hull);
    const SpectralSequence ss = hull_sequence(hull, trivial);
    CHECK(e2_identification(ss, hull, trivial).pass);
    CHECK(abutment_check(ss).pass);
    const LieAlgebra g = semidirect(hull);
    const CochainComplex cg = build_complex(g, trivial.ambient_module(hull));
    CHECK(page_multiplicativity_check(ss, cg).pass);
    CHECK(ss.stabilized_at <= g.dim() + 1);
  }
}

TEST_CASE("page multiplicativity sees a nonzero cross product") {
  // u = Q^2 abelian with a zero-weight torus line: E^{1,0} x E^{0,1} lands in
  // a nonzero E^{1,1}.
  SemidirectPresentation p;
  p.u = LieAlgebra::abelian(2);
  p.t_dim = 1;
  p.derivations = {RatMatrix::zero(2, 2)};
  const HullModule trivial = HullModule::trivial(p);
  const SpectralSequence ss = hull_sequence(p, trivial);
  CHECK(ss.pages[2].cell_dim(1, 1) == 2);
  const LieAlgebra g = semidirect(p);
  const CochainComplex cg = build_complex(g, trivial.ambient_module(p));
  CHECK(page_multiplicativity_check(ss, cg).pass);
}

TEST_CASE("generic engine on random block-filtered complexes") {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 6; ++trial) {
    auto a = testsupport::random_nilpotent(rng);
    auto b = testsupport::random_nilpotent(rng);
    const CochainComplex ca = build_complex(a.algebra, LieModule::trivial(a.algebra));
    const CochainComplex cb = build_complex(b.algebra, LieModule::trivial(b.algebra));
    const FilteredComplex fc = block_filtered({ca, cb});
    fc.validate();
    const SpectralSequence ss = compute_pages(fc);
    CHECK(abutment_check(ss).pass);
    CHECK(ss.stabilized_at <= fc.top_degree() + 1);
    // Blockwise abutment: H of the shifted sum is the shifted sum of the H's.
    for (std::size_t n = 0; n <= fc.top_degree(); ++n) {
      const std::size_t ha = n <= ca.top_degree() ? cohomology(ca, static_cast<long>(n)).dim : 0;
      const std::size_t hb =
          (n >= 1 && n - 1 <= cb.top_degree()) ? cohomology(cb, static_cast<long>(n) - 1).dim : 0;
      CHECK(ss.h_dims[n] == ha + hb);
    }
  }
}

TEST_CASE("comparison for the catalog towers") {
  SUBCASE("bs towers pass") {
    for (const long n : {2L, 3L, 5L}) {
      const DenseSubgroupData d = bs_model(n);
      const HullModule trivial = HullModule::trivial(d.hull);
      const ComparisonResult r = comparison(hull_sequence(d.hull, trivial), d, trivial);
      CHECK(r.pass);
      CHECK_FALSE(r.refused);
      CHECK(r.e2_dims.at({0, 0}) == std::make_pair<std::size_t, std::size_t>(1, 1));
      CHECK(r.e2_dims.at({1, 0}) == std::make_pair<std::size_t, std::size_t>(1, 1));
      CHECK(r.e2_dims.at({0, 1}) == std::make_pair<std::size_t, std::size_t>(0, 0));
    }
  }
  SUBCASE("heis tower passes") {
    const DenseSubgroupData d = heis_model(2);
    const HullModule trivial = HullModule::trivial(d.hull);
    CHECK(comparison(hull_sequence(d.hull, trivial), d, trivial).pass);
  }
  SUBCASE("multi-prime tower is refused on discreteness") {
    DenseSubgroupData d = bs_model(2);
    TorusGenerator p3;
    p3.coordinates = RatVec{3};
    d.torus_gens.push_back(p3);
    const HullModule trivial = HullModule::trivial(d.hull);
    const ComparisonResult r = comparison(hull_sequence(d.hull, trivial), d, trivial);
    CHECK_FALSE(r.pass);
    CHECK(r.refused);
    CHECK(r.detail.find("discreteness") != std::string::npos);
  }
  SUBCASE("comparison is deterministic") {
    const DenseSubgroupData d = bs_model(2);
    const HullModule trivial = HullModule::trivial(d.hull);
    const SpectralSequence ss = hull_sequence(d.hull, trivial);
    const ComparisonResult r1 = comparison(ss, d, trivial);
    const ComparisonResult r2 = comparison(ss, d, trivial);
    CHECK(r1.pass == r2.pass);
    CHECK(r1.e2_dims == r2.e2_dims);
    CHECK(r1.group_dims == r2.group_dims);
  }
}

TEST_CASE("kunneth decomposition tables") {
  SUBCASE("heis hull degree 1: the single cell (0, 1)") {
    const KunnethResult r = kunneth_decomposition(heis_hull(), HullModule::trivial(heis_hull()), 1);
    CHECK(r.pass);
    CHECK(r.direct_dim == 1);
    REQUIRE(r.table.size() == 2);
    // (i, j) = (0, 1) contributes 1 * 1; (1, 0) contributes 0 * 1.
    CHECK(r.table[0].invariant_dim * r.table[0].exterior_dim +
              r.table[1].invariant_dim * r.table[1].exterior_dim ==
          1);
  }
  SUBCASE("bs hull degree 2 vanishes") {
    const KunnethResult r = kunneth_decomposition(bs_hull(), HullModule::trivial(bs_hull()), 2);
    CHECK(r.pass);
    CHECK(r.expected_total == 0);
    CHECK(r.direct_dim == 0);
  }
  SUBCASE("empty torus gives the identity decomposition") {
    SemidirectPresentation p;
    p.u = LieAlgebra::heisenberg3();
    for (std::size_t n = 0; n <= 3; ++n) {
      const KunnethResult r = kunneth_decomposition(p, HullModule::trivial(p), n);
      CHECK(r.pass);
      REQUIRE(r.table.size() == 1);
      CHECK(r.table[0].i == n);
      CHECK(r.table[0].j == 0);
    }
  }
}

TEST_CASE("phi ring map") {
  SUBCASE("bs models: phi passes, with the square landing in zero") {
    for (const long n : {2L, 3L, 5L}) {
      const DenseSubgroupData d = bs_model(n);
      const PhiResult r = phi_ring_map(d.hull, d, HullModule::trivial(d.hull));
      CHECK(r.pass);
      CHECK(r.dims == std::vector<std::size_t>{1, 1, 0});
    }
  }
  SUBCASE("heis tower passes") {
    const DenseSubgroupData d = heis_model(2);
    const PhiResult r = phi_ring_map(d.hull, d, HullModule::trivial(d.hull));
    CHECK(r.pass);
    CHECK(r.dims == std::vector<std::size_t>{1, 1, 0, 0, 0});
  }
  SUBCASE("abelian Q^n with Gamma = Z^n is the exterior identity") {
    SemidirectPresentation p;
    p.u = LieAlgebra::abelian(3);
    DenseSubgroupData d;
    d.hull = p;
    d.delta_logs = {RatVec{1, 0, 0}, RatVec{0, 1, 0}, RatVec{0, 0, 1}};
    const PhiResult r = phi_ring_map(p, d, HullModule::trivial(p));
    CHECK(r.pass);
    CHECK(r.dims == std::vector<std::size_t>{1, 3, 3, 1});
  }
  SUBCASE("a corrupted torus weight fails at degree 1") {
    // Zero exponent on the torus: the generator acts trivially, so the
    // group-side invariants jump while the algebra side keeps weight -1.
    DenseSubgroupData d = bs_model(2);
    d.torus_gens[0].coordinates = RatVec{1};
    const HullModule trivial = HullModule::trivial(d.hull);
    const GroupCohModel corrupted = wang_tower(d, trivial);
    LieSideSummary lie;
    lie.dims = {1, 1, 0};
    const CompareVerdict verdict = compare_with_lie(corrupted, lie);
    CHECK_FALSE(verdict.pass);
    CHECK(verdict.detail.find("degree 1") != std::string::npos);
    // The full pipeline refuses outright: a trivial generator is not dense.
    const ComparisonResult r = comparison(hull_sequence(d.hull, trivial), d, trivial);
    CHECK_FALSE(r.pass);
    CHECK(r.refused);
  }
}
