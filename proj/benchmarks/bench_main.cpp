#include "solvcoh/catalog.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace solvcoh;

RatMatrix random_matrix(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> num(-9, 9);
  RatMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = Rational(num(rng), 1 + rng() % 4);
  return m;
}

void BM_rref(benchmark::State& state) {
  std::mt19937 rng(5);
  const RatMatrix m = random_matrix(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rref(m));
}
BENCHMARK(BM_rref)->Arg(8)->Arg(16)->Arg(32);

LieAlgebra strictly_upper(std::size_t k) {
  // Full strictly upper-triangular algebra of k x k matrices in the basis
  // E_{ab}, a < b, ordered lexicographically.
  std::vector<std::pair<std::size_t, std::size_t>> positions;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) positions.push_back({a, b});
  LieAlgebra g(positions.size(), {});
  for (std::size_t i = 0; i < positions.size(); ++i)
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      const auto [a, b] = positions[i];
      const auto [c, d] = positions[j];
      RatVec value(positions.size(), Rational(0));
      // [E_ab, E_cd] = delta_bc E_ad - delta_da E_cb.
      if (b == c)
        for (std::size_t t = 0; t < positions.size(); ++t)
          if (positions[t] == std::make_pair(a, d)) value[t] += 1;
      if (d == a)
        for (std::size_t t = 0; t < positions.size(); ++t)
          if (positions[t] == std::make_pair(c, b)) value[t] -= 1;
      if (!vec_is_zero(value)) g.set_bracket(i, j, value);
    }
  return g;
}

void BM_build_complex(benchmark::State& state) {
  const LieAlgebra g = strictly_upper(static_cast<std::size_t>(state.range(0)));
  const LieModule m = LieModule::trivial(g);
  for (auto _ : state) benchmark::DoNotOptimize(build_complex(g, m));
}
BENCHMARK(BM_build_complex)->Arg(3)->Arg(4);

void BM_betti(benchmark::State& state) {
  const LieAlgebra g = strictly_upper(static_cast<std::size_t>(state.range(0)));
  const CochainComplex c = build_complex(g, LieModule::trivial(g));
  for (auto _ : state) benchmark::DoNotOptimize(betti_numbers(c));
}
BENCHMARK(BM_betti)->Arg(3)->Arg(4);

void BM_spectral_pages(benchmark::State& state) {
  const auto catalog = builtin_catalog();
  const CatalogEntry& entry = find_entry(catalog, "heis_hull2");
  const LieAlgebra g = semidirect(entry.hull);
  const CochainComplex cg = build_complex(g, entry.modules.front().data.ambient_module(entry.hull));
  const FilteredComplex fc = hs_filtration(cg, entry.hull.u.dim());
  for (auto _ : state) benchmark::DoNotOptimize(compute_pages(fc));
}
BENCHMARK(BM_spectral_pages);

void BM_wang_tower(benchmark::State& state) {
  const auto catalog = builtin_catalog();
  const CatalogEntry& entry = find_entry(catalog, "heis_hull2");
  for (auto _ : state)
    benchmark::DoNotOptimize(wang_tower(entry.subgroup, entry.modules.front().data));
}
BENCHMARK(BM_wang_tower);

}  // namespace

BENCHMARK_MAIN();
