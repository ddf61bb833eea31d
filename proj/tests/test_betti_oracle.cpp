#include "oracle_ce.hpp"

#include <doctest.h>

// Frozen expected values for the catalog models, recomputed here by the
// brute-force oracle on every run. The library's own pipeline is checked
// against the same numbers in test_ce.cpp.

using oracle::Input;
using solvcoh::Rational;
using solvcoh::RatVec;

namespace {

Input h3_input() {
  Input in = Input::trivial_coefficients(3);
  in.set_bracket(0, 1, RatVec{0, 0, 1});  // [x, y] = z
  return in;
}

Input bs_hull_input() {
  // g = span{u, D} with [D, u] = u.
  Input in = Input::trivial_coefficients(2);
  in.set_bracket(1, 0, RatVec{1, 0});
  return in;
}

Input heis_hull_input() {
  // g = h3 x| Q in the ordering (x, z, y, D): [x, y] = z, D = diag(1, 2, 1).
  Input in = Input::trivial_coefficients(4);
  in.set_bracket(0, 2, RatVec{0, 1, 0, 0});
  in.set_bracket(3, 0, RatVec{1, 0, 0, 0});
  in.set_bracket(3, 1, RatVec{0, 2, 0, 0});
  in.set_bracket(3, 2, RatVec{0, 0, 1, 0});
  return in;
}

}  // namespace

TEST_CASE("oracle: heisenberg betti numbers") {
  CHECK(oracle::betti(h3_input()) == std::vector<std::size_t>{1, 2, 2, 1});
}

TEST_CASE("oracle: abelian betti numbers are binomials") {
  CHECK(oracle::betti(Input::trivial_coefficients(1)) == std::vector<std::size_t>{1, 1});
  CHECK(oracle::betti(Input::trivial_coefficients(2)) == std::vector<std::size_t>{1, 2, 1});
  CHECK(oracle::betti(Input::trivial_coefficients(3)) == std::vector<std::size_t>{1, 3, 3, 1});
  CHECK(oracle::betti(Input::trivial_coefficients(4)) ==
        std::vector<std::size_t>{1, 4, 6, 4, 1});
  CHECK(oracle::betti(Input::trivial_coefficients(5)) ==
        std::vector<std::size_t>{1, 5, 10, 10, 5, 1});
}

TEST_CASE("oracle: bs hull betti numbers") {
  CHECK(oracle::betti(bs_hull_input()) == std::vector<std::size_t>{1, 1, 0});
}

TEST_CASE("oracle: heis hull betti numbers") {
  CHECK(oracle::betti(heis_hull_input()) == std::vector<std::size_t>{1, 1, 0, 0, 0});
}

TEST_CASE("oracle: d squared vanishes on the heis hull") {
  const Input in = heis_hull_input();
  for (std::size_t k = 0; k + 1 < in.dim; ++k) {
    const auto d1 = oracle::differential(in, k);
    const auto d2 = oracle::differential(in, k + 1);
    // Compose by hand: rows of d2 times columns of d1.
    for (std::size_t r = 0; r < d2.size(); ++r)
      for (std::size_t c = 0; c < (d1.empty() ? 0 : d1[0].size()); ++c) {
        Rational acc = 0;
        for (std::size_t m = 0; m < d1.size(); ++m) acc += d2[r][m] * d1[m][c];
        CHECK(acc == 0);
      }
  }
}
