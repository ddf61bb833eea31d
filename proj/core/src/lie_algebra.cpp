#include "solvcoh/lie_algebra.hpp"

namespace solvcoh {

std::string JacobiReport::to_string() const {
  if (ok) return "jacobi: ok";
  std::string out = "jacobi violated at triple (" + std::to_string(i) + ", " +
                    std::to_string(j) + ", " + std::to_string(k) + "), residual (";
  for (std::size_t t = 0; t < residual.size(); ++t) {
    if (t) out += ", ";
    out += rational_to_string(residual[t]);
  }
  return out + ")";
}

LieAlgebra::LieAlgebra(std::size_t dim, std::vector<std::string> basis_names)
    : dim_(dim), names_(std::move(basis_names)) {
  if (names_.empty()) {
    names_.reserve(dim_);
    for (std::size_t i = 0; i < dim_; ++i) names_.push_back("e" + std::to_string(i));
  }
  if (names_.size() != dim_) throw Error("basis name count does not match dimension");
}

LieAlgebra LieAlgebra::abelian(std::size_t dim) { return LieAlgebra(dim, {}); }

LieAlgebra LieAlgebra::heisenberg3() {
  LieAlgebra h(3, {"x", "y", "z"});
  h.set_bracket(0, 1, RatVec{0, 0, 1});
  return h;
}

void LieAlgebra::set_bracket(std::size_t i, std::size_t j, RatVec value) {
  if (i >= j) throw Error("brackets are stored for i < j only");
  if (j >= dim_) throw Error("bracket index out of range");
  if (value.size() != dim_) throw Error("bracket value has wrong length");
  if (vec_is_zero(value))
    brackets_.erase({i, j});
  else
    brackets_[{i, j}] = std::move(value);
}

RatVec LieAlgebra::bracket_basis(std::size_t i, std::size_t j) const {
  RatVec zero(dim_, Rational(0));
  if (i == j) return zero;
  const bool flip = i > j;
  if (flip) std::swap(i, j);
  auto it = brackets_.find({i, j});
  if (it == brackets_.end()) return zero;
  return flip ? vec_scale(-1, it->second) : it->second;
}

RatVec LieAlgebra::bracket(const RatVec& x, const RatVec& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw Error("bracket operand has wrong length");
  RatVec out(dim_, Rational(0));
  for (const auto& [key, value] : brackets_) {
    const auto [i, j] = key;
    const Rational c = x[i] * y[j] - x[j] * y[i];
    if (c != 0) vec_axpy(out, c, value);
  }
  return out;
}

RatMatrix LieAlgebra::adjoint(const RatVec& x) const {
  RatMatrix ad(dim_, dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    RatVec ej(dim_, Rational(0));
    ej[j] = 1;
    const RatVec col = bracket(x, ej);
    for (std::size_t i = 0; i < dim_; ++i) ad(i, j) = col[i];
  }
  return ad;
}

JacobiReport validate_jacobi(const LieAlgebra& g) {
  JacobiReport report;
  const std::size_t n = g.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        RatVec ei(n, Rational(0)), ej(n, Rational(0)), ek(n, Rational(0));
        ei[i] = 1;
        ej[j] = 1;
        ek[k] = 1;
        RatVec residual = g.bracket(g.bracket_basis(i, j), ek);
        residual = vec_add(residual, g.bracket(g.bracket_basis(j, k), ei));
        residual = vec_add(residual, g.bracket(g.bracket_basis(k, i), ej));
        if (!vec_is_zero(residual)) {
          report.ok = false;
          report.i = i;
          report.j = j;
          report.k = k;
          report.residual = std::move(residual);
          return report;
        }
      }
  return report;
}

Subspace bracket_span(const LieAlgebra& g, const Subspace& a, const Subspace& b) {
  std::vector<RatVec> products;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j)
      products.push_back(g.bracket(a.basis_vector(i), b.basis_vector(j)));
  return Subspace::span_of_vectors(g.dim(), products);
}

namespace {

std::vector<Subspace> descending_series(const LieAlgebra& g, bool derived) {
  std::vector<Subspace> series{Subspace::full(g.dim())};
  while (true) {
    const Subspace& last = series.back();
    const Subspace next =
        derived ? bracket_span(g, last, last) : bracket_span(g, series.front(), last);
    if (next == last) break;
    series.push_back(next);
    if (series.back().dim() == 0) break;
  }
  return series;
}

}  // namespace

std::vector<Subspace> lower_central_series(const LieAlgebra& g) {
  return descending_series(g, false);
}

std::vector<Subspace> derived_series(const LieAlgebra& g) {
  return descending_series(g, true);
}

bool is_nilpotent(const LieAlgebra& g) { return lower_central_series(g).back().dim() == 0; }

bool is_solvable(const LieAlgebra& g) { return derived_series(g).back().dim() == 0; }

Subspace center(const LieAlgebra& g) {
  // x central iff ad(e_j) x = 0 for all j; stack the adjoints.
  const std::size_t n = g.dim();
  RatMatrix stacked(n * n, n);
  for (std::size_t j = 0; j < n; ++j) {
    RatVec ej(n, Rational(0));
    ej[j] = 1;
    const RatMatrix ad = g.adjoint(ej);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) stacked(j * n + r, c) = ad(r, c);
  }
  return kernel_basis(stacked);
}

}  // namespace solvcoh
