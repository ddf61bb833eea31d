#include "solvcoh/linalg.hpp"

#include "solvcoh/factor.hpp"

#include <algorithm>
#include <set>

namespace solvcoh {

RrefResult rref(const RatMatrix& m) {
  RrefResult out;
  out.matrix = m;
  RatMatrix& a = out.matrix;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
    if (pivot == a.rows()) continue;
    if (pivot != row)
      for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(row, c), a(pivot, c));
    const Rational inv = Rational(1) / a(row, col);
    for (std::size_t c = col; c < a.cols(); ++c) a(row, c) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col) == 0) continue;
      const Rational f = a(r, col);
      for (std::size_t c = col; c < a.cols(); ++c) a(r, c) -= f * a(row, c);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.rank = out.pivots.size();
  return out;
}

Subspace Subspace::span_of_rows(std::size_t ambient_dim, const RatMatrix& rows) {
  if (rows.rows() > 0 && rows.cols() != ambient_dim)
    throw Error("spanning vectors do not live in the stated ambient space");
  Subspace s(ambient_dim);
  if (rows.rows() == 0) {
    s.basis_ = RatMatrix(0, ambient_dim);
    return s;
  }
  const RrefResult r = rref(rows);
  RatMatrix basis(r.rank, ambient_dim);
  for (std::size_t i = 0; i < r.rank; ++i) basis.set_row(i, r.matrix.row(i));
  s.basis_ = basis;
  return s;
}

Subspace Subspace::span_of_vectors(std::size_t ambient_dim, const std::vector<RatVec>& vecs) {
  if (vecs.empty()) {
    Subspace s(ambient_dim);
    s.basis_ = RatMatrix(0, ambient_dim);
    return s;
  }
  return span_of_rows(ambient_dim, RatMatrix::from_rows(vecs));
}

Subspace Subspace::full(std::size_t ambient_dim) {
  Subspace s(ambient_dim);
  s.basis_ = RatMatrix::identity(ambient_dim);
  return s;
}

namespace {

// Reduces v against an echelon basis in place; returns the coefficients used.
RatVec reduce_against_echelon(const RatMatrix& basis, RatVec& v) {
  RatVec coeffs(basis.rows());
  for (std::size_t i = 0; i < basis.rows(); ++i) {
    std::size_t lead = 0;
    while (lead < basis.cols() && basis(i, lead) == 0) ++lead;
    if (lead == basis.cols()) continue;
    if (v[lead] == 0) continue;
    const Rational c = v[lead] / basis(i, lead);
    coeffs[i] = c;
    for (std::size_t j = lead; j < basis.cols(); ++j) v[j] -= c * basis(i, j);
  }
  return coeffs;
}

}  // namespace

bool Subspace::contains(const RatVec& v) const {
  if (v.size() != ambient_) throw Error("vector length does not match ambient dimension");
  RatVec w = v;
  reduce_against_echelon(basis_, w);
  return vec_is_zero(w);
}

bool Subspace::contains(const Subspace& other) const {
  for (std::size_t i = 0; i < other.dim(); ++i)
    if (!contains(other.basis_vector(i))) return false;
  return true;
}

std::optional<RatVec> Subspace::coordinates_of(const RatVec& v) const {
  RatVec w = v;
  RatVec coeffs = reduce_against_echelon(basis_, w);
  if (!vec_is_zero(w)) return std::nullopt;
  return coeffs;
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_ != b.ambient_) throw Error("ambient dimension mismatch in subspace sum");
  RatMatrix stacked(a.dim() + b.dim(), a.ambient_);
  for (std::size_t i = 0; i < a.dim(); ++i) stacked.set_row(i, a.basis_.row(i));
  for (std::size_t i = 0; i < b.dim(); ++i) stacked.set_row(a.dim() + i, b.basis_.row(i));
  return Subspace::span_of_rows(a.ambient_, stacked);
}

Subspace subspace_intersection(const Subspace& a, const Subspace& b) {
  if (a.ambient_ != b.ambient_) throw Error("ambient dimension mismatch in subspace intersection");
  if (a.dim() == 0 || b.dim() == 0) return Subspace::zero(a.ambient_);
  // x in both spans: x = A^T s = B^T t. Solve for (s, t) in the kernel of
  // [A^T | -B^T] and map back through A^T.
  RatMatrix k(a.ambient_, a.dim() + b.dim());
  for (std::size_t r = 0; r < a.ambient_; ++r) {
    for (std::size_t i = 0; i < a.dim(); ++i) k(r, i) = a.basis_(i, r);
    for (std::size_t i = 0; i < b.dim(); ++i) k(r, a.dim() + i) = -b.basis_(i, r);
  }
  const Subspace ker = kernel_basis(k);
  std::vector<RatVec> vecs;
  for (std::size_t i = 0; i < ker.dim(); ++i) {
    const RatVec st = ker.basis_vector(i);
    RatVec x(a.ambient_, Rational(0));
    for (std::size_t j = 0; j < a.dim(); ++j) vec_axpy(x, st[j], a.basis_.row(j));
    vecs.push_back(std::move(x));
  }
  return Subspace::span_of_vectors(a.ambient_, vecs);
}

Subspace kernel_basis(const RatMatrix& m) {
  const RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (const auto c : r.pivots) is_pivot[c] = true;
  std::vector<RatVec> vecs;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (is_pivot[j]) continue;
    RatVec v(m.cols(), Rational(0));
    v[j] = 1;
    for (std::size_t i = 0; i < r.rank; ++i) v[r.pivots[i]] = -r.matrix(i, j);
    vecs.push_back(std::move(v));
  }
  return Subspace::span_of_vectors(m.cols(), vecs);
}

Subspace image_basis(const RatMatrix& m) {
  return Subspace::span_of_rows(m.rows(), m.transpose());
}

std::vector<RatVec> quotient_basis(const Subspace& big, const Subspace& small) {
  if (big.ambient_dim() != small.ambient_dim())
    throw Error("ambient dimension mismatch in quotient");
  for (std::size_t i = 0; i < small.dim(); ++i) {
    if (!big.contains(small.basis_vector(i))) {
      std::string repr;
      for (const auto& x : small.basis_vector(i)) repr += rational_to_string(x) + " ";
      throw Error("quotient precondition failed: vector ( " + repr +
                  ") of the small subspace lies outside the big one");
    }
  }
  std::vector<RatVec> reps;
  Subspace current = small;
  for (std::size_t i = 0; i < big.dim(); ++i) {
    RatVec candidate = big.basis_vector(i);
    if (current.contains(candidate)) continue;
    current = subspace_sum(current, Subspace::span_of_vectors(big.ambient_dim(), {candidate}));
    reps.push_back(std::move(candidate));
  }
  return reps;
}

std::optional<RatVec> solve_in_column_span(const RatMatrix& a, const RatVec& b) {
  if (b.size() != a.rows()) throw Error("rhs length does not match matrix shape");
  RatMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  const RrefResult r = rref(aug);
  RatVec x(a.cols(), Rational(0));
  for (std::size_t i = 0; i < r.rank; ++i) {
    if (r.pivots[i] == a.cols()) return std::nullopt;  // inconsistent system
    x[r.pivots[i]] = r.matrix(i, a.cols());
  }
  return x;
}

RatMatrix inverse(const RatMatrix& m) {
  if (!m.is_square()) throw Error("inverse of non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  const RrefResult rr = rref(aug);
  if (rr.rank < n || rr.pivots[n - 1] != n - 1) throw Error("matrix is singular");
  RatMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = rr.matrix(r, n + c);
  return out;
}

RatVec characteristic_polynomial(const RatMatrix& m) {
  if (!m.is_square()) throw Error("characteristic polynomial of non-square matrix");
  const std::size_t n = m.rows();
  // Faddeev-LeVerrier: p(x) = x^n + c_1 x^{n-1} + ... + c_n.
  RatVec c(n + 1, Rational(0));
  c[n] = 1;
  RatMatrix mk = m;
  for (std::size_t k = 1; k <= n; ++k) {
    if (k > 1) {
      RatMatrix shifted = mk;
      for (std::size_t i = 0; i < n; ++i) shifted(i, i) += c[n - (k - 1)];
      mk = m * shifted;
    }
    c[n - k] = -mk.trace() / Rational(k);
  }
  return c;
}

namespace {

RatVec poly_derivative(const RatVec& p) {
  if (p.size() <= 1) return RatVec{Rational(0)};
  RatVec d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = Rational(i) * p[i];
  return d;
}

void poly_trim(RatVec& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

bool poly_is_zero(const RatVec& p) { return p.size() == 1 && p[0] == 0; }

// Remainder of a by b over Q, b nonzero.
RatVec poly_mod(RatVec a, const RatVec& b) {
  poly_trim(a);
  while (!poly_is_zero(a) && a.size() >= b.size()) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    poly_trim(a);
    if (a.size() >= b.size() && a.back() == 0) poly_trim(a);
  }
  return a;
}

RatVec poly_divide_exact(RatVec a, const RatVec& b) {
  poly_trim(a);
  RatVec q(a.size() >= b.size() ? a.size() - b.size() + 1 : 1, Rational(0));
  while (!poly_is_zero(a) && a.size() >= b.size()) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    poly_trim(a);
  }
  if (!poly_is_zero(a)) throw Error("polynomial division was not exact");
  return q;
}

RatVec poly_gcd(RatVec a, RatVec b) {
  poly_trim(a);
  poly_trim(b);
  while (!poly_is_zero(b)) {
    RatVec r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!poly_is_zero(a) && a.back() != 1) {
    const Rational inv = Rational(1) / a.back();
    for (auto& x : a) x *= inv;
  }
  return a;
}

Rational poly_eval(const RatVec& p, const Rational& x) {
  Rational acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

RatMatrix poly_eval_matrix(const RatVec& p, const RatMatrix& m) {
  RatMatrix acc(m.rows(), m.cols());
  for (std::size_t i = p.size(); i-- > 0;) {
    acc = acc * m;
    for (std::size_t d = 0; d < m.rows(); ++d) acc(d, d) += p[i];
  }
  return acc;
}

// Rational roots of a squarefree polynomial over Q.
std::vector<Rational> rational_roots(const RatVec& poly) {
  RatVec p = poly;
  poly_trim(p);
  std::vector<Rational> roots;
  if (poly_is_zero(p)) return roots;
  // Factor out x.
  while (p.size() > 1 && p[0] == 0) {
    if (roots.empty()) roots.push_back(0);
    p.erase(p.begin());
  }
  if (p.size() <= 1) return roots;
  // Clear denominators.
  Integer lcm = 1;
  for (const auto& c : p) lcm = boost::multiprecision::lcm(lcm, denominator(c));
  std::vector<Integer> ip(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    ip[i] = numerator(p[i] * Rational(lcm));
  const std::vector<Integer> num_divs = divisors(ip.front());
  const std::vector<Integer> den_divs = divisors(ip.back());
  std::set<Rational> candidates;
  for (const auto& a : num_divs)
    for (const auto& b : den_divs) {
      candidates.insert(Rational(a, b));
      candidates.insert(Rational(-a, b));
    }
  for (const auto& r : candidates)
    if (poly_eval(p, r) == 0) roots.push_back(r);
  std::sort(roots.begin(), roots.end());
  return roots;
}

struct EigenDecomposition {
  std::vector<Rational> values;
  std::vector<Subspace> spaces;
};

std::optional<EigenDecomposition> try_eigen_decompose(const RatMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return EigenDecomposition{};
  const RatVec chi = characteristic_polynomial(m);
  const RatVec squarefree = poly_divide_exact(chi, poly_gcd(chi, poly_derivative(chi)));
  const std::vector<Rational> roots = rational_roots(squarefree);
  if (roots.size() + 1 != squarefree.size()) return std::nullopt;  // irrational spectrum
  EigenDecomposition out;
  std::size_t total = 0;
  for (const auto& r : roots) {
    RatMatrix shifted = m;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= r;
    Subspace es = kernel_basis(shifted);
    total += es.dim();
    out.values.push_back(r);
    out.spaces.push_back(std::move(es));
  }
  if (total != n) return std::nullopt;  // defective
  return out;
}

}  // namespace

bool is_diagonalizable_over_q(const RatMatrix& m) {
  return try_eigen_decompose(m).has_value();
}

RatVec rational_spectrum(const RatMatrix& m) {
  auto dec = try_eigen_decompose(m);
  if (!dec) throw Error("not Q-split: matrix is not diagonalizable over Q");
  return dec->values;
}

std::vector<std::pair<RatVec, Subspace>> simultaneous_eigenspaces(
    const std::vector<RatMatrix>& ops, std::size_t ambient_dim) {
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (!ops[i].is_square() || ops[i].rows() != ambient_dim)
      throw Error("operator " + std::to_string(i) + " does not act on the ambient space");
    for (std::size_t j = i + 1; j < ops.size(); ++j)
      if (!RatMatrix::commutator(ops[i], ops[j]).is_zero())
        throw Error("operators " + std::to_string(i) + " and " + std::to_string(j) +
                    " do not commute");
  }

  struct Block {
    RatVec weight;
    Subspace space;
  };
  std::vector<Block> blocks{{RatVec{}, Subspace::full(ambient_dim)}};
  for (std::size_t a = 0; a < ops.size(); ++a) {
    std::vector<Block> next;
    for (const auto& block : blocks) {
      const std::size_t d = block.space.dim();
      // Restriction of the operator to the block (invariant by commutativity).
      RatMatrix basis_t = block.space.basis().transpose();
      RatMatrix restriction(d, d);
      for (std::size_t j = 0; j < d; ++j) {
        const RatVec image = ops[a].apply(block.space.basis_vector(j));
        const auto coords = solve_in_column_span(basis_t, image);
        if (!coords)
          throw Error("operator " + std::to_string(a) +
                      " does not preserve a joint eigenspace of the previous operators");
        for (std::size_t i = 0; i < d; ++i) restriction(i, j) = (*coords)[i];
      }
      const auto dec = try_eigen_decompose(restriction);
      if (!dec)
        throw Error("not Q-split: operator " + std::to_string(a) +
                    " is not diagonalizable over Q");
      for (std::size_t e = 0; e < dec->values.size(); ++e) {
        std::vector<RatVec> ambient_vectors;
        for (std::size_t i = 0; i < dec->spaces[e].dim(); ++i) {
          const RatVec local = dec->spaces[e].basis_vector(i);
          RatVec v(ambient_dim, Rational(0));
          for (std::size_t j = 0; j < d; ++j) vec_axpy(v, local[j], block.space.basis_vector(j));
          ambient_vectors.push_back(std::move(v));
        }
        Block refined;
        refined.weight = block.weight;
        refined.weight.push_back(dec->values[e]);
        refined.space = Subspace::span_of_vectors(ambient_dim, ambient_vectors);
        next.push_back(std::move(refined));
      }
    }
    blocks = std::move(next);
  }

  std::sort(blocks.begin(), blocks.end(),
            [](const Block& x, const Block& y) { return x.weight < y.weight; });
  std::vector<std::pair<RatVec, Subspace>> out;
  for (auto& b : blocks)
    if (b.space.dim() > 0) out.emplace_back(std::move(b.weight), std::move(b.space));
  return out;
}

}  // namespace solvcoh
