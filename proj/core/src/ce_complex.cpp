#include "solvcoh/ce_complex.hpp"

#include <bit>

namespace solvcoh {

int popcount_below(Mask mask, std::size_t index) {
  return std::popcount(mask & ((Mask{1} << index) - 1));
}

std::vector<std::size_t> mask_elements(Mask mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; mask; ++i, mask >>= 1)
    if (mask & 1) out.push_back(i);
  return out;
}

namespace {

std::vector<Mask> subsets_of_size(std::size_t dim, std::size_t n) {
  std::vector<Mask> out;
  const Mask limit = Mask{1} << dim;
  for (Mask m = 0; m < limit; ++m)
    if (static_cast<std::size_t>(std::popcount(m)) == n) out.push_back(m);
  return out;
}

}  // namespace

std::size_t CochainComplex::space_dim(long n) const {
  if (n < 0 || n > static_cast<long>(top_degree())) return 0;
  return m_.dim() * subsets_[static_cast<std::size_t>(n)].size();
}

const std::vector<Mask>& CochainComplex::subsets(std::size_t n) const {
  if (n > top_degree()) throw Error("degree out of range");
  return subsets_[n];
}

std::size_t CochainComplex::subset_position(std::size_t n, Mask mask) const {
  const auto it = positions_[n].find(mask);
  if (it == positions_[n].end()) throw Error("subset not of the requested size");
  return it->second;
}

std::size_t CochainComplex::basis_index(std::size_t n, std::size_t module_index,
                                        Mask mask) const {
  return module_index * subsets_[n].size() + subset_position(n, mask);
}

const RatMatrix& CochainComplex::differential(std::size_t n) const {
  if (n > top_degree()) throw Error("degree out of range");
  return differentials_[n];
}

RatVec CochainComplex::value_at(const RatVec& cochain, std::size_t degree, Mask mask) const {
  if (cochain.size() != space_dim(static_cast<long>(degree)))
    throw Error("cochain length does not match degree");
  const std::size_t pos = subset_position(degree, mask);
  RatVec value(m_.dim());
  for (std::size_t mi = 0; mi < m_.dim(); ++mi)
    value[mi] = cochain[mi * subsets_[degree].size() + pos];
  return value;
}

CochainComplex build_complex(const LieAlgebra& h, const LieModule& m) {
  m.validate_over(h);
  CochainComplex c;
  c.h_ = h;
  c.m_ = m;
  const std::size_t dim = h.dim();
  c.subsets_.resize(dim + 1);
  c.positions_.resize(dim + 1);
  for (std::size_t n = 0; n <= dim; ++n) {
    c.subsets_[n] = subsets_of_size(dim, n);
    for (std::size_t p = 0; p < c.subsets_[n].size(); ++p)
      c.positions_[n][c.subsets_[n][p]] = p;
  }

  c.differentials_.resize(dim + 1);
  for (std::size_t n = 0; n <= dim; ++n) {
    const std::size_t rows = c.space_dim(static_cast<long>(n) + 1);
    const std::size_t cols = c.space_dim(static_cast<long>(n));
    RatMatrix d(rows, cols);
    if (n < dim) {
      const auto& tgt = c.subsets_[n + 1];
      for (std::size_t mi = 0; mi < m.dim(); ++mi)
        for (std::size_t sp = 0; sp < c.subsets_[n].size(); ++sp) {
          const Mask s = c.subsets_[n][sp];
          const std::size_t col = mi * c.subsets_[n].size() + sp;
          for (std::size_t tp = 0; tp < tgt.size(); ++tp) {
            const Mask t = tgt[tp];
            const auto elems = mask_elements(t);
            // Action terms: (-1)^k rho(e_{t_k}) phi(T \ t_k).
            for (std::size_t k = 0; k < elems.size(); ++k) {
              const Mask rest = t & ~(Mask{1} << elems[k]);
              if (rest != s) continue;
              const int sign = (k % 2 == 0) ? 1 : -1;
              const RatMatrix& act = m.action(elems[k]);
              for (std::size_t p = 0; p < m.dim(); ++p) {
                if (act(p, mi) == 0) continue;
                d(p * tgt.size() + tp, col) += Rational(sign) * act(p, mi);
              }
            }
            // Bracket terms: (-1)^{k+l} phi([e_{t_k}, e_{t_l}], T \ {t_k, t_l}).
            for (std::size_t k = 0; k < elems.size(); ++k)
              for (std::size_t l = k + 1; l < elems.size(); ++l) {
                const RatVec w = h.bracket_basis(elems[k], elems[l]);
                if (vec_is_zero(w)) continue;
                const Mask rest = t & ~(Mask{1} << elems[k]) & ~(Mask{1} << elems[l]);
                const int skl = ((k + l) % 2 == 0) ? 1 : -1;
                for (std::size_t cidx = 0; cidx < w.size(); ++cidx) {
                  if (w[cidx] == 0) continue;
                  if (rest & (Mask{1} << cidx)) continue;  // repeated argument
                  const Mask inserted = rest | (Mask{1} << cidx);
                  if (inserted != s) continue;
                  const int ins_sign = (popcount_below(rest, cidx) % 2 == 0) ? 1 : -1;
                  d(mi * tgt.size() + tp, col) += Rational(skl * ins_sign) * w[cidx];
                }
              }
          }
        }
    }
    c.differentials_[n] = std::move(d);
  }

  for (std::size_t n = 0; n + 1 <= dim; ++n)
    if (!(c.differentials_[n + 1] * c.differentials_[n]).is_zero())
      throw Error("internal: d^2 != 0 at degree " + std::to_string(n));
  return c;
}

CohomologySpace cohomology(const CochainComplex& c, long degree) {
  if (degree < 0) throw Error("degree out of range");
  CohomologySpace out;
  out.degree = static_cast<std::size_t>(degree);
  const std::size_t dim_here = c.space_dim(degree);
  if (degree > static_cast<long>(c.top_degree())) {
    out.kernel = Subspace::zero(0);
    out.image = Subspace::zero(0);
    out.representatives = RatMatrix(0, 0);
    return out;
  }
  const std::size_t n = static_cast<std::size_t>(degree);
  out.kernel = kernel_basis(c.differential(n));
  out.image = n == 0 ? Subspace::zero(dim_here) : image_basis(c.differential(n - 1));
  const auto reps = quotient_basis(out.kernel, out.image);
  out.dim = reps.size();
  out.representatives = RatMatrix(reps.size(), dim_here);
  for (std::size_t i = 0; i < reps.size(); ++i) out.representatives.set_row(i, reps[i]);
  return out;
}

std::vector<std::size_t> betti_numbers(const CochainComplex& c) {
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n <= c.top_degree(); ++n)
    out.push_back(cohomology(c, static_cast<long>(n)).dim);
  return out;
}

namespace {

void check_ambient(const CochainComplex& c, const LieAlgebra& ambient,
                   const LieModule& ambient_module) {
  const std::size_t nh = c.algebra().dim();
  if (ambient.dim() < nh) throw Error("ambient algebra smaller than the ideal");
  if (ambient_module.dim() != c.module().dim() ||
      ambient_module.algebra_dim() != ambient.dim())
    throw Error("ambient module does not extend the complex's module");
  for (std::size_t i = 0; i < nh; ++i)
    if (!(ambient_module.action(i) == c.module().action(i)))
      throw Error("ambient module does not restrict to the complex's module");
  // The ideal check: [ambient, h] lies in h, and h's brackets agree.
  for (std::size_t i = 0; i < ambient.dim(); ++i)
    for (std::size_t j = 0; j < nh; ++j) {
      const RatVec br = ambient.bracket_basis(i, j);
      for (std::size_t k = nh; k < ambient.dim(); ++k)
        if (br[k] != 0)
          throw Error("the initial block is not an ideal of the ambient algebra");
      if (i < nh) {
        const RatVec own = c.algebra().bracket_basis(i, j);
        for (std::size_t k = 0; k < nh; ++k)
          if (br[k] != own[k]) throw Error("ambient brackets disagree with the ideal");
      }
    }
}

}  // namespace

RatMatrix cochain_action_matrix(const CochainComplex& c, std::size_t degree,
                                const LieAlgebra& ambient, const LieModule& ambient_module,
                                const RatVec& ambient_element) {
  check_ambient(c, ambient, ambient_module);
  const std::size_t nh = c.algebra().dim();
  const std::size_t mdim = c.module().dim();
  const auto& subs = c.subsets(degree);
  const std::size_t dim_cn = c.space_dim(static_cast<long>(degree));
  const RatMatrix rho = ambient_module.action_of(ambient_element);
  RatMatrix op(dim_cn, dim_cn);
  // Row-wise over evaluation subsets T:
  //   (X.phi)(T) = rho(X) phi(T) - sum_i phi(T_0, .., [X, T_i], .., T_{n-1}).
  for (std::size_t tp = 0; tp < subs.size(); ++tp) {
    const Mask t = subs[tp];
    // rho(X) phi(T): diagonal in the subset index.
    for (std::size_t mi = 0; mi < mdim; ++mi)
      for (std::size_t p = 0; p < mdim; ++p)
        if (rho(p, mi) != 0)
          op(p * subs.size() + tp, mi * subs.size() + tp) += rho(p, mi);
    // Substitution terms: replace T_i by the coordinates of [X, T_i].
    const auto elems = mask_elements(t);
    for (std::size_t i = 0; i < elems.size(); ++i) {
      RatVec ei(ambient.dim(), Rational(0));
      ei[elems[i]] = 1;
      const RatVec br = ambient.bracket(ambient_element, ei);
      const Mask rest = t & ~(Mask{1} << elems[i]);
      for (std::size_t cidx = 0; cidx < nh; ++cidx) {
        if (br[cidx] == 0) continue;
        if (rest & (Mask{1} << cidx)) continue;  // repeated argument
        const Mask substituted = rest | (Mask{1} << cidx);
        // phi evaluated with e_c in slot i: sort sign (-1)^{rank(c) - i}.
        const int rank = popcount_below(rest, cidx);
        const int sign = ((rank - static_cast<int>(i)) % 2 == 0) ? 1 : -1;
        const std::size_t spos = c.subset_position(degree, substituted);
        for (std::size_t mi = 0; mi < mdim; ++mi)
          op(mi * subs.size() + tp, mi * subs.size() + spos) -= Rational(sign) * br[cidx];
      }
    }
  }
  return op;
}

RatMatrix cochain_action_matrix_basis(const CochainComplex& c, std::size_t degree,
                                      const LieAlgebra& ambient,
                                      const LieModule& ambient_module,
                                      std::size_t ambient_basis_index) {
  RatVec x(ambient.dim(), Rational(0));
  x.at(ambient_basis_index) = 1;
  return cochain_action_matrix(c, degree, ambient, ambient_module, x);
}

RatVec ambient_action(const RatVec& ambient_element, const RatVec& cochain, std::size_t degree,
                      const CochainComplex& c, const LieAlgebra& ambient,
                      const LieModule& ambient_module) {
  return cochain_action_matrix(c, degree, ambient, ambient_module, ambient_element)
      .apply(cochain);
}

RatMatrix induced_action(const CochainComplex& c, const CohomologySpace& hn,
                         const RatMatrix& cochain_op) {
  // Solve op(rep_k) = sum_j a_{jk} rep_j + coboundary.
  const std::size_t dim_cn = c.space_dim(static_cast<long>(hn.degree));
  RatMatrix columns(dim_cn, hn.dim + hn.image.dim());
  for (std::size_t j = 0; j < hn.dim; ++j)
    for (std::size_t r = 0; r < dim_cn; ++r) columns(r, j) = hn.representatives(j, r);
  for (std::size_t j = 0; j < hn.image.dim(); ++j)
    for (std::size_t r = 0; r < dim_cn; ++r)
      columns(r, hn.dim + j) = hn.image.basis()(j, r);
  RatMatrix out(hn.dim, hn.dim);
  for (std::size_t k = 0; k < hn.dim; ++k) {
    const RatVec image_vec = cochain_op.apply(hn.representatives.row(k));
    if (!hn.kernel.contains(image_vec))
      throw Error("cochain operator does not preserve cocycles");
    const auto coords = solve_in_column_span(columns, image_vec);
    if (!coords) throw Error("internal: cocycle not expressible modulo coboundaries");
    for (std::size_t j = 0; j < hn.dim; ++j) out(j, k) = (*coords)[j];
  }
  return out;
}

std::vector<InvariantSpace> invariant_cohomology(const CochainComplex& c,
                                                 const LieAlgebra& ambient,
                                                 const LieModule& ambient_module) {
  check_ambient(c, ambient, ambient_module);
  const std::size_t nh = c.algebra().dim();
  std::vector<InvariantSpace> out;
  for (std::size_t n = 0; n <= c.top_degree(); ++n) {
    const CohomologySpace hn = cohomology(c, static_cast<long>(n));
    InvariantSpace inv;
    inv.degree = n;

    // Route 1: joint kernel of the induced actions on H^n.
    std::vector<RatMatrix> cochain_ops;
    for (std::size_t a = nh; a < ambient.dim(); ++a)
      cochain_ops.push_back(cochain_action_matrix_basis(c, n, ambient, ambient_module, a));
    RatMatrix stacked(hn.dim * cochain_ops.size(), hn.dim);
    for (std::size_t a = 0; a < cochain_ops.size(); ++a) {
      const RatMatrix induced = induced_action(c, hn, cochain_ops[a]);
      for (std::size_t r = 0; r < hn.dim; ++r)
        for (std::size_t cc = 0; cc < hn.dim; ++cc)
          stacked(a * hn.dim + r, cc) = induced(r, cc);
    }
    const Subspace joint =
        cochain_ops.empty() ? Subspace::full(hn.dim) : kernel_basis(stacked);
    inv.dim = joint.dim();
    inv.class_coords = joint.basis();

    // Route 2: cohomology of the annihilated subcomplex, giving cochain-level
    // annihilated representatives.
    const std::size_t dim_cn = c.space_dim(static_cast<long>(n));
    Subspace annihilated = Subspace::full(dim_cn);
    for (const auto& op : cochain_ops) annihilated = subspace_intersection(annihilated, kernel_basis(op));
    // Kernel of d restricted to the annihilated part, modulo d of the
    // annihilated part one degree down.
    Subspace closed_sub = subspace_intersection(annihilated, hn.kernel);
    Subspace boundaries_sub = Subspace::zero(dim_cn);
    if (n > 0) {
      const std::size_t dim_prev = c.space_dim(static_cast<long>(n) - 1);
      Subspace prev_ann = Subspace::full(dim_prev);
      for (std::size_t a = nh; a < ambient.dim(); ++a)
        prev_ann = subspace_intersection(
            prev_ann,
            kernel_basis(cochain_action_matrix_basis(c, n - 1, ambient, ambient_module, a)));
      std::vector<RatVec> imgs;
      for (std::size_t i = 0; i < prev_ann.dim(); ++i)
        imgs.push_back(c.differential(n - 1).apply(prev_ann.basis_vector(i)));
      boundaries_sub = Subspace::span_of_vectors(dim_cn, imgs);
    }
    const auto reps = quotient_basis(closed_sub, boundaries_sub);
    if (reps.size() != inv.dim)
      throw Error("not Q-split: annihilated subcomplex does not compute the invariants "
                  "in degree " + std::to_string(n));
    inv.cochain_reps = RatMatrix(reps.size(), dim_cn);
    for (std::size_t i = 0; i < reps.size(); ++i) inv.cochain_reps.set_row(i, reps[i]);
    out.push_back(std::move(inv));
  }
  return out;
}

Pairing Pairing::scalar() {
  Pairing p;
  p.m_dim = p.n_dim = p.p_dim = 1;
  p.table = {{RatVec{1}}};
  return p;
}

Pairing Pairing::module_times_q(std::size_t m_dim) {
  Pairing p;
  p.m_dim = m_dim;
  p.n_dim = 1;
  p.p_dim = m_dim;
  p.table.resize(m_dim, std::vector<RatVec>(1, RatVec(m_dim, Rational(0))));
  for (std::size_t i = 0; i < m_dim; ++i) p.table[i][0][i] = 1;
  return p;
}

Pairing Pairing::q_times_module(std::size_t m_dim) {
  Pairing p;
  p.m_dim = 1;
  p.n_dim = m_dim;
  p.p_dim = m_dim;
  p.table.resize(1, std::vector<RatVec>(m_dim, RatVec(m_dim, Rational(0))));
  for (std::size_t j = 0; j < m_dim; ++j) p.table[0][j][j] = 1;
  return p;
}

RatVec Pairing::pair(const RatVec& mv, const RatVec& nv) const {
  if (mv.size() != m_dim || nv.size() != n_dim) throw Error("pairing operand length mismatch");
  RatVec out(p_dim, Rational(0));
  for (std::size_t i = 0; i < m_dim; ++i) {
    if (mv[i] == 0) continue;
    for (std::size_t j = 0; j < n_dim; ++j) {
      if (nv[j] == 0) continue;
      vec_axpy(out, mv[i] * nv[j], table[i][j]);
    }
  }
  return out;
}

void validate_pairing(const Pairing& pr, const LieModule& m, const LieModule& n,
                      const LieModule& p) {
  if (pr.m_dim != m.dim() || pr.n_dim != n.dim() || pr.p_dim != p.dim())
    throw Error("pairing dimensions do not match the modules");
  const std::size_t gdim = m.algebra_dim();
  if (n.algebra_dim() != gdim || p.algebra_dim() != gdim)
    throw Error("pairing modules live over different algebras");
  for (std::size_t x = 0; x < gdim; ++x)
    for (std::size_t i = 0; i < pr.m_dim; ++i)
      for (std::size_t j = 0; j < pr.n_dim; ++j) {
        RatVec mi(pr.m_dim, Rational(0)), nj(pr.n_dim, Rational(0));
        mi[i] = 1;
        nj[j] = 1;
        const RatVec lhs = p.action(x).apply(pr.pair(mi, nj));
        const RatVec rhs =
            vec_add(pr.pair(m.action(x).apply(mi), nj), pr.pair(mi, n.action(x).apply(nj)));
        if (lhs != rhs)
          throw Error("pairing law fails for algebra element " + std::to_string(x) +
                      " on basis pair (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      }
}

RatVec cup(const CochainComplex& cm, const RatVec& phi, std::size_t i, const CochainComplex& cn,
           const RatVec& psi, std::size_t j, const CochainComplex& cp, const Pairing& pr,
           bool check_pairing) {
  if (!(cm.algebra().brackets() == cn.algebra().brackets()) ||
      !(cm.algebra().brackets() == cp.algebra().brackets()) ||
      cm.algebra().dim() != cn.algebra().dim() || cm.algebra().dim() != cp.algebra().dim())
    throw Error("cup factors live over different algebras");
  if (check_pairing && (!cm.module().is_trivial() || !cn.module().is_trivial()))
    validate_pairing(pr, cm.module(), cn.module(), cp.module());
  const std::size_t total = i + j;
  if (total > cp.top_degree()) return RatVec{};  // zero cochain above top degree
  if (phi.size() != cm.space_dim(static_cast<long>(i)) ||
      psi.size() != cn.space_dim(static_cast<long>(j)))
    throw Error("cochain length does not match degree");
  const auto& tsubs = cp.subsets(total);
  RatVec out(cp.space_dim(static_cast<long>(total)), Rational(0));
  for (std::size_t tp = 0; tp < tsubs.size(); ++tp) {
    const Mask t = tsubs[tp];
    RatVec value(pr.p_dim, Rational(0));
    // Split T into an i-part S (for phi) and its complement (for psi).
    Mask s = t;
    while (true) {
      if (static_cast<std::size_t>(std::popcount(s)) == i) {
        // Shuffle sign: product over elements of S of (-1)^{pos_in_T - rank_in_S}.
        int exponent = 0;
        {
          int pos = 0, rank = 0;
          for (Mask bit = 1; bit <= t && bit != 0; bit <<= 1) {
            if (!(t & bit)) continue;
            if (s & bit) {
              exponent += pos - rank;
              ++rank;
            }
            ++pos;
          }
        }
        const RatVec mv = cm.value_at(phi, i, s);
        const RatVec nv = cn.value_at(psi, j, t & ~s);
        if (!vec_is_zero(mv) && !vec_is_zero(nv)) {
          const RatVec paired = pr.pair(mv, nv);
          vec_axpy(value, Rational(exponent % 2 == 0 ? 1 : -1), paired);
        }
      }
      if (s == 0) break;
      s = (s - 1) & t;
    }
    for (std::size_t p = 0; p < pr.p_dim; ++p) out[p * tsubs.size() + tp] = value[p];
  }
  return out;
}

RatVec cup_trivial(const CochainComplex& c, const RatVec& phi, std::size_t i, const RatVec& psi,
                   std::size_t j) {
  return cup(c, phi, i, c, psi, j, c, Pairing::scalar());
}

}  // namespace solvcoh
