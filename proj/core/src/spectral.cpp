#include "solvcoh/spectral.hpp"

#include <bit>

namespace solvcoh {

const PageCell* Page::cell(std::size_t p, std::size_t q) const {
  const auto it = cells.find({p, q});
  return it == cells.end() ? nullptr : &it->second;
}

std::size_t Page::cell_dim(std::size_t p, std::size_t q) const {
  const PageCell* c = cell(p, q);
  return c ? c->dim : 0;
}

namespace {

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t out = 1;
  for (std::size_t i = 0; i < k; ++i) out = out * (n - i) / (i + 1);
  return out;
}

// Z_r at degree n, filtration p (p may be negative, the filtration clamps):
// {x in F^p C^n : d x in F^{p+r} C^{n+1}}.
Subspace z_space(const FilteredComplex& fc, long n, long p, long r) {
  if (n < 0 || n > static_cast<long>(fc.top_degree()))
    return Subspace::zero(0);
  const Subspace source = fc.filtered(n, p);
  if (source.dim() == 0) return source;
  if (n == static_cast<long>(fc.top_degree())) return source;  // d lands in 0
  const Subspace target = fc.filtered(n + 1, p + r);
  const std::size_t next_dim = fc.space_dim(n + 1);
  if (target.dim() == next_dim) return source;

  const RatMatrix& d = fc.differential(n);
  RatMatrix system(next_dim, source.dim() + target.dim());
  for (std::size_t j = 0; j < source.dim(); ++j) {
    const RatVec img = d.apply(source.basis_vector(j));
    for (std::size_t rr = 0; rr < next_dim; ++rr) system(rr, j) = img[rr];
  }
  for (std::size_t j = 0; j < target.dim(); ++j)
    for (std::size_t rr = 0; rr < next_dim; ++rr)
      system(rr, source.dim() + j) = -target.basis()(j, rr);
  const Subspace pairs = kernel_basis(system);
  std::vector<RatVec> vectors;
  for (std::size_t i = 0; i < pairs.dim(); ++i) {
    const RatVec lambda = pairs.basis_vector(i);
    RatVec x(fc.space_dim(n), Rational(0));
    for (std::size_t j = 0; j < source.dim(); ++j)
      vec_axpy(x, lambda[j], source.basis_vector(j));
    vectors.push_back(std::move(x));
  }
  return Subspace::span_of_vectors(fc.space_dim(n), vectors);
}

Subspace image_of_subspace(const RatMatrix& d, const Subspace& s, std::size_t target_dim) {
  std::vector<RatVec> images;
  for (std::size_t i = 0; i < s.dim(); ++i) images.push_back(d.apply(s.basis_vector(i)));
  return Subspace::span_of_vectors(target_dim, images);
}

// Denominator of E_r^{pq}: F^{p+1}-deeper cycles plus boundaries arriving
// from filtration p-r+1.
Subspace denominator_space(const FilteredComplex& fc, long n, long p, long r) {
  if (r == 0) return fc.filtered(n, p + 1);
  const Subspace deeper = z_space(fc, n, p + 1, r - 1);
  Subspace boundaries = Subspace::zero(fc.space_dim(n));
  if (n >= 1) {
    const Subspace source = z_space(fc, n - 1, p - (r - 1), r - 1);
    boundaries = image_of_subspace(fc.differential(n - 1), source, fc.space_dim(n));
  }
  return subspace_sum(deeper, boundaries);
}

// Coordinates of a vector in a cell: membership in the numerator, then the
// representative coefficients modulo the denominator.
std::optional<RatVec> project_to_cell(const PageCell& cell, const RatVec& v) {
  if (!cell.numerator.contains(v)) return std::nullopt;
  const std::size_t dim_c = cell.numerator.ambient_dim();
  RatMatrix columns(dim_c, cell.dim + cell.denominator.dim());
  for (std::size_t j = 0; j < cell.dim; ++j)
    for (std::size_t rr = 0; rr < dim_c; ++rr) columns(rr, j) = cell.representatives(j, rr);
  for (std::size_t j = 0; j < cell.denominator.dim(); ++j)
    for (std::size_t rr = 0; rr < dim_c; ++rr)
      columns(rr, cell.dim + j) = cell.denominator.basis()(j, rr);
  const auto coords = solve_in_column_span(columns, v);
  if (!coords) return std::nullopt;
  return RatVec(coords->begin(), coords->begin() + cell.dim);
}

}  // namespace

SpectralSequence compute_pages(const FilteredComplex& fc, std::size_t r_max) {
  fc.validate();
  SpectralSequence ss;
  ss.fc = fc;
  const std::size_t top = fc.top_degree();
  if (r_max == 0) r_max = top + 2;

  for (std::size_t r = 0; r <= r_max; ++r) {
    Page page;
    page.r = r;
    for (std::size_t n = 0; n <= top; ++n)
      for (std::size_t p = 0; p <= n; ++p) {
        const std::size_t q = n - p;
        PageCell cell;
        cell.p = p;
        cell.q = q;
        cell.numerator = z_space(fc, static_cast<long>(n), static_cast<long>(p),
                                 static_cast<long>(r));
        cell.denominator = denominator_space(fc, static_cast<long>(n), static_cast<long>(p),
                                             static_cast<long>(r));
        const auto reps = quotient_basis(cell.numerator, cell.denominator);
        cell.dim = reps.size();
        cell.representatives = RatMatrix(reps.size(), fc.space_dim(static_cast<long>(n)));
        for (std::size_t i = 0; i < reps.size(); ++i) cell.representatives.set_row(i, reps[i]);
        page.cells[{p, q}] = std::move(cell);
      }

    // Differentials d_r: E_r^{pq} -> E_r^{p+r, q-r+1}.
    for (auto& [key, cell] : page.cells) {
      const auto [p, q] = key;
      const std::size_t n = p + q;
      const long tq = static_cast<long>(q) - static_cast<long>(r) + 1;
      RatMatrix d_matrix(0, cell.dim);
      if (tq >= 0 && n + 1 <= top) {
        const PageCell* target = page.cell(p + r, static_cast<std::size_t>(tq));
        if (target) {
          d_matrix = RatMatrix(target->dim, cell.dim);
          for (std::size_t k = 0; k < cell.dim; ++k) {
            const RatVec dx = fc.differential(static_cast<long>(n)).apply(
                cell.representatives.row(k));
            const auto coords = project_to_cell(*target, dx);
            if (!coords)
              throw Error("internal: d_r not well-defined on the subquotient at (" +
                          std::to_string(p) + ", " + std::to_string(q) + "), r = " +
                          std::to_string(r));
            for (std::size_t i = 0; i < target->dim; ++i) d_matrix(i, k) = (*coords)[i];
          }
        }
      }
      // When the target leaves the first quadrant the cycle condition
      // already forces d(rep) into the zero filtration step.
      page.differentials[{p, q}] = std::move(d_matrix);
    }

    // d_r o d_r = 0 wherever composable.
    for (const auto& [key, d1] : page.differentials) {
      const auto [p, q] = key;
      const long tq = static_cast<long>(q) - static_cast<long>(r) + 1;
      if (tq < 0) continue;
      const auto it = page.differentials.find({p + r, static_cast<std::size_t>(tq)});
      if (it == page.differentials.end()) continue;
      const RatMatrix& d2 = it->second;
      if (d2.rows() == 0 || d1.rows() == 0 || d2.cols() != d1.rows()) continue;
      if (!(d2 * d1).is_zero())
        throw Error("internal: d_r composed with d_r is nonzero on page " + std::to_string(r));
    }
    ss.pages.push_back(std::move(page));
  }

  // Abutment data.
  for (std::size_t n = 0; n <= top; ++n) {
    const Subspace ker = kernel_basis(fc.differential(static_cast<long>(n)));
    const Subspace im = n == 0 ? Subspace::zero(fc.space_dim(static_cast<long>(n)))
                               : image_basis(fc.differential(static_cast<long>(n) - 1));
    ss.h_dims.push_back(ker.dim() - im.dim());
    std::vector<std::size_t> per_p;
    for (std::size_t p = 0; p <= n + 1; ++p) {
      const Subspace fp = fc.filtered(static_cast<long>(n), static_cast<long>(p));
      const std::size_t zk = subspace_intersection(fp, ker).dim();
      const std::size_t bk = subspace_intersection(fp, im).dim();
      per_p.push_back(zk - bk);
    }
    ss.abutment_dims.push_back(std::move(per_p));
  }

  // Stabilization: smallest r from which all later pages have the final dims
  // and vanishing differentials.
  auto page_dims = [&](const Page& page) {
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> dims;
    for (const auto& [key, cell] : page.cells) dims[key] = cell.dim;
    return dims;
  };
  const auto final_dims = page_dims(ss.pages.back());
  std::size_t stab = ss.pages.size() - 1;
  while (stab > 0) {
    const Page& prev = ss.pages[stab - 1];
    bool quiet = page_dims(prev) == final_dims;
    if (quiet)
      for (const auto& [key, d] : prev.differentials)
        if (!d.is_zero()) {
          quiet = false;
          break;
        }
    if (!quiet) break;
    --stab;
  }
  ss.stabilized_at = stab;
  return ss;
}

CheckResult e2_identification(const SpectralSequence& ss, const SemidirectPresentation& hull,
                              const HullModule& hm) {
  CheckResult result;
  const LieAlgebra g = semidirect(hull);
  const LieModule ambient = hm.ambient_module(hull);
  const CochainComplex cu = build_complex(hull.u, hm.u_module);
  const std::size_t utop = hull.u.dim();
  const std::size_t k = hull.t_dim;
  const Page& e2 = ss.pages.size() > 2 ? ss.pages[2] : ss.pages.back();

  for (std::size_t q = 0; q <= utop; ++q) {
    const CohomologySpace hq = cohomology(cu, static_cast<long>(q));
    std::vector<RatMatrix> induced;
    for (std::size_t a = 0; a < k; ++a)
      induced.push_back(induced_action(
          cu, hq, cochain_action_matrix_basis(cu, q, g, ambient, utop + a)));
    // Independent route: cohomology of the abelian torus algebra with
    // coefficients in H^q(u, M).
    const CochainComplex torus_side =
        build_complex(LieAlgebra::abelian(k), LieModule(hq.dim, induced));
    // Q-split route: annihilated classes times binomials.
    RatMatrix stacked(hq.dim * k, hq.dim);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t rr = 0; rr < hq.dim; ++rr)
        for (std::size_t cc = 0; cc < hq.dim; ++cc)
          stacked(a * hq.dim + rr, cc) = induced[a](rr, cc);
    const std::size_t inv_dim = k == 0 ? hq.dim : kernel_basis(stacked).dim();

    for (std::size_t p = 0; p <= k; ++p) {
      const std::size_t expected = cohomology(torus_side, static_cast<long>(p)).dim;
      const std::size_t expected_binomial = binomial(k, p) * inv_dim;
      const std::size_t actual = e2.cell_dim(p, q);
      if (expected != actual || expected_binomial != actual) {
        result.pass = false;
        result.detail = "E_2^{" + std::to_string(p) + "," + std::to_string(q) +
                        "} has dim " + std::to_string(actual) + ", expected " +
                        std::to_string(expected) + " (torus cochain route) and " +
                        std::to_string(expected_binomial) + " (annihilated-class route)";
        return result;
      }
    }
  }
  // Cells outside the torus range must vanish.
  for (const auto& [key, cell] : e2.cells)
    if (key.first > k && cell.dim != 0) {
      result.pass = false;
      result.detail = "E_2 has a nonzero cell beyond the torus filtration degree";
      return result;
    }
  result.pass = true;
  result.detail = "E_2 matches H^p(t, H^q(u, M)) in every bidegree";
  return result;
}

CheckResult abutment_check(const SpectralSequence& ss) {
  CheckResult result;
  const Page& last = ss.infinity_page();
  for (std::size_t n = 0; n <= ss.fc.top_degree(); ++n) {
    std::size_t total = 0;
    for (std::size_t p = 0; p <= n; ++p) total += last.cell_dim(p, n - p);
    if (total != ss.h_dims[n]) {
      result.pass = false;
      result.detail = "E_infinity total " + std::to_string(total) + " != dim H^" +
                      std::to_string(n) + " = " + std::to_string(ss.h_dims[n]);
      return result;
    }
    for (std::size_t p = 0; p <= n; ++p) {
      const std::size_t graded =
          ss.abutment_dims[n][p] - ss.abutment_dims[n][p + 1];
      if (graded != last.cell_dim(p, n - p)) {
        result.pass = false;
        result.detail = "filtration subquotient at (p, n) = (" + std::to_string(p) + ", " +
                        std::to_string(n) + ") has dim " + std::to_string(graded) +
                        " but E_infinity has " + std::to_string(last.cell_dim(p, n - p));
        return result;
      }
    }
  }
  result.pass = true;
  result.detail = "E_infinity subquotients match the filtered cohomology degreewise";
  return result;
}

CheckResult page_multiplicativity_check(const SpectralSequence& ss, const CochainComplex& cg) {
  CheckResult result;
  if (cg.module().dim() != 1 || !cg.module().is_trivial()) {
    result.pass = false;
    result.detail = "page multiplicativity is checked for trivial coefficients";
    return result;
  }
  const std::size_t top = ss.fc.top_degree();
  for (std::size_t r = 0; r <= 2 && r < ss.pages.size(); ++r) {
    const Page& page = ss.pages[r];
    for (const auto& [key1, cell1] : page.cells)
      for (const auto& [key2, cell2] : page.cells) {
        const std::size_t n1 = key1.first + key1.second, n2 = key2.first + key2.second;
        if (n1 + n2 > top) continue;
        const std::size_t bp = key1.first + key2.first;
        if (bp > n1 + n2) continue;
        const PageCell* product_cell = page.cell(bp, n1 + n2 - bp);
        if (!product_cell) continue;
        const long tq = static_cast<long>(n1 + n2 - bp) - static_cast<long>(r) + 1;
        const PageCell* target_cell =
            (tq >= 0 && n1 + n2 + 1 <= top) ? page.cell(bp + r, static_cast<std::size_t>(tq))
                                            : nullptr;
        for (std::size_t a = 0; a < cell1.dim; ++a)
          for (std::size_t b = 0; b < cell2.dim; ++b) {
            const RatVec x = cell1.representatives.row(a);
            const RatVec y = cell2.representatives.row(b);
            const RatVec xy = cup_trivial(cg, x, n1, y, n2);
            const auto xy_coords = project_to_cell(*product_cell, xy);
            if (!xy_coords) {
              result.pass = false;
              result.detail = "page product leaves its filtration cell at r = " +
                              std::to_string(r);
              return result;
            }
            if (!target_cell) continue;
            // d_r of the product.
            const auto itd = page.differentials.find({bp, n1 + n2 - bp});
            RatVec lhs(target_cell->dim, Rational(0));
            if (itd != page.differentials.end() && itd->second.rows() == target_cell->dim)
              lhs = itd->second.apply(*xy_coords);
            // Leibniz right-hand side with the total-degree sign.
            const RatVec dx = ss.fc.differential(static_cast<long>(n1)).apply(x);
            const RatVec dy = ss.fc.differential(static_cast<long>(n2)).apply(y);
            const RatVec dx_y = cup_trivial(cg, dx, n1 + 1, y, n2);
            const RatVec x_dy = cup_trivial(cg, x, n1, dy, n2 + 1);
            const auto c1 = project_to_cell(*target_cell, dx_y);
            const auto c2 = project_to_cell(*target_cell, x_dy);
            if (!c1 || !c2) {
              result.pass = false;
              result.detail = "Leibniz terms leave their filtration cells at r = " +
                              std::to_string(r);
              return result;
            }
            RatVec rhs = *c1;
            vec_axpy(rhs, Rational(n1 % 2 == 0 ? 1 : -1), *c2);
            if (lhs != rhs) {
              result.pass = false;
              result.detail = "Leibniz fails on page r = " + std::to_string(r) + " at cells (" +
                              std::to_string(key1.first) + "," + std::to_string(key1.second) +
                              ") x (" + std::to_string(key2.first) + "," +
                              std::to_string(key2.second) + ")";
              return result;
            }
          }
      }
  }
  result.pass = true;
  result.detail = "page products satisfy Leibniz for r = 0, 1, 2";
  return result;
}

namespace {

struct ModelCell {
  std::size_t p = 0;
  Mask mask = 0;
  std::size_t cls = 0;
};

// One side of the decomposition: the complex over g, the complex over u,
// annihilated invariant representatives, and their lifts phi~ cup omega_S.
struct ModelSide {
  CochainComplex cg;  // over g, with the side's module
  CochainComplex cu;  // over u, with the side's module
  std::vector<InvariantSpace> inv;
  std::vector<std::vector<ModelCell>> cells;  // per total degree
  std::vector<RatMatrix> lifts;               // per total degree, rows in C^n(g)
  std::vector<RatMatrix> lift_solvers;        // per degree: [lift^T | Im d_g^T]
  std::vector<Subspace> g_images;             // Im d_g^{n-1}
  std::size_t u_dim = 0, k = 0;
};

RatVec extend_to_g(const CochainComplex& cu, const CochainComplex& cg, const RatVec& phi,
                   std::size_t degree) {
  RatVec out(cg.space_dim(static_cast<long>(degree)), Rational(0));
  const auto& usubs = cu.subsets(degree);
  const auto& gsubs = cg.subsets(degree);
  const std::size_t mdim = cu.module().dim();
  for (std::size_t mi = 0; mi < mdim; ++mi)
    for (std::size_t sp = 0; sp < usubs.size(); ++sp) {
      const Rational& c = phi[mi * usubs.size() + sp];
      if (c == 0) continue;
      out[mi * gsubs.size() + cg.subset_position(degree, usubs[sp])] = c;
    }
  return out;
}

RatVec torus_form(const CochainComplex& cg_trivial, Mask gen_mask, std::size_t u_dim) {
  const std::size_t p = static_cast<std::size_t>(std::popcount(gen_mask));
  RatVec out(cg_trivial.space_dim(static_cast<long>(p)), Rational(0));
  const Mask shifted = gen_mask << u_dim;
  out[cg_trivial.subset_position(p, shifted)] = 1;
  return out;
}

ModelSide build_model_side(const SemidirectPresentation& hull, const HullModule& hm,
                           const CochainComplex& cg_trivial) {
  ModelSide side;
  side.u_dim = hull.u.dim();
  side.k = hull.t_dim;
  const LieAlgebra g = semidirect(hull);
  const LieModule ambient = hm.ambient_module(hull);
  side.cg = build_complex(g, ambient);
  side.cu = build_complex(hull.u, hm.u_module);
  side.inv = invariant_cohomology(side.cu, g, ambient);

  const std::size_t total_top = side.u_dim + side.k;
  side.cells.resize(total_top + 1);
  side.lifts.resize(total_top + 1);
  side.lift_solvers.resize(total_top + 1);
  side.g_images.resize(total_top + 1);
  const Pairing pairing = Pairing::module_times_q(hm.u_module.dim());
  validate_pairing(pairing, ambient, LieModule::trivial(g), ambient);

  for (std::size_t n = 0; n <= total_top; ++n) {
    std::vector<RatVec> rows;
    for (std::size_t p = 0; p <= std::min(n, side.k); ++p) {
      const std::size_t q = n - p;
      if (q > side.u_dim) continue;
      const Mask limit = Mask{1} << side.k;
      for (Mask mask = 0; mask < limit; ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) != p) continue;
        for (std::size_t cls = 0; cls < side.inv[q].dim; ++cls) {
          side.cells[n].push_back({p, mask, cls});
          const RatVec extended =
              extend_to_g(side.cu, side.cg, side.inv[q].cochain_reps.row(cls), q);
          const RatVec omega = torus_form(cg_trivial, mask, side.u_dim);
          RatVec lift = cup(side.cg, extended, q, cg_trivial, omega, p, side.cg, pairing,
                            false);
          if (lift.empty()) lift.assign(side.cg.space_dim(static_cast<long>(n)), Rational(0));
          if (!vec_is_zero(side.cg.differential(n).apply(lift)))
            throw Error("internal: lifted invariant class is not a cocycle");
          rows.push_back(std::move(lift));
        }
      }
    }
    side.lifts[n] = RatMatrix(rows.size(), side.cg.space_dim(static_cast<long>(n)));
    for (std::size_t i = 0; i < rows.size(); ++i) side.lifts[n].set_row(i, rows[i]);
    side.g_images[n] = n == 0
                           ? Subspace::zero(side.cg.space_dim(0))
                           : image_basis(side.cg.differential(n - 1));
    const std::size_t dim_c = side.cg.space_dim(static_cast<long>(n));
    RatMatrix columns(dim_c, rows.size() + side.g_images[n].dim());
    for (std::size_t j = 0; j < rows.size(); ++j)
      for (std::size_t rr = 0; rr < dim_c; ++rr) columns(rr, j) = side.lifts[n](j, rr);
    for (std::size_t j = 0; j < side.g_images[n].dim(); ++j)
      for (std::size_t rr = 0; rr < dim_c; ++rr)
        columns(rr, rows.size() + j) = side.g_images[n].basis()(j, rr);
    side.lift_solvers[n] = std::move(columns);
  }
  return side;
}

// True when the lifted classes form a basis of H^n(g, module).
bool lifted_basis_ok(const ModelSide& side, std::size_t n, std::string* detail) {
  const CohomologySpace hn = cohomology(side.cg, static_cast<long>(n));
  const std::size_t count = side.lifts[n].rows();
  if (count != hn.dim) {
    if (detail)
      *detail = "degree " + std::to_string(n) + ": " + std::to_string(count) +
                " lifted classes vs dim H = " + std::to_string(hn.dim);
    return false;
  }
  Subspace span = side.g_images[n];
  for (std::size_t i = 0; i < count; ++i)
    span = subspace_sum(span,
                        Subspace::span_of_vectors(span.ambient_dim(), {side.lifts[n].row(i)}));
  if (span.dim() != side.g_images[n].dim() + count) {
    if (detail)
      *detail = "degree " + std::to_string(n) + ": lifted classes are dependent modulo "
                "coboundaries";
    return false;
  }
  return true;
}

// Coordinates of a cocycle in the lifted basis modulo coboundaries.
std::optional<RatVec> class_in_lift_basis(const ModelSide& side, std::size_t n,
                                          const RatVec& cocycle) {
  const auto coords = solve_in_column_span(side.lift_solvers[n], cocycle);
  if (!coords) return std::nullopt;
  return RatVec(coords->begin(), coords->begin() + side.lifts[n].rows());
}

// Structure constants of the model product between an M-side and the Q-side:
// invariant representatives are cupped in the u-complex and reduced against
// the M-side invariant representatives modulo u-coboundaries.
std::optional<RatVec> invariant_product_coords(const ModelSide& m_side,
                                               const ModelSide& q_side, std::size_t qa,
                                               std::size_t ca, std::size_t qb, std::size_t cb) {
  const std::size_t total = qa + qb;
  if (total > m_side.u_dim) return RatVec{};  // zero target
  const Pairing pairing = Pairing::module_times_q(m_side.cu.module().dim());
  const RatVec product =
      cup(m_side.cu, m_side.inv[qa].cochain_reps.row(ca), qa, q_side.cu,
          q_side.inv[qb].cochain_reps.row(cb), qb, m_side.cu, pairing, false);
  const std::size_t dim_c = m_side.cu.space_dim(static_cast<long>(total));
  const Subspace im = total == 0 ? Subspace::zero(dim_c)
                                 : image_basis(m_side.cu.differential(total - 1));
  RatMatrix columns(dim_c, m_side.inv[total].dim + im.dim());
  for (std::size_t j = 0; j < m_side.inv[total].dim; ++j)
    for (std::size_t rr = 0; rr < dim_c; ++rr)
      columns(rr, j) = m_side.inv[total].cochain_reps(j, rr);
  for (std::size_t j = 0; j < im.dim(); ++j)
    for (std::size_t rr = 0; rr < dim_c; ++rr)
      columns(rr, m_side.inv[total].dim + j) = im.basis()(j, rr);
  RatVec padded = product;
  if (padded.empty()) padded.assign(dim_c, Rational(0));
  const auto coords = solve_in_column_span(columns, padded);
  if (!coords) return std::nullopt;
  return RatVec(coords->begin(), coords->begin() + m_side.inv[total].dim);
}

// Verifies that honest products of lifted classes match the signed tensor
// model on every basis pair (m-side times q-side).
bool model_products_match(const ModelSide& m_side, const ModelSide& q_side,
                          const CochainComplex& cg_trivial, std::string* detail) {
  const std::size_t total_top = m_side.u_dim + m_side.k;
  const Pairing pairing = Pairing::module_times_q(m_side.cu.module().dim());
  validate_pairing(pairing, m_side.cu.module(), q_side.cu.module(), m_side.cu.module());
  for (std::size_t i = 0; i <= total_top; ++i)
    for (std::size_t j = 0; i + j <= total_top; ++j) {
      for (std::size_t a = 0; a < m_side.cells[i].size(); ++a)
        for (std::size_t b = 0; b < q_side.cells[j].size(); ++b) {
          const ModelCell& ca = m_side.cells[i][a];
          const ModelCell& cb = q_side.cells[j][b];
          const std::size_t qa = i - ca.p, qb = j - cb.p;
          // Honest product in C^*(g).
          RatVec w = cup(m_side.cg, m_side.lifts[i].row(a), i, q_side.cg,
                         q_side.lifts[j].row(b), j, m_side.cg, pairing, false);
          if (w.empty()) w.assign(m_side.cg.space_dim(static_cast<long>(i + j)), Rational(0));
          const auto lhs = class_in_lift_basis(m_side, i + j, w);
          if (!lhs) {
            if (detail) *detail = "product class falls outside the lifted basis";
            return false;
          }
          // Model product.
          RatVec rhs(m_side.cells[i + j].size(), Rational(0));
          if (!(ca.mask & cb.mask) && qa + qb <= m_side.u_dim) {
            const auto inv_coords =
                invariant_product_coords(m_side, q_side, qa, ca.cls, qb, cb.cls);
            if (!inv_coords) {
              if (detail) *detail = "invariant classes are not closed under the pairing";
              return false;
            }
            const int sign = merge_sign(ca.mask, cb.mask) * ((ca.p * qb) % 2 == 0 ? 1 : -1);
            const Mask mask = ca.mask | cb.mask;
            for (std::size_t t = 0; t < m_side.cells[i + j].size(); ++t) {
              const ModelCell& ct = m_side.cells[i + j][t];
              if (ct.mask != mask || ct.p != ca.p + cb.p) continue;
              rhs[t] = Rational(sign) * (*inv_coords)[ct.cls];
            }
          }
          if (*lhs != rhs) {
            if (detail)
              *detail = "sign rule fails at degrees (" + std::to_string(i) + ", " +
                        std::to_string(j) + "), cells (" + std::to_string(a) + ", " +
                        std::to_string(b) + ")";
            return false;
          }
        }
    }
  (void)cg_trivial;
  return true;
}

Subspace joint_group_invariants(const UnipotentGroupCohomology& ug, std::size_t q) {
  const std::size_t hdim = ug.spaces[q].dim;
  const std::size_t k = ug.actions[q].size();
  if (k == 0) return Subspace::full(hdim);
  RatMatrix stacked(hdim * k, hdim);
  for (std::size_t j = 0; j < k; ++j) {
    const RatMatrix diff = ug.actions[q][j] - RatMatrix::identity(hdim);
    for (std::size_t r = 0; r < hdim; ++r)
      for (std::size_t c = 0; c < hdim; ++c) stacked(j * hdim + r, c) = diff(r, c);
  }
  return kernel_basis(stacked);
}

std::optional<std::string> hypothesis_failure(const DenseSubgroupData& d) {
  for (const auto& gen : d.torus_gens)
    if (gen.is_matrix_mode())
      return "torus generator is a declared automorphism, not a split-torus element "
             "(not Q-split)";
  const DensityCertificate density = is_zariski_dense_unipotent(d);
  if (!density.cert.yes()) return "unipotent density fails: " + density.cert.justification;
  std::vector<RatVec> coords;
  for (const auto& gen : d.torus_gens) coords.push_back(gen.coordinates);
  const Certificate tdensity = torus_density_check(coords, d.hull.t_dim);
  if (!tdensity.yes()) return "torus density fails: " + tdensity.justification;
  const Certificate disc = torus_discreteness_check(coords, d.hull.t_dim);
  if (!disc.yes())
    return "discreteness fails (" + disc.verdict_string() + "): " + disc.justification;
  if (d.torus_gens.size() != d.hull.t_dim)
    return "torus part has rank " + std::to_string(d.torus_gens.size()) +
           " but the split torus has dimension " + std::to_string(d.hull.t_dim);
  return std::nullopt;
}

}  // namespace

ComparisonResult comparison(const SpectralSequence& ss_lie, const DenseSubgroupData& d,
                            const HullModule& hm) {
  ComparisonResult result;
  if (const auto failure = hypothesis_failure(d)) {
    result.refused = true;
    result.pass = false;
    result.detail = "refused: " + *failure;
    return result;
  }
  const SemidirectPresentation& hull = d.hull;
  const LieAlgebra g = semidirect(hull);
  const LieModule ambient = hm.ambient_module(hull);
  const CochainComplex cu = build_complex(hull.u, hm.u_module);
  const UnipotentGroupCohomology ug = unipotent_group_cohomology(d, hm);
  const std::size_t utop = hull.u.dim();
  const std::size_t k = hull.t_dim;
  const Page& e2 = ss_lie.pages.size() > 2 ? ss_lie.pages[2] : ss_lie.pages.back();

  for (std::size_t q = 0; q <= utop; ++q) {
    // Group-side Koszul model for H^p(Gamma_T, H^q(Gamma_U, M)).
    const KoszulCohomology koszul = koszul_zk_cohomology(ug.spaces[q].dim, ug.actions[q]);
    for (std::size_t p = 0; p <= k; ++p) {
      const std::size_t lie_dim = e2.cell_dim(p, q);
      const std::size_t group_dim = koszul.dims[p];
      result.e2_dims[{p, q}] = {lie_dim, group_dim};
      if (lie_dim != group_dim) {
        result.pass = false;
        result.detail = "f_2 is not an isomorphism at (p, q) = (" + std::to_string(p) + ", " +
                        std::to_string(q) + "): " + std::to_string(lie_dim) + " vs " +
                        std::to_string(group_dim);
        return result;
      }
    }
    // The identity on H^q(u, M) must match the two invariant subspaces.
    const CohomologySpace hq = cohomology(cu, static_cast<long>(q));
    std::vector<RatMatrix> induced;
    for (std::size_t a = 0; a < k; ++a)
      induced.push_back(
          induced_action(cu, hq, cochain_action_matrix_basis(cu, q, g, ambient, utop + a)));
    RatMatrix stacked(hq.dim * k, hq.dim);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t r = 0; r < hq.dim; ++r)
        for (std::size_t c = 0; c < hq.dim; ++c) stacked(a * hq.dim + r, c) = induced[a](r, c);
    const Subspace lie_inv = k == 0 ? Subspace::full(hq.dim) : kernel_basis(stacked);
    const Subspace group_inv = joint_group_invariants(ug, q);
    if (!(lie_inv == group_inv)) {
      result.pass = false;
      result.detail = "annihilated classes and group-invariant classes differ in degree " +
                      std::to_string(q);
      return result;
    }
  }

  // Abutment comparison: Theorem-level conclusion at desk scale.
  const GroupCohModel model = wang_tower(d, hm);
  result.group_dims = model.dims;
  result.lie_dims = ss_lie.h_dims;
  const std::size_t degrees = std::max(result.group_dims.size(), result.lie_dims.size());
  for (std::size_t n = 0; n < degrees; ++n) {
    const std::size_t a = n < result.lie_dims.size() ? result.lie_dims[n] : 0;
    const std::size_t b = n < result.group_dims.size() ? result.group_dims[n] : 0;
    if (a != b) {
      result.pass = false;
      result.detail = "abutment mismatch at degree " + std::to_string(n);
      return result;
    }
  }
  result.pass = true;
  result.detail = "f_2 is a componentwise isomorphism and the abutments agree";
  return result;
}

KunnethResult kunneth_decomposition(const SemidirectPresentation& hull, const HullModule& hm,
                                    std::size_t degree) {
  KunnethResult result;
  const HullModule trivial = HullModule::trivial(hull);
  const LieAlgebra g = semidirect(hull);
  const CochainComplex cg_trivial = build_complex(g, trivial.ambient_module(hull));
  const ModelSide m_side = build_model_side(hull, hm, cg_trivial);
  const ModelSide q_side =
      hm.u_module.dim() == 1 && hm.u_module.is_trivial()
          ? m_side
          : build_model_side(hull, trivial, cg_trivial);

  for (std::size_t i = 0; i <= std::min<std::size_t>(degree, hull.u.dim()); ++i) {
    const std::size_t j = degree - i;
    if (j > hull.t_dim) continue;
    KunnethRow row;
    row.i = i;
    row.j = j;
    row.invariant_dim = m_side.inv[i].dim;
    row.exterior_dim = binomial(hull.t_dim, j);
    result.expected_total += row.invariant_dim * row.exterior_dim;
    result.table.push_back(row);
  }
  result.direct_dim = cohomology(m_side.cg, static_cast<long>(degree)).dim;
  if (result.expected_total != result.direct_dim) {
    result.pass = false;
    result.detail = "decomposition total " + std::to_string(result.expected_total) +
                    " != dim H^" + std::to_string(degree) + " = " +
                    std::to_string(result.direct_dim);
    return result;
  }
  std::string detail;
  if (!lifted_basis_ok(m_side, degree, &detail)) {
    result.pass = false;
    result.detail = detail;
    return result;
  }
  if (!model_products_match(m_side, q_side, cg_trivial, &detail)) {
    result.pass = false;
    result.detail = detail;
    return result;
  }
  result.pass = true;
  result.detail = "decomposition, lifted basis, and sign rule verified";
  return result;
}

PhiResult phi_ring_map(const SemidirectPresentation& hull, const DenseSubgroupData& d,
                       const HullModule& hm) {
  PhiResult result;
  if (const auto failure = hypothesis_failure(d)) {
    result.refused = true;
    result.pass = false;
    result.detail = "refused: " + *failure;
    return result;
  }
  const HullModule trivial = HullModule::trivial(hull);
  const LieAlgebra g = semidirect(hull);
  const CochainComplex cg_trivial = build_complex(g, trivial.ambient_module(hull));
  const ModelSide m_side = build_model_side(hull, hm, cg_trivial);
  const bool module_is_trivial = hm.u_module.dim() == 1 && hm.u_module.is_trivial();
  const ModelSide q_side =
      module_is_trivial ? m_side : build_model_side(hull, trivial, cg_trivial);

  // The group side must see the same invariant classes through its own
  // eigenvalue actions; hypothesis certificates make the two agree.
  const UnipotentGroupCohomology ug_m = unipotent_group_cohomology(d, hm);
  const UnipotentGroupCohomology ug_q =
      module_is_trivial ? ug_m : unipotent_group_cohomology(d, trivial);
  for (std::size_t q = 0; q <= hull.u.dim(); ++q) {
    const Subspace lie_m = Subspace::span_of_rows(m_side.inv[q].class_coords.cols(),
                                                  m_side.inv[q].class_coords);
    if (!(lie_m == joint_group_invariants(ug_m, q))) {
      result.pass = false;
      result.detail = "group and algebra invariants differ in degree " + std::to_string(q);
      return result;
    }
    const Subspace lie_q = Subspace::span_of_rows(q_side.inv[q].class_coords.cols(),
                                                  q_side.inv[q].class_coords);
    if (!(lie_q == joint_group_invariants(ug_q, q))) {
      result.pass = false;
      result.detail = "group and algebra invariants differ in degree " + std::to_string(q) +
                      " (trivial coefficients)";
      return result;
    }
  }

  // Degreewise isomorphism through the lifted bases.
  const std::size_t total_top = hull.u.dim() + hull.t_dim;
  for (std::size_t n = 0; n <= total_top; ++n) {
    std::string detail;
    if (!lifted_basis_ok(m_side, n, &detail)) {
      result.pass = false;
      result.detail = detail;
      return result;
    }
    result.dims.push_back(m_side.lifts[n].rows());
  }

  // Multiplicativity on all basis pairs.
  std::string detail;
  if (!model_products_match(m_side, q_side, cg_trivial, &detail)) {
    result.pass = false;
    result.detail = detail;
    return result;
  }
  result.pass = true;
  result.detail = "phi is a degreewise isomorphism commuting with cup on all basis pairs";
  return result;
}

}  // namespace solvcoh
