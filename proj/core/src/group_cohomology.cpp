#include "solvcoh/group_cohomology.hpp"

#include <algorithm>
#include <bit>

namespace solvcoh {

HullModule HullModule::trivial(const SemidirectPresentation& p) {
  HullModule hm;
  hm.u_module = LieModule::trivial(p.u);
  hm.t_actions.assign(p.t_dim, RatMatrix::zero(1, 1));
  return hm;
}

LieModule HullModule::ambient_module(const SemidirectPresentation& p) const {
  return semidirect_module(p, u_module, t_actions);
}

namespace {

// Rational power with integer exponent.
Rational rational_power(const Rational& base, const Rational& exponent) {
  if (!is_integer(exponent))
    throw Error("torus weight " + rational_to_string(exponent) +
                " is not an integer; the generator action is not rational");
  Integer e = numerator(exponent);
  const bool negative = e < 0;
  if (negative) e = -e;
  Rational out = 1;
  Rational b = base;
  while (e > 0) {
    if (e % 2 == 1) out *= b;
    b *= b;
    e /= 2;
  }
  return negative ? Rational(1) / out : out;
}

// Action of a coordinate-mode generator on H^q: diagonal with eigenvalue
// prod_a s_a^{W_a} on the joint weight-W space of the induced torus actions.
RatMatrix coordinate_generator_action(const std::vector<RatMatrix>& induced,
                                      const RatVec& coords, std::size_t dim) {
  const auto decomposition = simultaneous_eigenspaces(induced, dim);
  RatMatrix p(dim, dim);
  RatVec eigenvalues(dim);
  std::size_t col = 0;
  for (const auto& [weight, space] : decomposition) {
    Rational mu = 1;
    for (std::size_t a = 0; a < coords.size(); ++a) mu *= rational_power(coords[a], weight[a]);
    for (std::size_t i = 0; i < space.dim(); ++i, ++col) {
      const RatVec v = space.basis_vector(i);
      for (std::size_t r = 0; r < dim; ++r) p(r, col) = v[r];
      eigenvalues[col] = mu;
    }
  }
  if (col != dim) throw Error("internal: joint eigenspaces do not fill H^q");
  return p * RatMatrix::diagonal(eigenvalues) * inverse(p);
}

// Cochain-level pullback operator of a declared automorphism pair (A on u,
// B on M): (T phi)(Y_1..Y_q) = B phi(A^{-1} Y_1, ..., A^{-1} Y_q).
RatMatrix automorphism_cochain_operator(const CochainComplex& c, std::size_t degree,
                                        const RatMatrix& a_inv, const RatMatrix& b) {
  const auto& subs = c.subsets(degree);
  const std::size_t mdim = c.module().dim();
  RatMatrix op(c.space_dim(static_cast<long>(degree)), c.space_dim(static_cast<long>(degree)));
  for (std::size_t mi = 0; mi < mdim; ++mi)
    for (std::size_t sp = 0; sp < subs.size(); ++sp) {
      const std::size_t colidx = mi * subs.size() + sp;
      const auto s_elems = mask_elements(subs[sp]);
      for (std::size_t tp = 0; tp < subs.size(); ++tp) {
        const auto t_elems = mask_elements(subs[tp]);
        // det of the submatrix a_inv[S rows, T cols].
        const std::size_t q = s_elems.size();
        Rational det = q == 0 ? Rational(1) : Rational(0);
        if (q > 0) {
          // Leibniz expansion over permutations; degrees here are tiny.
          std::vector<std::size_t> perm(q);
          for (std::size_t i = 0; i < q; ++i) perm[i] = i;
          do {
            int inversions = 0;
            for (std::size_t i = 0; i < q; ++i)
              for (std::size_t j = i + 1; j < q; ++j)
                if (perm[i] > perm[j]) ++inversions;
            Rational term = inversions % 2 == 0 ? 1 : -1;
            for (std::size_t i = 0; i < q; ++i)
              term *= a_inv(s_elems[i], t_elems[perm[i]]);
            det += term;
          } while (std::next_permutation(perm.begin(), perm.end()));
        }
        if (det == 0) continue;
        for (std::size_t p = 0; p < mdim; ++p) {
          if (b(p, mi) == 0) continue;
          op(p * subs.size() + tp, colidx) += det * b(p, mi);
        }
      }
    }
  return op;
}

}  // namespace

UnipotentGroupCohomology unipotent_group_cohomology(const DenseSubgroupData& d,
                                                    const HullModule& hm) {
  const DensityCertificate density = is_zariski_dense_unipotent(d);
  if (!density.cert.yes())
    throw Error("unipotent part is not Zariski dense: " + density.cert.justification);

  UnipotentGroupCohomology out;
  out.complex = build_complex(d.hull.u, hm.u_module);

  // The semidirect product is only needed for coordinate-mode generators;
  // declared automorphism towers stay group-side even when the hull's
  // derivations are not Q-split.
  bool any_coordinate_mode = false;
  for (const auto& gen : d.torus_gens)
    if (!gen.is_matrix_mode()) any_coordinate_mode = true;
  std::optional<LieAlgebra> g;
  std::optional<LieModule> ambient;
  if (any_coordinate_mode) {
    g = semidirect(d.hull);
    ambient = hm.ambient_module(d.hull);
  }

  const std::size_t top = out.complex.top_degree();
  for (std::size_t q = 0; q <= top; ++q)
    out.spaces.push_back(cohomology(out.complex, static_cast<long>(q)));

  out.actions.resize(top + 1);
  for (std::size_t q = 0; q <= top; ++q) {
    // Induced Lie-algebra actions of the torus basis on H^q, shared by all
    // coordinate-mode generators.
    std::vector<RatMatrix> induced;
    if (any_coordinate_mode)
      for (std::size_t a = 0; a < d.hull.t_dim; ++a)
        induced.push_back(induced_action(
            out.complex, out.spaces[q],
            cochain_action_matrix_basis(out.complex, q, *g, *ambient, d.hull.u.dim() + a)));
    for (const auto& gen : d.torus_gens) {
      if (gen.is_matrix_mode()) {
        const RatMatrix a_inv = inverse(*gen.automorphism);
        const RatMatrix b = gen.module_automorphism
                                ? *gen.module_automorphism
                                : RatMatrix::identity(hm.u_module.dim());
        const RatMatrix op = automorphism_cochain_operator(out.complex, q, a_inv, b);
        // The pullback must be a chain map, otherwise the declared pair is
        // not an automorphism of (u, M).
        if (q < top) {
          const RatMatrix next = automorphism_cochain_operator(out.complex, q + 1, a_inv, b);
          if (!(next * out.complex.differential(q) == out.complex.differential(q) * op))
            throw Error("declared automorphism does not commute with the differential");
        }
        out.actions[q].push_back(induced_action(out.complex, out.spaces[q], op));
      } else {
        if (gen.coordinates.size() != d.hull.t_dim)
          throw Error("torus generator has wrong length");
        out.actions[q].push_back(
            coordinate_generator_action(induced, gen.coordinates, out.spaces[q].dim));
      }
    }
  }
  return out;
}

KoszulCohomology koszul_zk_cohomology(std::size_t v_dim, const std::vector<RatMatrix>& ops) {
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = i + 1; j < ops.size(); ++j)
      if (!RatMatrix::commutator(ops[i], ops[j]).is_zero())
        throw Error("Koszul operators " + std::to_string(i) + " and " + std::to_string(j) +
                    " do not commute");
  std::vector<RatMatrix> shifted;
  shifted.reserve(ops.size());
  for (const auto& op : ops) {
    if (op.rows() != v_dim || op.cols() != v_dim) throw Error("Koszul operator has wrong shape");
    shifted.push_back(op - RatMatrix::identity(v_dim));
  }
  KoszulCohomology out;
  out.complex = build_complex(LieAlgebra::abelian(ops.size()), LieModule(v_dim, shifted));
  for (std::size_t p = 0; p <= ops.size(); ++p) {
    out.spaces.push_back(cohomology(out.complex, static_cast<long>(p)));
    out.dims.push_back(out.spaces.back().dim);
  }
  return out;
}

int merge_sign(Mask s1, Mask s2) {
  int inversions = 0;
  for (const auto s : mask_elements(s1)) inversions += std::popcount(s2 & ((Mask{1} << s) - 1));
  return inversions % 2 == 0 ? 1 : -1;
}

TensorModel tensor_model(const UnipotentGroupCohomology& ug) {
  TensorModel model;
  model.k = ug.actions.empty() ? 0 : ug.actions[0].size();
  const std::size_t utop = ug.complex.top_degree();
  model.inv_class_coords.resize(utop + 1);
  model.inv_reps.resize(utop + 1);
  for (std::size_t q = 0; q <= utop; ++q) {
    const std::size_t hdim = ug.spaces[q].dim;
    RatMatrix stacked(hdim * model.k, hdim);
    for (std::size_t j = 0; j < model.k; ++j) {
      const RatMatrix diff = ug.actions[q][j] - RatMatrix::identity(hdim);
      for (std::size_t r = 0; r < hdim; ++r)
        for (std::size_t c = 0; c < hdim; ++c) stacked(j * hdim + r, c) = diff(r, c);
    }
    const Subspace joint = model.k == 0 ? Subspace::full(hdim) : kernel_basis(stacked);
    model.inv_class_coords[q] = joint.basis();
    RatMatrix reps(joint.dim(), ug.complex.space_dim(static_cast<long>(q)));
    for (std::size_t i = 0; i < joint.dim(); ++i) {
      RatVec rep(ug.complex.space_dim(static_cast<long>(q)), Rational(0));
      for (std::size_t j = 0; j < hdim; ++j)
        vec_axpy(rep, joint.basis()(i, j), ug.spaces[q].representatives.row(j));
      reps.set_row(i, rep);
    }
    model.inv_reps[q] = std::move(reps);
  }

  const std::size_t total_top = utop + model.k;
  model.basis.resize(total_top + 1);
  model.dims.resize(total_top + 1, 0);
  for (std::size_t n = 0; n <= total_top; ++n) {
    for (std::size_t p = 0; p <= std::min(n, model.k); ++p) {
      const std::size_t q = n - p;
      if (q > utop) continue;
      const Mask limit = Mask{1} << model.k;
      for (Mask mask = 0; mask < limit; ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) != p) continue;
        for (std::size_t cls = 0; cls < model.inv_class_coords[q].rows(); ++cls)
          model.basis[n].push_back({p, mask, cls});
      }
    }
    model.dims[n] = model.basis[n].size();
  }
  return model;
}

GradedRing tensor_model_ring(const TensorModel& model, const UnipotentGroupCohomology& ug) {
  if (ug.complex.module().dim() != 1 || !ug.complex.module().is_trivial())
    throw Error("the model ring requires trivial coefficients");
  const std::size_t top = model.dims.size() - 1;
  const std::size_t utop = ug.complex.top_degree();

  // Structure constants of the invariant subring: products of invariant
  // representatives reduced against the invariant basis of the target degree.
  std::map<std::pair<std::size_t, std::size_t>, RatMatrix> inv_products;
  for (std::size_t i = 0; i <= utop; ++i)
    for (std::size_t j = 0; i + j <= utop; ++j) {
      const std::size_t total = i + j;
      const std::size_t di = model.inv_reps[i].rows(), dj = model.inv_reps[j].rows();
      RatMatrix constants(di * dj, model.inv_reps[total].rows());
      const std::size_t dim_c = ug.complex.space_dim(static_cast<long>(total));
      RatMatrix columns(dim_c,
                        model.inv_reps[total].rows() + ug.spaces[total].image.dim());
      for (std::size_t t = 0; t < model.inv_reps[total].rows(); ++t)
        for (std::size_t r = 0; r < dim_c; ++r) columns(r, t) = model.inv_reps[total](t, r);
      for (std::size_t t = 0; t < ug.spaces[total].image.dim(); ++t)
        for (std::size_t r = 0; r < dim_c; ++r)
          columns(r, model.inv_reps[total].rows() + t) = ug.spaces[total].image.basis()(t, r);
      for (std::size_t a = 0; a < di; ++a)
        for (std::size_t b = 0; b < dj; ++b) {
          const RatVec product = cup_trivial(ug.complex, model.inv_reps[i].row(a), i,
                                             model.inv_reps[j].row(b), j);
          const auto coords = solve_in_column_span(columns, product);
          if (!coords)
            throw Error("product of invariant classes is not an invariant class");
          for (std::size_t t = 0; t < model.inv_reps[total].rows(); ++t)
            constants(a * dj + b, t) = (*coords)[t];
        }
      inv_products[{i, j}] = std::move(constants);
    }

  GradedRing ring;
  ring.dims = model.dims;
  for (std::size_t i = 0; i <= top; ++i)
    for (std::size_t j = 0; i + j <= top; ++j) {
      const std::size_t total = i + j;
      RatMatrix constants(model.dims[i] * model.dims[j], model.dims[total]);
      for (std::size_t a = 0; a < model.dims[i]; ++a) {
        const auto& ca = model.basis[i][a];
        const std::size_t qa = i - ca.p;
        for (std::size_t b = 0; b < model.dims[j]; ++b) {
          const auto& cb = model.basis[j][b];
          const std::size_t qb = j - cb.p;
          if (ca.mask & cb.mask) continue;  // repeated exterior generator
          if (qa + qb > utop) continue;
          const int sign =
              merge_sign(ca.mask, cb.mask) * ((ca.p * qb) % 2 == 0 ? 1 : -1);
          const Mask mask = ca.mask | cb.mask;
          const RatMatrix& ip = inv_products.at({qa, qb});
          const std::size_t djj = model.inv_reps[qb].rows();
          // Locate target cells (p = ca.p + cb.p, mask, cls).
          for (std::size_t t = 0; t < model.dims[total]; ++t) {
            const auto& ct = model.basis[total][t];
            if (ct.mask != mask || ct.p != ca.p + cb.p) continue;
            constants(a * model.dims[j] + b, t) =
                Rational(sign) * ip(ca.cls * djj + cb.cls, ct.cls);
          }
        }
      }
      ring.products[{i, j}] = std::move(constants);
    }
  ring.validate();
  return ring;
}

GroupCohModel wang_tower(const DenseSubgroupData& d, const HullModule& hm) {
  const Certificate disc = subgroup_torus_discreteness(d);
  if (!disc.yes())
    throw Error("torus part is not certified discrete (" + disc.verdict_string() + ": " +
                disc.justification + ")");

  const UnipotentGroupCohomology ug = unipotent_group_cohomology(d, hm);
  const std::size_t utop = ug.complex.top_degree();
  const std::size_t k = d.torus_gens.size();

  GroupCohModel model;

  // State: current spaces as dimensions plus the remaining operators.
  std::vector<std::size_t> dims(utop + 1);
  std::vector<std::vector<RatMatrix>> ops(utop + 1);
  for (std::size_t q = 0; q <= utop; ++q) {
    dims[q] = ug.spaces[q].dim;
    ops[q] = ug.actions[q];
  }

  for (std::size_t step = 0; step < k; ++step) {
    WangStep record;
    record.generator_index = step;
    std::vector<std::size_t> new_dims(dims.size() + 1, 0);
    std::vector<std::vector<RatMatrix>> new_ops(dims.size() + 1);
    std::vector<std::vector<RatMatrix>> inv_bases(dims.size()), coinv_reps(dims.size());
    std::vector<Subspace> images(dims.size());

    for (std::size_t q = 0; q < dims.size(); ++q) {
      const RatMatrix& phi = ops[q][0];
      record.semisimple = record.semisimple && is_diagonalizable_over_q(phi);
      const RatMatrix shifted = phi - RatMatrix::identity(dims[q]);
      const Subspace inv = kernel_basis(shifted);
      images[q] = image_basis(shifted);
      const auto creps = quotient_basis(Subspace::full(dims[q]), images[q]);
      record.invariant_dims.push_back(inv.dim());
      record.coinvariant_dims.push_back(creps.size());
      for (std::size_t i = 0; i < inv.dim(); ++i) {
        RatMatrix one(1, dims[q]);
        one.set_row(0, inv.basis_vector(i));
        inv_bases[q].push_back(one);
      }
      for (const auto& r : creps) {
        RatMatrix one(1, dims[q]);
        one.set_row(0, r);
        coinv_reps[q].push_back(one);
      }
    }

    for (std::size_t n = 0; n < new_dims.size(); ++n) {
      const std::size_t inv_part = n < dims.size() ? record.invariant_dims[n] : 0;
      const std::size_t coinv_part = (n >= 1 && n - 1 < dims.size())
                                         ? record.coinvariant_dims[n - 1]
                                         : 0;
      new_dims[n] = inv_part + coinv_part;

      // Remaining operators act blockwise: restriction to invariants and the
      // induced map on coinvariants.
      const std::size_t remaining = ops.empty() || ops[0].empty() ? 0 : ops[0].size() - 1;
      for (std::size_t r = 1; r <= remaining; ++r) {
        RatMatrix block(new_dims[n], new_dims[n]);
        if (inv_part > 0) {
          const std::size_t q = n;
          const RatMatrix& psi = ops[q][r];
          // Columns of the invariant basis.
          RatMatrix basis_cols(dims[q], inv_part);
          for (std::size_t j = 0; j < inv_part; ++j)
            for (std::size_t x = 0; x < dims[q]; ++x)
              basis_cols(x, j) = inv_bases[q][j](0, x);
          for (std::size_t j = 0; j < inv_part; ++j) {
            const RatVec img = psi.apply(inv_bases[q][j].row(0));
            const auto coords = solve_in_column_span(basis_cols, img);
            if (!coords) throw Error("internal: invariants not preserved by a commuting operator");
            for (std::size_t i = 0; i < inv_part; ++i) block(i, j) = (*coords)[i];
          }
        }
        if (coinv_part > 0) {
          const std::size_t q = n - 1;
          const RatMatrix& psi = ops[q][r];
          RatMatrix columns(dims[q], coinv_part + images[q].dim());
          for (std::size_t j = 0; j < coinv_part; ++j)
            for (std::size_t x = 0; x < dims[q]; ++x) columns(x, j) = coinv_reps[q][j](0, x);
          for (std::size_t j = 0; j < images[q].dim(); ++j)
            for (std::size_t x = 0; x < dims[q]; ++x)
              columns(x, coinv_part + j) = images[q].basis()(j, x);
          for (std::size_t j = 0; j < coinv_part; ++j) {
            const RatVec img = psi.apply(coinv_reps[q][j].row(0));
            const auto coords = solve_in_column_span(columns, img);
            if (!coords) throw Error("internal: coinvariants not preserved");
            for (std::size_t i = 0; i < coinv_part; ++i)
              block(inv_part + i, inv_part + j) = (*coords)[i];
          }
        }
        new_ops[n].push_back(std::move(block));
      }
    }

    model.steps.push_back(record);
    model.all_steps_semisimple = model.all_steps_semisimple && record.semisimple;
    dims = std::move(new_dims);
    // Drop the consumed generator.
    ops = std::move(new_ops);
  }

  model.dims = dims;
  const bool trivial_coeffs = hm.u_module.dim() == 1 && hm.u_module.is_trivial();
  if (model.all_steps_semisimple && trivial_coeffs) {
    const TensorModel tm = tensor_model(ug);
    model.ring = tensor_model_ring(tm, ug);
    model.fingerprint = ring_invariants(*model.ring);
    // The tensor model must agree with the tower dimensions.
    if (tm.dims != model.dims)
      throw Error("internal: tensor model dims disagree with the iterated tower");
  } else if (!model.all_steps_semisimple) {
    model.notes.push_back("non-semisimple step: dims only, ring omitted");
  }
  return model;
}

CompareVerdict compare_with_lie(const GroupCohModel& model, const LieSideSummary& lie) {
  CompareVerdict verdict;
  const std::size_t degrees = std::max(model.dims.size(), lie.dims.size());
  for (std::size_t n = 0; n < degrees; ++n) {
    const std::size_t a = n < model.dims.size() ? model.dims[n] : 0;
    const std::size_t b = n < lie.dims.size() ? lie.dims[n] : 0;
    if (a != b) {
      verdict.pass = false;
      verdict.detail = "dimension mismatch at degree " + std::to_string(n) + ": group " +
                       std::to_string(a) + " vs lie " + std::to_string(b);
      return verdict;
    }
  }
  if (model.fingerprint && lie.fingerprint && !(*model.fingerprint == *lie.fingerprint)) {
    verdict.pass = false;
    verdict.detail = "ring fingerprints disagree";
    return verdict;
  }
  verdict.pass = true;
  verdict.detail = "per-degree dims agree" +
                   std::string(model.fingerprint && lie.fingerprint
                                   ? " and ring fingerprints agree"
                                   : "");
  return verdict;
}

}  // namespace solvcoh
