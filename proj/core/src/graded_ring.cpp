#include "solvcoh/graded_ring.hpp"

#include <algorithm>

namespace solvcoh {

RatVec GradedRing::multiply(std::size_t i, const RatVec& a, std::size_t j,
                            const RatVec& b) const {
  const std::size_t total = i + j;
  if (total > top_degree()) return RatVec{};
  RatVec out(dims[total], Rational(0));
  if (dims[i] == 0 || dims[j] == 0) return out;
  const auto it = products.find({i, j});
  if (it == products.end()) throw Error("missing structure constants for degrees");
  const RatMatrix& m = it->second;
  for (std::size_t x = 0; x < dims[i]; ++x) {
    if (a[x] == 0) continue;
    for (std::size_t y = 0; y < dims[j]; ++y) {
      if (b[y] == 0) continue;
      const Rational f = a[x] * b[y];
      for (std::size_t cidx = 0; cidx < dims[total]; ++cidx)
        out[cidx] += f * m(x * dims[j] + y, cidx);
    }
  }
  return out;
}

void GradedRing::validate() const {
  const std::size_t top = top_degree();
  if (dims.empty() || dims[0] == 0) throw Error("graded ring without a unit degree");
  auto unit_vec = [&] {
    RatVec u(dims[0], Rational(0));
    u[0] = 1;
    return u;
  }();
  // Unit: rep_0^0 must act as identity on every basis class.
  for (std::size_t j = 0; j <= top; ++j)
    for (std::size_t b = 0; b < dims[j]; ++b) {
      RatVec eb(dims[j], Rational(0));
      eb[b] = 1;
      if (multiply(0, unit_vec, j, eb) != eb || multiply(j, eb, 0, unit_vec) != eb)
        throw Error("degree-0 basis class is not a unit");
    }
  // Graded commutativity on basis pairs.
  for (std::size_t i = 0; i <= top; ++i)
    for (std::size_t j = 0; i + j <= top; ++j)
      for (std::size_t a = 0; a < dims[i]; ++a)
        for (std::size_t b = 0; b < dims[j]; ++b) {
          RatVec ea(dims[i], Rational(0)), eb(dims[j], Rational(0));
          ea[a] = 1;
          eb[b] = 1;
          const RatVec ab = multiply(i, ea, j, eb);
          RatVec ba = multiply(j, eb, i, ea);
          if ((i * j) % 2 == 1) ba = vec_scale(-1, ba);
          if (ab != ba) throw Error("graded commutativity fails");
        }
  // Associativity on basis triples.
  for (std::size_t i = 0; i <= top; ++i)
    for (std::size_t j = 0; i + j <= top; ++j)
      for (std::size_t k = 0; i + j + k <= top; ++k)
        for (std::size_t a = 0; a < dims[i]; ++a)
          for (std::size_t b = 0; b < dims[j]; ++b)
            for (std::size_t cc = 0; cc < dims[k]; ++cc) {
              RatVec ea(dims[i], Rational(0)), eb(dims[j], Rational(0)),
                  ec(dims[k], Rational(0));
              ea[a] = 1;
              eb[b] = 1;
              ec[cc] = 1;
              const RatVec lhs = multiply(i + j, multiply(i, ea, j, eb), k, ec);
              const RatVec rhs = multiply(i, ea, j + k, multiply(j, eb, k, ec));
              if (lhs != rhs) throw Error("associativity fails on a basis triple");
            }
}

GradedRing ring_structure(const CochainComplex& c) {
  if (c.module().dim() != 1 || !c.module().is_trivial())
    throw Error("ring structure requires trivial coefficients");
  const std::size_t top = c.top_degree();
  std::vector<CohomologySpace> h;
  for (std::size_t n = 0; n <= top; ++n) h.push_back(cohomology(c, static_cast<long>(n)));

  GradedRing ring;
  for (const auto& hn : h) ring.dims.push_back(hn.dim);

  for (std::size_t i = 0; i <= top; ++i)
    for (std::size_t j = 0; i + j <= top; ++j) {
      const std::size_t total = i + j;
      RatMatrix constants(h[i].dim * h[j].dim, h[total].dim);
      // Columns for "solve modulo coboundaries" in degree i+j.
      const std::size_t dim_c = c.space_dim(static_cast<long>(total));
      RatMatrix columns(dim_c, h[total].dim + h[total].image.dim());
      for (std::size_t t = 0; t < h[total].dim; ++t)
        for (std::size_t r = 0; r < dim_c; ++r) columns(r, t) = h[total].representatives(t, r);
      for (std::size_t t = 0; t < h[total].image.dim(); ++t)
        for (std::size_t r = 0; r < dim_c; ++r)
          columns(r, h[total].dim + t) = h[total].image.basis()(t, r);
      for (std::size_t a = 0; a < h[i].dim; ++a)
        for (std::size_t b = 0; b < h[j].dim; ++b) {
          const RatVec product =
              cup_trivial(c, h[i].representatives.row(a), i, h[j].representatives.row(b), j);
          if (!h[total].kernel.contains(product))
            throw Error("cup product of cocycles is not a cocycle");
          const auto coords = solve_in_column_span(columns, product);
          if (!coords) throw Error("internal: product not expressible modulo coboundaries");
          for (std::size_t t = 0; t < h[total].dim; ++t)
            constants(a * h[j].dim + b, t) = (*coords)[t];
        }
      ring.products[{i, j}] = std::move(constants);
    }
  ring.validate();
  return ring;
}

RingFingerprint ring_invariants(const GradedRing& r) {
  RingFingerprint fp;
  fp.poincare = r.dims;
  const std::size_t top = r.top_degree();

  // Ranks of wedge^a H^1 -> H^a: span of products of strictly increasing
  // tuples of degree-1 basis classes.
  fp.exterior_h1_ranks.resize(top + 1, 0);
  fp.exterior_h1_ranks[0] = r.dims[0] > 0 ? 1 : 0;
  std::vector<std::pair<std::vector<std::size_t>, RatVec>> current;
  for (std::size_t b = 0; b < (top >= 1 ? r.dims[1] : 0); ++b) {
    RatVec e(r.dims[1], Rational(0));
    e[b] = 1;
    current.push_back({{b}, e});
  }
  for (std::size_t a = 1; a <= top; ++a) {
    std::vector<RatVec> vectors;
    for (const auto& [tuple, vec] : current) vectors.push_back(vec);
    fp.exterior_h1_ranks[a] =
        r.dims[a] == 0 ? 0 : Subspace::span_of_vectors(r.dims[a], vectors).dim();
    if (a == top) break;
    std::vector<std::pair<std::vector<std::size_t>, RatVec>> next;
    for (const auto& [tuple, vec] : current)
      for (std::size_t b = tuple.back() + 1; b < r.dims[1]; ++b) {
        RatVec e(r.dims[1], Rational(0));
        e[b] = 1;
        next.push_back({[&] {
                          auto t = tuple;
                          t.push_back(b);
                          return t;
                        }(),
                        r.multiply(a, vec, 1, e)});
      }
    current = std::move(next);
  }

  for (const auto& [key, m] : r.products) fp.pairing_ranks[key] = rref(m).rank;
  return fp;
}

std::string RingFingerprint::to_string() const {
  std::string out = "poincare [";
  for (std::size_t i = 0; i < poincare.size(); ++i)
    out += (i ? " " : "") + std::to_string(poincare[i]);
  out += "]; wedge-h1 ranks [";
  for (std::size_t i = 0; i < exterior_h1_ranks.size(); ++i)
    out += (i ? " " : "") + std::to_string(exterior_h1_ranks[i]);
  out += "]; pairing ranks {";
  bool first = true;
  for (const auto& [key, rank] : pairing_ranks) {
    if (!first) out += ", ";
    first = false;
    out += "(" + std::to_string(key.first) + "," + std::to_string(key.second) +
           "):" + std::to_string(rank);
  }
  return out + "}";
}

bool identical_ring_presentation(const GradedRing& a, const GradedRing& b) {
  if (a.dims != b.dims) return false;
  if (a.products.size() != b.products.size()) return false;
  for (const auto& [key, m] : a.products) {
    const auto it = b.products.find(key);
    if (it == b.products.end() || !(it->second == m)) return false;
  }
  return true;
}

}  // namespace solvcoh
