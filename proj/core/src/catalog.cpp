#include "solvcoh/catalog.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <sstream>

namespace solvcoh {

Json rational_json(const Rational& r) { return rational_to_string(r); }

Json matrix_json(const RatMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(rational_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw Error("expected a rational (string or integer) at " + where);
}

}  // namespace

RatVec vector_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw Error("expected an array at " + where);
  RatVec out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(rational_from_json(j[i], where + "/" + std::to_string(i)));
  return out;
}

RatMatrix matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw Error("expected a matrix (array of rows) at " + where);
  std::vector<RatVec> rows;
  for (std::size_t i = 0; i < j.size(); ++i)
    rows.push_back(vector_from_json(j[i], where + "/" + std::to_string(i)));
  if (rows.empty()) return RatMatrix();
  for (const auto& r : rows)
    if (r.size() != rows[0].size()) throw Error("ragged matrix at " + where);
  return RatMatrix::from_rows(rows);
}

Json certificate_json(const Certificate& c) {
  Json j;
  j["verdict"] = c.verdict_string();
  j["witness"] = c.witness;
  j["justification"] = c.justification;
  return j;
}

Json cochain_json(const CochainComplex& complex, std::size_t degree, const RatVec& cochain) {
  Json j;
  j["degree"] = degree;
  Json coeffs = Json::array();
  const auto& subs = complex.subsets(degree);
  const std::size_t mdim = complex.module().dim();
  for (std::size_t mi = 0; mi < mdim; ++mi)
    for (std::size_t sp = 0; sp < subs.size(); ++sp) {
      const Rational& c = cochain[mi * subs.size() + sp];
      if (c == 0) continue;
      Json item;
      item["module_index"] = mi;
      Json indices = Json::array();
      for (const auto e : mask_elements(subs[sp])) indices.push_back(e);
      item["subset"] = std::move(indices);
      item["value"] = rational_json(c);
      coeffs.push_back(std::move(item));
    }
  j["coefficients"] = std::move(coeffs);
  return j;
}

Json cohomology_json(const CochainComplex& complex, const CohomologySpace& space) {
  Json j;
  j["degree"] = space.degree;
  j["dim"] = space.dim;
  Json reps = Json::array();
  for (std::size_t i = 0; i < space.dim; ++i)
    reps.push_back(cochain_json(complex, space.degree, space.representatives.row(i)));
  j["representatives"] = std::move(reps);
  return j;
}

Json fingerprint_json(const RingFingerprint& fp) {
  Json j;
  j["poincare"] = fp.poincare;
  j["wedge_h1_ranks"] = fp.exterior_h1_ranks;
  Json ranks = Json::object();
  for (const auto& [key, rank] : fp.pairing_ranks)
    ranks[std::to_string(key.first) + "x" + std::to_string(key.second)] = rank;
  j["pairing_ranks"] = std::move(ranks);
  return j;
}

Json group_model_json(const GroupCohModel& model) {
  Json j;
  j["dims"] = model.dims;
  if (model.fingerprint) {
    Json ring;
    ring["poincare"] = model.fingerprint->poincare;
    ring["fingerprints"] = fingerprint_json(*model.fingerprint);
    j["ring"] = std::move(ring);
  } else {
    j["ring"] = nullptr;
  }
  Json steps = Json::array();
  for (const auto& step : model.steps) {
    Json s;
    s["generator"] = step.generator_index;
    s["invariant_dims"] = step.invariant_dims;
    s["coinvariant_dims"] = step.coinvariant_dims;
    s["semisimple"] = step.semisimple;
    steps.push_back(std::move(s));
  }
  j["provenance"] = std::move(steps);
  if (!model.notes.empty()) j["notes"] = model.notes;
  return j;
}

Json page_json(const Page& page) {
  Json j;
  j["r"] = page.r;
  Json cells = Json::array();
  for (const auto& [key, cell] : page.cells) {
    Json c;
    c["p"] = key.first;
    c["q"] = key.second;
    c["dim"] = cell.dim;
    const auto it = page.differentials.find(key);
    c["d_r_rank"] = it == page.differentials.end() || it->second.rows() == 0
                        ? 0
                        : rref(it->second).rank;
    cells.push_back(std::move(c));
  }
  j["cells"] = std::move(cells);
  return j;
}

// ---------------------------------------------------------------------------
// Config ingestion
// ---------------------------------------------------------------------------

namespace {

const Json& require_field(const Json& j, const std::string& field, const std::string& where) {
  const auto it = j.find(field);
  if (it == j.end()) throw Error("missing field '" + field + "' at " + where);
  return *it;
}

SemidirectPresentation hull_from_json(const Json& doc) {
  SemidirectPresentation hull;
  const Json& uni = require_field(doc, "unipotent", "/");
  const std::size_t dim = require_field(uni, "dim", "/unipotent").get<std::size_t>();
  std::vector<std::string> names;
  if (uni.contains("basis_names"))
    names = uni["basis_names"].get<std::vector<std::string>>();
  hull.u = LieAlgebra(dim, names);
  if (uni.contains("brackets")) {
    const Json& brs = uni["brackets"];
    for (std::size_t b = 0; b < brs.size(); ++b) {
      const Json& item = brs[b];
      const std::string where = "/unipotent/brackets/" + std::to_string(b);
      if (!item.is_array() || item.size() != 3) throw Error("expected [i, j, coords] at " + where);
      hull.u.set_bracket(item[0].get<std::size_t>(), item[1].get<std::size_t>(),
                         vector_from_json(item[2], where + "/2"));
    }
  }
  const JacobiReport jac = validate_jacobi(hull.u);
  if (!jac.ok) throw Error("config is not a Lie algebra: " + jac.to_string());
  if (doc.contains("torus")) {
    const Json& torus = doc["torus"];
    hull.t_dim = require_field(torus, "dim", "/torus").get<std::size_t>();
    if (torus.contains("derivations")) {
      const Json& ders = torus["derivations"];
      for (std::size_t i = 0; i < ders.size(); ++i)
        hull.derivations.push_back(
            matrix_from_json(ders[i], "/torus/derivations/" + std::to_string(i)));
    }
  }
  return hull;
}

HullModule module_from_json(const Json& doc, const SemidirectPresentation& hull) {
  if (doc.is_string()) {
    if (doc.get<std::string>() != "trivial")
      throw Error("module must be \"trivial\" or an object at /module");
    return HullModule::trivial(hull);
  }
  HullModule hm;
  const std::size_t dim = require_field(doc, "dim", "/module").get<std::size_t>();
  std::vector<RatMatrix> u_actions;
  const Json& ua = require_field(doc, "u_action", "/module");
  for (std::size_t i = 0; i < ua.size(); ++i)
    u_actions.push_back(matrix_from_json(ua[i], "/module/u_action/" + std::to_string(i)));
  hm.u_module = LieModule(dim, u_actions);
  if (doc.contains("t_action")) {
    const Json& ta = doc["t_action"];
    for (std::size_t i = 0; i < ta.size(); ++i)
      hm.t_actions.push_back(matrix_from_json(ta[i], "/module/t_action/" + std::to_string(i)));
  }
  if (hm.t_actions.size() != hull.t_dim)
    throw Error("module needs one t_action matrix per torus generator");
  return hm;
}

DenseSubgroupData subgroup_from_json(const Json& doc, const SemidirectPresentation& hull) {
  DenseSubgroupData d;
  d.hull = hull;
  if (!doc.contains("subgroup")) {
    // Default: integral points of u through the log coordinates.
    for (std::size_t i = 0; i < hull.u.dim(); ++i) {
      RatVec e(hull.u.dim(), Rational(0));
      e[i] = 1;
      d.delta_logs.push_back(std::move(e));
    }
    return d;
  }
  const Json& sub = doc["subgroup"];
  std::vector<RatMatrix> representation;
  if (sub.contains("representation")) {
    const Json& rep = sub["representation"];
    for (std::size_t i = 0; i < rep.size(); ++i)
      representation.push_back(
          matrix_from_json(rep[i], "/subgroup/representation/" + std::to_string(i)));
    if (representation.size() != hull.u.dim())
      throw Error("representation needs one matrix per u basis element");
  }
  const Json& gens = require_field(sub, "delta_gens", "/subgroup");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string where = "/subgroup/delta_gens/" + std::to_string(i);
    const Json& gen = gens[i];
    if (gen.is_object() && gen.contains("log")) {
      RatVec log = vector_from_json(gen["log"], where + "/log");
      if (log.size() != hull.u.dim()) throw Error("log coordinates of wrong length at " + where);
      d.delta_logs.push_back(std::move(log));
    } else {
      if (representation.empty())
        throw Error("matrix generator at " + where + " requires /subgroup/representation");
      d.delta_logs.push_back(
          unipotent_log_in_basis(matrix_from_json(gen, where), representation));
    }
  }
  if (sub.contains("torus_gens")) {
    const Json& tg = sub["torus_gens"];
    for (std::size_t i = 0; i < tg.size(); ++i) {
      TorusGenerator gen;
      gen.coordinates =
          vector_from_json(tg[i], "/subgroup/torus_gens/" + std::to_string(i));
      if (gen.coordinates.size() != hull.t_dim)
        throw Error("torus generator of wrong length at /subgroup/torus_gens/" +
                    std::to_string(i));
      d.torus_gens.push_back(std::move(gen));
    }
  }
  if (sub.contains("automorphism_gens")) {
    const Json& ag = sub["automorphism_gens"];
    for (std::size_t i = 0; i < ag.size(); ++i) {
      const std::string where = "/subgroup/automorphism_gens/" + std::to_string(i);
      TorusGenerator gen;
      gen.automorphism = matrix_from_json(require_field(ag[i], "u", where), where + "/u");
      if (ag[i].contains("module"))
        gen.module_automorphism = matrix_from_json(ag[i]["module"], where + "/module");
      d.torus_gens.push_back(std::move(gen));
    }
  }
  if (sub.contains("labels")) d.labels = sub["labels"].get<std::vector<std::string>>();
  return d;
}

ExpectedData expected_from_json(const Json& doc) {
  ExpectedData out;
  if (!doc.contains("expected")) return out;
  const Json& e = doc["expected"];
  auto tagged_dims = [&](const char* field) -> std::optional<Expected<std::vector<std::size_t>>> {
    if (!e.contains(field)) return std::nullopt;
    Expected<std::vector<std::size_t>> ex;
    ex.value = require_field(e[field], "value", std::string("/expected/") + field)
                   .get<std::vector<std::size_t>>();
    ex.tag = require_field(e[field], "tag", std::string("/expected/") + field)
                 .get<std::string>();
    return ex;
  };
  out.lie_betti = tagged_dims("lie_betti");
  out.group_dims = tagged_dims("group_dims");
  if (e.contains("hirsch")) {
    Expected<std::size_t> ex;
    ex.value = require_field(e["hirsch"], "value", "/expected/hirsch").get<std::size_t>();
    ex.tag = require_field(e["hirsch"], "tag", "/expected/hirsch").get<std::string>();
    out.hirsch = ex;
  }
  if (e.contains("fails")) {
    Expected<std::string> ex;
    ex.value = require_field(e["fails"], "value", "/expected/fails").get<std::string>();
    ex.tag = require_field(e["fails"], "tag", "/expected/fails").get<std::string>();
    out.fails = ex;
  }
  return out;
}

// Canonical re-serialization of a parsed document.
Json canonical_document(const CatalogEntry& entry, const Json& original) {
  Json doc;
  doc["name"] = entry.name;
  Json uni;
  uni["dim"] = entry.hull.u.dim();
  uni["basis_names"] = entry.hull.u.basis_names();
  Json brackets = Json::array();
  for (const auto& [key, value] : entry.hull.u.brackets()) {
    Json item = Json::array();
    item.push_back(key.first);
    item.push_back(key.second);
    Json coords = Json::array();
    for (const auto& c : value) coords.push_back(rational_json(c));
    item.push_back(std::move(coords));
    brackets.push_back(std::move(item));
  }
  uni["brackets"] = std::move(brackets);
  doc["unipotent"] = std::move(uni);
  Json torus;
  torus["dim"] = entry.hull.t_dim;
  Json ders = Json::array();
  for (const auto& d : entry.hull.derivations) ders.push_back(matrix_json(d));
  torus["derivations"] = std::move(ders);
  doc["torus"] = std::move(torus);

  bool nontrivial = false;
  for (const auto& nm : entry.modules)
    if (nm.name != "trivial") {
      Json module;
      module["dim"] = nm.data.u_module.dim();
      Json ua = Json::array();
      for (const auto& a : nm.data.u_module.actions()) ua.push_back(matrix_json(a));
      module["u_action"] = std::move(ua);
      Json ta = Json::array();
      for (const auto& a : nm.data.t_actions) ta.push_back(matrix_json(a));
      module["t_action"] = std::move(ta);
      doc["module"] = std::move(module);
      nontrivial = true;
      break;
    }
  if (!nontrivial) doc["module"] = "trivial";

  Json sub;
  Json delta = Json::array();
  for (const auto& log : entry.subgroup.delta_logs) {
    Json item;
    Json coords = Json::array();
    for (const auto& c : log) coords.push_back(rational_json(c));
    item["log"] = std::move(coords);
    delta.push_back(std::move(item));
  }
  sub["delta_gens"] = std::move(delta);
  Json torus_gens = Json::array();
  Json aut_gens = Json::array();
  for (const auto& gen : entry.subgroup.torus_gens) {
    if (gen.is_matrix_mode()) {
      Json item;
      item["u"] = matrix_json(*gen.automorphism);
      if (gen.module_automorphism) item["module"] = matrix_json(*gen.module_automorphism);
      aut_gens.push_back(std::move(item));
    } else {
      Json coords = Json::array();
      for (const auto& c : gen.coordinates) coords.push_back(rational_json(c));
      torus_gens.push_back(std::move(coords));
    }
  }
  sub["torus_gens"] = std::move(torus_gens);
  if (!aut_gens.empty()) sub["automorphism_gens"] = std::move(aut_gens);
  doc["subgroup"] = std::move(sub);
  if (original.contains("expected")) doc["expected"] = original["expected"];
  if (original.contains("tolerate_non_split_torus"))
    doc["tolerate_non_split_torus"] = original["tolerate_non_split_torus"];
  return doc;
}

}  // namespace

CatalogEntry entry_from_json(const Json& doc) {
  CatalogEntry entry;
  entry.name = require_field(doc, "name", "/").get<std::string>();
  entry.hull = hull_from_json(doc);
  const bool tolerate =
      doc.contains("tolerate_non_split_torus") && doc["tolerate_non_split_torus"].get<bool>();
  try {
    entry.hull.validate();
  } catch (const Error& e) {
    if (!tolerate) throw;
    entry.lie_side_disabled = e.what();
  }

  HullModule trivial = HullModule::trivial(entry.hull);
  entry.modules.push_back({"trivial", trivial});
  if (doc.contains("module") && !(doc["module"].is_string())) {
    HullModule hm = module_from_json(doc["module"], entry.hull);
    if (!entry.lie_side_disabled) {
      const LieModule ambient = hm.ambient_module(entry.hull);
      ambient.validate_over(semidirect(entry.hull));
    } else {
      hm.u_module.validate_over(entry.hull.u);
    }
    entry.modules.push_back({"module", hm});
  }

  entry.subgroup = subgroup_from_json(doc, entry.hull);
  entry.expected = expected_from_json(doc);

  // Certificates are part of loading.
  entry.density = is_zariski_dense_unipotent(entry.subgroup);
  std::vector<RatVec> coords;
  bool any_matrix_mode = false;
  for (const auto& gen : entry.subgroup.torus_gens) {
    if (gen.is_matrix_mode())
      any_matrix_mode = true;
    else
      coords.push_back(gen.coordinates);
  }
  if (any_matrix_mode) {
    entry.torus_density.verdict = Certificate::Verdict::Unknown;
    entry.torus_density.justification =
        "declared automorphism generators are not split-torus elements";
  } else {
    entry.torus_density = torus_density_check(coords, entry.hull.t_dim);
  }
  entry.discreteness = subgroup_torus_discreteness(entry.subgroup);
  return entry;
}

CatalogEntry load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file '" + path + "'");
  Json doc;
  try {
    in >> doc;
  } catch (const Json::exception& e) {
    throw Error("config parse error in '" + path + "': " + e.what());
  }
  return entry_from_json(doc);
}

Json entry_to_json(const CatalogEntry& entry) {
  Json original;
  if (entry.expected.lie_betti || entry.expected.group_dims || entry.expected.hirsch ||
      entry.expected.fails) {
    Json e;
    auto put_dims = [&](const char* field,
                        const std::optional<Expected<std::vector<std::size_t>>>& ex) {
      if (!ex) return;
      e[field] = Json{{"value", ex->value}, {"tag", ex->tag}};
    };
    put_dims("lie_betti", entry.expected.lie_betti);
    put_dims("group_dims", entry.expected.group_dims);
    if (entry.expected.hirsch)
      e["hirsch"] = Json{{"value", entry.expected.hirsch->value},
                         {"tag", entry.expected.hirsch->tag}};
    if (entry.expected.fails)
      e["fails"] = Json{{"value", entry.expected.fails->value},
                        {"tag", entry.expected.fails->tag}};
    original["expected"] = std::move(e);
  }
  if (entry.lie_side_disabled) original["tolerate_non_split_torus"] = true;
  return canonical_document(entry, original);
}

const CatalogEntry& find_entry(const std::vector<CatalogEntry>& catalog,
                               const std::string& name) {
  for (const auto& entry : catalog)
    if (entry.name == name) return entry;
  throw Error("unknown catalog entry '" + name + "'");
}

// ---------------------------------------------------------------------------
// Built-in examples
// ---------------------------------------------------------------------------

namespace {

Json bs_hull_doc(long n, bool with_weight_module) {
  Json doc;
  doc["name"] = "bs_hull" + std::to_string(n);
  doc["unipotent"] = Json{{"dim", 1}, {"basis_names", Json::array({"u"})}};
  doc["torus"] = Json{{"dim", 1}, {"derivations", Json::array({Json::array({Json::array({"1"})})})}};
  if (with_weight_module) {
    Json module;
    module["dim"] = 2;
    module["u_action"] = Json::array({Json::array({Json::array({"0", "1"}),
                                                   Json::array({"0", "0"})})});
    module["t_action"] = Json::array({Json::array({Json::array({"0", "0"}),
                                                   Json::array({"0", "-1"})})});
    doc["module"] = std::move(module);
  } else {
    doc["module"] = "trivial";
  }
  doc["subgroup"] = Json{
      {"delta_gens", Json::array({Json{{"log", Json::array({"1"})}}})},
      {"torus_gens", Json::array({Json::array({std::to_string(n)})})}};
  doc["expected"] = Json{
      {"lie_betti", Json{{"value", Json::array({1, 1, 0})}, {"tag", "derived"}}},
      {"group_dims", Json{{"value", Json::array({1, 1, 0})}, {"tag", "derived"}}},
      {"hirsch", Json{{"value", 2}, {"tag", "reported"}}}};
  return doc;
}

Json heis_hull_doc(long n) {
  Json doc;
  doc["name"] = "heis_hull" + std::to_string(n);
  // Basis (x, z, y) with [x, y] = z, so the fixed derivation is diag(1, 2, 1).
  doc["unipotent"] = Json{{"dim", 3},
                          {"basis_names", Json::array({"x", "z", "y"})},
                          {"brackets", Json::array({Json::array(
                                           {0, 2, Json::array({"0", "1", "0"})})})}};
  doc["torus"] =
      Json{{"dim", 1},
           {"derivations",
            Json::array({Json::array({Json::array({"1", "0", "0"}),
                                      Json::array({"0", "2", "0"}),
                                      Json::array({"0", "0", "1"})})})}};
  doc["module"] = "trivial";
  // Integral Heisenberg generators as matrices through the standard
  // upper-triangular representation x -> E12, z -> E13, y -> E23.
  const Json e12 = Json::array({Json::array({"0", "1", "0"}), Json::array({"0", "0", "0"}),
                                Json::array({"0", "0", "0"})});
  const Json e13 = Json::array({Json::array({"0", "0", "1"}), Json::array({"0", "0", "0"}),
                                Json::array({"0", "0", "0"})});
  const Json e23 = Json::array({Json::array({"0", "0", "0"}), Json::array({"0", "0", "1"}),
                                Json::array({"0", "0", "0"})});
  const Json gen_x = Json::array({Json::array({"1", "1", "0"}), Json::array({"0", "1", "0"}),
                                  Json::array({"0", "0", "1"})});
  const Json gen_y = Json::array({Json::array({"1", "0", "0"}), Json::array({"0", "1", "1"}),
                                  Json::array({"0", "0", "1"})});
  doc["subgroup"] = Json{{"representation", Json::array({e12, e13, e23})},
                         {"delta_gens", Json::array({gen_x, gen_y})},
                         {"torus_gens", Json::array({Json::array({std::to_string(n)})})}};
  doc["expected"] = Json{
      {"lie_betti", Json{{"value", Json::array({1, 1, 0, 0, 0})}, {"tag", "derived"}}},
      {"group_dims", Json{{"value", Json::array({1, 1, 0, 0, 0})}, {"tag", "derived"}}},
      {"hirsch", Json{{"value", 4}, {"tag", "derived"}}}};
  return doc;
}

Json multi_prime_doc(const std::vector<long>& primes) {
  Json doc;
  doc["name"] = "multi_prime" + std::to_string(primes.size());
  doc["unipotent"] = Json{{"dim", 1}, {"basis_names", Json::array({"a"})}};
  doc["torus"] = Json{{"dim", 1}, {"derivations", Json::array({Json::array({Json::array({"1"})})})}};
  doc["module"] = "trivial";
  Json gens = Json::array();
  for (const auto p : primes) gens.push_back(Json::array({std::to_string(p)}));
  doc["subgroup"] = Json{{"delta_gens", Json::array({Json{{"log", Json::array({"1"})}}})},
                         {"torus_gens", std::move(gens)}};
  doc["expected"] =
      Json{{"hirsch", Json{{"value", primes.size() + 1}, {"tag", "reported"}}},
           {"fails", Json{{"value", "discreteness"}, {"tag", "reported"}}}};
  return doc;
}

Json anosov_doc() {
  Json doc;
  doc["name"] = "anosov_tower";
  doc["unipotent"] = Json{{"dim", 2}, {"basis_names", Json::array({"e1", "e2"})}};
  doc["torus"] = Json{{"dim", 1},
                      {"derivations", Json::array({Json::array({Json::array({"2", "1"}),
                                                                Json::array({"1", "1"})})})}};
  doc["module"] = "trivial";
  doc["subgroup"] =
      Json{{"delta_gens", Json::array({Json{{"log", Json::array({"1", "0"})}},
                                       Json{{"log", Json::array({"0", "1"})}}})},
           {"automorphism_gens",
            Json::array({Json{{"u", Json::array({Json::array({"2", "1"}),
                                                 Json::array({"1", "1"})})}}})}};
  doc["tolerate_non_split_torus"] = true;
  doc["expected"] = Json{
      {"group_dims", Json{{"value", Json::array({1, 1, 1, 1})}, {"tag", "derived"}}},
      {"hirsch", Json{{"value", 3}, {"tag", "derived"}}},
      {"fails", Json{{"value", "not Q-split"}, {"tag", "reported"}}}};
  return doc;
}

Json abelian_doc(std::size_t n) {
  Json doc;
  doc["name"] = "abelian" + std::to_string(n);
  doc["unipotent"] = Json{{"dim", n}};
  doc["torus"] = Json{{"dim", 0}, {"derivations", Json::array()}};
  doc["module"] = "trivial";
  Json gens = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    Json coords = Json::array();
    for (std::size_t j = 0; j < n; ++j) coords.push_back(i == j ? "1" : "0");
    gens.push_back(Json{{"log", std::move(coords)}});
  }
  doc["subgroup"] = Json{{"delta_gens", std::move(gens)}};
  std::vector<std::size_t> betti;
  std::size_t binom = 1;
  for (std::size_t k = 0; k <= n; ++k) {
    betti.push_back(binom);
    binom = binom * (n - k) / (k + 1);
  }
  doc["expected"] = Json{
      {"lie_betti", Json{{"value", betti}, {"tag", "trivial"}}},
      {"group_dims", Json{{"value", betti}, {"tag", "trivial"}}},
      {"hirsch", Json{{"value", n}, {"tag", "trivial"}}}};
  return doc;
}

Json h3_doc() {
  Json doc;
  doc["name"] = "h3";
  doc["unipotent"] = Json{{"dim", 3},
                          {"basis_names", Json::array({"x", "y", "z"})},
                          {"brackets", Json::array({Json::array(
                                           {0, 1, Json::array({"0", "0", "1"})})})}};
  doc["torus"] = Json{{"dim", 0}, {"derivations", Json::array()}};
  doc["module"] = "trivial";
  doc["subgroup"] =
      Json{{"delta_gens", Json::array({Json{{"log", Json::array({"1", "0", "0"})}},
                                       Json{{"log", Json::array({"0", "1", "0"})}}})}};
  doc["expected"] = Json{
      {"lie_betti", Json{{"value", Json::array({1, 2, 2, 1})}, {"tag", "derived"}}},
      {"group_dims", Json{{"value", Json::array({1, 2, 2, 1})}, {"tag", "derived"}}},
      {"hirsch", Json{{"value", 3}, {"tag", "derived"}}}};
  return doc;
}

}  // namespace

std::vector<CatalogEntry> builtin_catalog() {
  std::vector<CatalogEntry> out;
  out.push_back(entry_from_json(bs_hull_doc(2, true)));
  out.push_back(entry_from_json(bs_hull_doc(3, false)));
  out.push_back(entry_from_json(bs_hull_doc(5, false)));
  out.push_back(entry_from_json(heis_hull_doc(2)));
  out.push_back(entry_from_json(heis_hull_doc(3)));
  out.push_back(entry_from_json(multi_prime_doc({2, 3})));
  out.push_back(entry_from_json(anosov_doc()));
  out.push_back(entry_from_json(abelian_doc(2)));
  out.push_back(entry_from_json(abelian_doc(3)));
  out.push_back(entry_from_json(h3_doc()));
  return out;
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

bool VerificationReport::pass() const {
  for (const auto& check : checks)
    if (check.verdict == "FAIL") return false;
  return true;
}

Json VerificationReport::to_json() const {
  Json j;
  j["entry"] = entry;
  j["pass"] = pass();
  j["tool_version"] = tool_version;
  Json list = Json::array();
  for (const auto& check : checks) {
    Json c;
    c["name"] = check.name;
    c["verdict"] = check.verdict;
    c["detail"] = check.detail;
    c["millis"] = check.millis;
    list.push_back(std::move(c));
  }
  j["checks"] = std::move(list);
  return j;
}

std::string VerificationReport::to_table() const {
  std::ostringstream out;
  out << "entry: " << entry << "\n";
  for (const auto& check : checks) {
    out << "  " << check.verdict;
    for (std::size_t i = check.verdict.size(); i < 8; ++i) out << ' ';
    out << check.name;
    if (!check.detail.empty()) out << "  - " << check.detail;
    out << "\n";
  }
  out << (pass() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

namespace {

struct CheckRunner {
  VerificationReport& report;

  void run(const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
    CheckRecord record;
    record.name = name;
    const auto start = std::chrono::steady_clock::now();
    try {
      const auto [ok, detail] = body();
      record.verdict = ok ? "PASS" : "FAIL";
      record.detail = detail;
    } catch (const Error& e) {
      record.verdict = "FAIL";
      record.detail = e.what();
    }
    record.millis = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    report.checks.push_back(std::move(record));
  }

  void skip(const std::string& name, const std::string& why) {
    report.checks.push_back({name, "SKIPPED", why, 0.0});
  }
};

std::string dims_to_string(const std::vector<std::size_t>& dims) {
  std::string out = "(";
  for (std::size_t i = 0; i < dims.size(); ++i) out += (i ? "," : "") + std::to_string(dims[i]);
  return out + ")";
}

}  // namespace

VerificationReport verify_entry(const std::vector<CatalogEntry>& catalog,
                                const CatalogEntry& entry, const std::string& which) {
  VerificationReport report;
  report.entry = entry.name;
  CheckRunner runner{report};
  const bool all = which == "all";
  const std::string expected_fail_note =
      entry.expect_fail() ? " [expected failure: " + entry.expected.fails->value + "]" : "";

  if (all || which == "main") {
    runner.run("jacobi", [&] {
      const JacobiReport jac = validate_jacobi(entry.hull.u);
      return std::make_pair(jac.ok, jac.to_string());
    });
    runner.run("density", [&] {
      return std::make_pair(entry.density.cert.yes(),
                            entry.density.cert.justification +
                                (entry.density.cert.witness.empty()
                                     ? ""
                                     : " [witness: " + entry.density.cert.witness + "]"));
    });
    runner.run("torus_density", [&] {
      return std::make_pair(entry.torus_density.verdict != Certificate::Verdict::No,
                            entry.torus_density.verdict_string() + ": " +
                                entry.torus_density.justification);
    });
    runner.run("discreteness", [&] {
      return std::make_pair(entry.discreteness.yes(),
                            entry.discreteness.verdict_string() + ": " +
                                entry.discreteness.justification +
                                (entry.discreteness.witness.empty()
                                     ? ""
                                     : " [witness: " + entry.discreteness.witness + "]") +
                                expected_fail_note);
    });
  }

  if (all) {
    runner.run("hirsch", [&]() -> std::pair<bool, std::string> {
      if (!entry.discreteness.yes()) {
        std::string note = "hirsch length unavailable: torus part not certified discrete";
        if (entry.expected.hirsch)
          note += "; declared expected value " + std::to_string(entry.expected.hirsch->value) +
                  " (a rank-1 hull model such as bs_hull has hirsch length 2)";
        // Documented, not fatal on its own: the discreteness check carries
        // the failure.
        return {true, note};
      }
      const std::size_t h = hirsch_length(entry.subgroup);
      if (entry.expected.hirsch && h != entry.expected.hirsch->value)
        return {false, "hirsch length " + std::to_string(h) + " != expected " +
                           std::to_string(entry.expected.hirsch->value)};
      const PolyrationalSeries series = polyrational_series(entry.subgroup);
      if (series.flags.size() != entry.hull.u.dim())
        return {false, "polyrational series has wrong length"};
      return {true, "hirsch length " + std::to_string(h) + ", polyrational series length " +
                        std::to_string(series.flags.size())};
    });
    runner.run("betti", [&]() -> std::pair<bool, std::string> {
      const CochainComplex cu =
          build_complex(entry.hull.u, entry.modules.front().data.u_module);
      const auto betti = betti_numbers(cu);
      std::string text = "H^*(u, Q) dims " + dims_to_string(betti);
      if (entry.expected.lie_betti && entry.lie_side_disabled)
        return {true, text};
      if (entry.expected.lie_betti && entry.hull.t_dim == 0 &&
          betti != entry.expected.lie_betti->value)
        return {false, text + " != expected " + dims_to_string(entry.expected.lie_betti->value)};
      return {true, text};
    });
    runner.run("group_dims", [&]() -> std::pair<bool, std::string> {
      if (!entry.discreteness.yes())
        return {true, "skipped computation: torus part not certified discrete" +
                          expected_fail_note};
      const GroupCohModel model = wang_tower(entry.subgroup, entry.modules.front().data);
      std::string text = "group-side dims " + dims_to_string(model.dims);
      if (!model.all_steps_semisimple) text += " (non-semisimple step: ring omitted)";
      if (entry.expected.group_dims && model.dims != entry.expected.group_dims->value)
        return {false, text + " != expected " + dims_to_string(entry.expected.group_dims->value)};
      return {true, text};
    });
  }

  const bool lie_ok = !entry.lie_side_disabled.has_value();

  if (all || which == "spectral") {
    if (!lie_ok) {
      runner.skip("e2", "hypothesis failed: " + *entry.lie_side_disabled);
      runner.skip("abutment", "hypothesis failed: " + *entry.lie_side_disabled);
      runner.skip("page_multiplicativity", "hypothesis failed: " + *entry.lie_side_disabled);
      runner.skip("stabilization", "hypothesis failed: " + *entry.lie_side_disabled);
    } else {
      for (const auto& nm : entry.modules) {
        const LieAlgebra g = semidirect(entry.hull);
        const CochainComplex cg = build_complex(g, nm.data.ambient_module(entry.hull));
        const FilteredComplex fc = hs_filtration(cg, entry.hull.u.dim());
        const SpectralSequence ss = compute_pages(fc);
        const std::string suffix = nm.name == "trivial" ? "" : "[" + nm.name + "]";
        runner.run("e2" + suffix, [&] {
          const CheckResult r = e2_identification(ss, entry.hull, nm.data);
          return std::make_pair(r.pass, r.detail);
        });
        runner.run("abutment" + suffix, [&] {
          const CheckResult r = abutment_check(ss);
          return std::make_pair(r.pass, r.detail);
        });
        if (nm.name == "trivial")
          runner.run("page_multiplicativity", [&] {
            const CheckResult r = page_multiplicativity_check(ss, cg);
            return std::make_pair(r.pass, r.detail);
          });
        runner.run("stabilization" + suffix, [&] {
          const bool ok = ss.stabilized_at <= g.dim() + 1;
          return std::make_pair(ok, "stabilized at r = " + std::to_string(ss.stabilized_at) +
                                        " (bound " + std::to_string(g.dim() + 1) + ")");
        });
      }
    }
  }

  if (all || which == "decomposition") {
    if (!lie_ok) {
      runner.skip("kunneth", "hypothesis failed: " + *entry.lie_side_disabled);
    } else {
      for (const auto& nm : entry.modules) {
        const std::string suffix = nm.name == "trivial" ? "" : "[" + nm.name + "]";
        runner.run("kunneth" + suffix, [&]() -> std::pair<bool, std::string> {
          const std::size_t top = entry.hull.u.dim() + entry.hull.t_dim;
          for (std::size_t n = 0; n <= top; ++n) {
            const KunnethResult r = kunneth_decomposition(entry.hull, nm.data, n);
            if (!r.pass) return {false, "degree " + std::to_string(n) + ": " + r.detail};
          }
          return {true, "decomposition and sign rule verified in all degrees"};
        });
      }
    }
  }

  if (all || which == "restriction") {
    if (!lie_ok) {
      runner.skip("restriction", "hypothesis failed: " + *entry.lie_side_disabled);
    } else {
      for (const auto& nm : entry.modules) {
        const std::string suffix = nm.name == "trivial" ? "" : "[" + nm.name + "]";
        runner.run("restriction" + suffix, [&]() -> std::pair<bool, std::string> {
          const LieAlgebra g = semidirect(entry.hull);
          const LieModule ambient = nm.data.ambient_module(entry.hull);
          const CochainComplex cu = build_complex(entry.hull.u, nm.data.u_module);
          const auto inv = invariant_cohomology(cu, g, ambient);
          for (const auto& space : inv) {
            if (space.dim == 0) continue;
            const std::size_t rank = rref(space.class_coords).rank;
            if (rank != space.dim)
              return {false, "inclusion has nonzero kernel in degree " +
                                 std::to_string(space.degree)};
          }
          return {true, "inclusion of the annihilated subring is injective degreewise"};
        });
      }
    }
  }

  if (all || which == "main") {
    if (!lie_ok) {
      runner.run("comparison", [&]() -> std::pair<bool, std::string> {
        return {false, "hypothesis: " + *entry.lie_side_disabled + expected_fail_note};
      });
      runner.run("phi", [&]() -> std::pair<bool, std::string> {
        return {false, "hypothesis: " + *entry.lie_side_disabled + expected_fail_note};
      });
    } else {
      for (const auto& nm : entry.modules) {
        const std::string suffix = nm.name == "trivial" ? "" : "[" + nm.name + "]";
        runner.run("comparison" + suffix, [&]() -> std::pair<bool, std::string> {
          const LieAlgebra g = semidirect(entry.hull);
          const CochainComplex cg = build_complex(g, nm.data.ambient_module(entry.hull));
          const SpectralSequence ss = compute_pages(hs_filtration(cg, entry.hull.u.dim()));
          const ComparisonResult r = comparison(ss, entry.subgroup, nm.data);
          std::string detail = r.detail;
          if (r.refused) {
            detail += expected_fail_note;
            if (entry.expected.hirsch)
              detail += " [declared hirsch length " +
                        std::to_string(entry.expected.hirsch->value) + "]";
          }
          return {r.pass, detail};
        });
        runner.run("phi" + suffix, [&]() -> std::pair<bool, std::string> {
          const PhiResult r = phi_ring_map(entry.hull, entry.subgroup, nm.data);
          std::string detail = r.detail;
          if (r.refused) detail += expected_fail_note;
          return {r.pass, detail};
        });
      }
    }
  }

  if (all || which == "c17") {
    if (entry.name.rfind("bs_hull", 0) != 0) {
      runner.skip("c17_fingerprints", "entry is not a bs_hull model");
    } else {
      runner.run("c17_fingerprints", [&]() -> std::pair<bool, std::string> {
        const GroupCohModel mine = wang_tower(entry.subgroup, entry.modules.front().data);
        if (!mine.ring) return {false, "ring unavailable"};
        std::size_t compared = 0;
        for (const auto& other : catalog) {
          if (other.name == entry.name || other.name.rfind("bs_hull", 0) != 0) continue;
          const GroupCohModel theirs = wang_tower(other.subgroup, other.modules.front().data);
          if (!theirs.ring) return {false, "ring unavailable for " + other.name};
          if (!(*mine.fingerprint == *theirs.fingerprint))
            return {false, "fingerprints differ from " + other.name};
          if (!identical_ring_presentation(*mine.ring, *theirs.ring))
            return {false, "explicit degreewise isomorphism fails against " + other.name};
          ++compared;
        }
        return {true, "fingerprints and explicit isomorphism agree with " +
                          std::to_string(compared) + " other bs_hull models"};
      });
    }
  }

  return report;
}

Json cohomology_report(const CatalogEntry& entry, long max_degree) {
  Json j;
  j["entry"] = entry.name;
  const std::size_t top = entry.hull.u.dim() + entry.hull.t_dim;
  const std::size_t limit =
      max_degree < 0 ? top : std::min<std::size_t>(top, static_cast<std::size_t>(max_degree));

  if (!entry.lie_side_disabled) {
    const LieAlgebra g = semidirect(entry.hull);
    Json lie;
    for (const auto& nm : entry.modules) {
      const CochainComplex cg = build_complex(g, nm.data.ambient_module(entry.hull));
      Json side;
      std::vector<std::size_t> dims;
      Json spaces = Json::array();
      for (std::size_t n = 0; n <= limit; ++n) {
        const CohomologySpace hn = cohomology(cg, static_cast<long>(n));
        dims.push_back(hn.dim);
        spaces.push_back(cohomology_json(cg, hn));
      }
      side["dims"] = dims;
      side["spaces"] = std::move(spaces);
      if (nm.name == "trivial")
        side["fingerprint"] = fingerprint_json(ring_invariants(ring_structure(cg)));
      lie[nm.name] = std::move(side);
    }
    j["lie"] = std::move(lie);
  } else {
    j["lie"] = Json{{"disabled", *entry.lie_side_disabled}};
  }

  if (entry.discreteness.yes()) {
    Json group;
    for (const auto& nm : entry.modules)
      group[nm.name] = group_model_json(wang_tower(entry.subgroup, nm.data));
    j["group"] = std::move(group);
  } else {
    j["group"] = Json{{"disabled", "torus part not certified discrete"}};
  }
  j["certificates"] = Json{{"density", certificate_json(entry.density.cert)},
                           {"torus_density", certificate_json(entry.torus_density)},
                           {"discreteness", certificate_json(entry.discreteness)}};
  return j;
}

}  // namespace solvcoh
