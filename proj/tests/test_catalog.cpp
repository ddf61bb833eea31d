#include "solvcoh/catalog.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>

using namespace solvcoh;

namespace {

std::string write_temp(const std::string& name, const Json& doc) {
  const std::string path = "solvcoh_test_" + name + ".json";
  std::ofstream out(path);
  out << doc.dump(2);
  return path;
}

Json minimal_h3_doc() {
  Json doc;
  doc["name"] = "h3_file";
  doc["unipotent"] =
      Json{{"dim", 3},
           {"brackets", Json::array({Json::array({0, 1, Json::array({"0", "0", "1"})})})}};
  doc["torus"] = Json{{"dim", 0}, {"derivations", Json::array()}};
  doc["module"] = "trivial";
  doc["subgroup"] =
      Json{{"delta_gens", Json::array({Json{{"log", Json::array({"1", "0", "0"})}},
                                       Json{{"log", Json::array({"0", "1", "0"})}}})}};
  return doc;
}

}  // namespace

TEST_CASE("builtin catalog loads with certificates") {
  const auto catalog = builtin_catalog();
  CHECK(catalog.size() == 10);
  for (const auto& entry : catalog) {
    CHECK(entry.density.cert.yes());
    if (entry.expect_fail()) {
      const std::string& hypothesis = entry.expected.fails->value;
      if (hypothesis == "discreteness")
        CHECK(entry.discreteness.verdict == Certificate::Verdict::No);
      if (hypothesis == "not Q-split") {
        REQUIRE(entry.lie_side_disabled.has_value());
        CHECK(entry.lie_side_disabled->find("not Q-split") != std::string::npos);
      }
    } else {
      CHECK(entry.discreteness.yes());
      CHECK_FALSE(entry.lie_side_disabled.has_value());
    }
  }
  CHECK_THROWS_WITH_AS(find_entry(catalog, "nope"), doctest::Contains("unknown"), Error);
}

TEST_CASE("config round trip is canonical") {
  const std::string path = write_temp("h3", minimal_h3_doc());
  const CatalogEntry entry = load_config(path);
  CHECK(entry.name == "h3_file");
  const Json first = entry_to_json(entry);
  // Loading the canonical form again reproduces it byte for byte.
  const std::string path2 = write_temp("h3_canonical", first);
  const Json second = entry_to_json(load_config(path2));
  CHECK(first.dump() == second.dump());
  std::remove(path.c_str());
  std::remove(path2.c_str());
}

TEST_CASE("config errors carry paths and witnesses") {
  SUBCASE("missing fields are schema errors") {
    Json doc = minimal_h3_doc();
    doc.erase("unipotent");
    CHECK_THROWS_WITH_AS(entry_from_json(doc), doctest::Contains("unipotent"), Error);
  }
  SUBCASE("broken jacobi names the triple") {
    Json doc = minimal_h3_doc();
    doc["unipotent"]["brackets"].push_back(Json::array({0, 2, Json::array({"1", "0", "0"})}));
    CHECK_THROWS_WITH_AS(entry_from_json(doc), doctest::Contains("(0, 1, 2)"), Error);
  }
  SUBCASE("irrational derivation weights are rejected") {
    Json doc = minimal_h3_doc();
    doc["unipotent"] = Json{{"dim", 2}};
    doc["torus"] = Json{{"dim", 1},
                        {"derivations", Json::array({Json::array({Json::array({"2", "1"}),
                                                                  Json::array({"1", "1"})})})}};
    doc["subgroup"] = Json{{"delta_gens", Json::array({Json{{"log", Json::array({"1", "0"})}}})}};
    CHECK_THROWS_WITH_AS(entry_from_json(doc), doctest::Contains("not Q-split"), Error);
  }
  SUBCASE("matrix generators need a representation") {
    Json doc = minimal_h3_doc();
    doc["subgroup"] = Json{
        {"delta_gens", Json::array({Json::array({Json::array({"1", "1", "0"}),
                                                 Json::array({"0", "1", "0"}),
                                                 Json::array({"0", "0", "1"})})})}};
    CHECK_THROWS_WITH_AS(entry_from_json(doc), doctest::Contains("representation"), Error);
  }
  SUBCASE("malformed rationals point at their location") {
    Json doc = minimal_h3_doc();
    doc["subgroup"]["delta_gens"][0]["log"][0] = "x";
    CHECK_THROWS_WITH_AS(entry_from_json(doc), doctest::Contains("cannot parse rational"), Error);
  }
}

TEST_CASE("verification reports") {
  const auto catalog = builtin_catalog();
  SUBCASE("bs_hull2 passes the main check") {
    const VerificationReport report = verify_entry(catalog, find_entry(catalog, "bs_hull2"), "main");
    CHECK(report.pass());
    const Json j = report.to_json();
    CHECK(j["pass"] == true);
    CHECK(j["entry"] == "bs_hull2");
  }
  SUBCASE("multi_prime2 fails main with the discreteness hypothesis") {
    const VerificationReport report =
        verify_entry(catalog, find_entry(catalog, "multi_prime2"), "main");
    CHECK_FALSE(report.pass());
    bool saw_discreteness_failure = false;
    for (const auto& check : report.checks)
      if (check.verdict == "FAIL" && check.detail.find("discreteness") != std::string::npos)
        saw_discreteness_failure = true;
    CHECK(saw_discreteness_failure);
  }
  SUBCASE("anosov is rejected from the lie side but keeps its group dims") {
    const VerificationReport report =
        verify_entry(catalog, find_entry(catalog, "anosov_tower"), "all");
    bool group_dims_pass = false, comparison_failed_qsplit = false;
    for (const auto& check : report.checks) {
      if (check.name == "group_dims" && check.verdict == "PASS") group_dims_pass = true;
      if (check.name == "comparison" && check.verdict == "FAIL" &&
          check.detail.find("not Q-split") != std::string::npos)
        comparison_failed_qsplit = true;
    }
    CHECK(group_dims_pass);
    CHECK(comparison_failed_qsplit);
  }
  SUBCASE("skipped checks name the failed hypothesis") {
    const VerificationReport report =
        verify_entry(catalog, find_entry(catalog, "anosov_tower"), "spectral");
    for (const auto& check : report.checks) {
      CHECK(check.verdict == "SKIPPED");
      CHECK(check.detail.find("not Q-split") != std::string::npos);
    }
  }
  SUBCASE("c17 compares all bs pairs") {
    const VerificationReport report = verify_entry(catalog, find_entry(catalog, "bs_hull3"), "c17");
    REQUIRE(report.checks.size() == 1);
    CHECK(report.checks[0].verdict == "PASS");
    CHECK(report.checks[0].detail.find("2 other") != std::string::npos);
  }
}

TEST_CASE("reports are deterministic modulo timings") {
  const auto catalog = builtin_catalog();
  const CatalogEntry& entry = find_entry(catalog, "bs_hull2");
  Json a = verify_entry(catalog, entry, "main").to_json();
  Json b = verify_entry(catalog, entry, "main").to_json();
  for (auto& check : a["checks"]) check.erase("millis");
  for (auto& check : b["checks"]) check.erase("millis");
  CHECK(a.dump() == b.dump());
}

TEST_CASE("cohomology reports") {
  const auto catalog = builtin_catalog();
  SUBCASE("h3 reports its betti numbers") {
    const Json j = cohomology_report(find_entry(catalog, "h3"), -1);
    CHECK(j["lie"]["trivial"]["dims"] == Json::array({1, 2, 2, 1}));
    CHECK(j["group"]["trivial"]["dims"] == Json::array({1, 2, 2, 1}));
  }
  SUBCASE("bs_hull2 reports dims (1, 1, 0) in json") {
    const Json j = cohomology_report(find_entry(catalog, "bs_hull2"), -1);
    CHECK(j["lie"]["trivial"]["dims"] == Json::array({1, 1, 0}));
    CHECK(j["group"]["trivial"]["ring"]["poincare"] == Json::array({1, 1, 0}));
  }
  SUBCASE("abelian3 reports binomials") {
    const Json j = cohomology_report(find_entry(catalog, "abelian3"), -1);
    CHECK(j["lie"]["trivial"]["dims"] == Json::array({1, 3, 3, 1}));
  }
  SUBCASE("max degree truncates the report") {
    const Json j = cohomology_report(find_entry(catalog, "h3"), 1);
    CHECK(j["lie"]["trivial"]["dims"] == Json::array({1, 2}));
  }
}

TEST_CASE("cochain serialization lists nonzero coefficients") {
  const LieAlgebra h3 = LieAlgebra::heisenberg3();
  const CochainComplex c = build_complex(h3, LieModule::trivial(h3));
  RatVec cochain(c.space_dim(1), Rational(0));
  cochain[2] = Rational(-5, 3);
  const Json j = cochain_json(c, 1, cochain);
  CHECK(j["degree"] == 1);
  REQUIRE(j["coefficients"].size() == 1);
  CHECK(j["coefficients"][0]["subset"] == Json::array({2}));
  CHECK(j["coefficients"][0]["value"] == "-5/3");
}
