#pragma once

#include "solvcoh/spectral.hpp"

#include <json.hpp>

namespace solvcoh {

using Json = nlohmann::json;

inline constexpr const char* kToolVersion = "solvcoh 0.1.0";

/// One named coefficient module of a catalog entry; "trivial" is always
/// present.
struct NamedModule {
  std::string name;
  HullModule data;
};

/// Expected value with a provenance tag ("reported", "trivial" or "derived").
template <typename T>
struct Expected {
  T value{};
  std::string tag;
};

struct ExpectedData {
  std::optional<Expected<std::vector<std::size_t>>> lie_betti;
  std::optional<Expected<std::vector<std::size_t>>> group_dims;
  std::optional<Expected<std::size_t>> hirsch;
  std::optional<Expected<std::string>> fails;  // name of the failing hypothesis
};

struct CatalogEntry {
  std::string name;
  SemidirectPresentation hull;
  DenseSubgroupData subgroup;
  std::vector<NamedModule> modules;  // first is always "trivial"
  ExpectedData expected;
  std::optional<std::string> lie_side_disabled;  // reason, when the hull is rejected

  // Certificates computed on load.
  DensityCertificate density;
  Certificate torus_density;
  Certificate discreteness;

  bool expect_fail() const { return expected.fails.has_value(); }
};

/// The built-in example families. Every entry loads with its certificates
/// computed; non-examples carry an expected-failure annotation.
std::vector<CatalogEntry> builtin_catalog();

const CatalogEntry& find_entry(const std::vector<CatalogEntry>& catalog,
                               const std::string& name);

/// Strict config ingestion: schema errors carry JSON-pointer-style paths,
/// mathematical validation failures carry witnesses.
CatalogEntry load_config(const std::string& path);
CatalogEntry entry_from_json(const Json& doc);

/// Canonical serialization: sorted keys, reduced rationals, normalized field
/// order.
Json entry_to_json(const CatalogEntry& entry);

// JSON helpers shared by the CLI.
Json rational_json(const Rational& r);
Json matrix_json(const RatMatrix& m);
RatMatrix matrix_from_json(const Json& j, const std::string& where);
RatVec vector_from_json(const Json& j, const std::string& where);
Json certificate_json(const Certificate& c);
Json cohomology_json(const CochainComplex& complex, const CohomologySpace& space);
Json cochain_json(const CochainComplex& complex, std::size_t degree, const RatVec& cochain);
Json fingerprint_json(const RingFingerprint& fp);
Json group_model_json(const GroupCohModel& model);
Json page_json(const Page& page);

struct CheckRecord {
  std::string name;
  std::string verdict;  // PASS, FAIL or SKIPPED
  std::string detail;
  double millis = 0.0;
};

struct VerificationReport {
  std::string entry;
  std::vector<CheckRecord> checks;
  std::string tool_version = kToolVersion;

  bool pass() const;
  Json to_json() const;
  std::string to_table() const;
};

/// Which checks to run: main, decomposition, spectral, restriction, c17, all.
VerificationReport verify_entry(const std::vector<CatalogEntry>& catalog,
                                const CatalogEntry& entry, const std::string& which);

/// Per-degree dims and fingerprints for both sides of an entry.
Json cohomology_report(const CatalogEntry& entry, long max_degree);

}  // namespace solvcoh
