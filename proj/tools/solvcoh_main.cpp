#include "solvcoh/catalog.hpp"

#include <CLI11.hpp>

#include <future>
#include <iostream>

namespace {

using namespace solvcoh;

int cmd_catalog(bool as_json, bool run_verify) {
  const auto catalog = builtin_catalog();
  bool all_pass = true;

  std::vector<VerificationReport> reports;
  if (run_verify) {
    // Entries are independent and pure; verify them in a worker pool.
    std::vector<std::future<VerificationReport>> futures;
    for (const auto& entry : catalog)
      futures.push_back(std::async(std::launch::async, [&catalog, &entry] {
        return verify_entry(catalog, entry, "all");
      }));
    for (auto& f : futures) reports.push_back(f.get());
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const bool expected_fail = catalog[i].expect_fail();
      if (reports[i].pass() == expected_fail) all_pass = false;
    }
  }

  if (as_json) {
    Json j;
    Json entries = Json::array();
    for (std::size_t i = 0; i < catalog.size(); ++i) {
      const auto& entry = catalog[i];
      Json e;
      e["name"] = entry.name;
      e["u_dim"] = entry.hull.u.dim();
      e["t_dim"] = entry.hull.t_dim;
      e["density"] = entry.density.cert.verdict_string();
      e["torus_density"] = entry.torus_density.verdict_string();
      e["discreteness"] = entry.discreteness.verdict_string();
      e["expected_fail"] = entry.expect_fail();
      if (entry.expect_fail()) e["failing_hypothesis"] = entry.expected.fails->value;
      if (entry.lie_side_disabled) e["lie_side_disabled"] = *entry.lie_side_disabled;
      if (run_verify) e["report"] = reports[i].to_json();
      entries.push_back(std::move(e));
    }
    j["entries"] = std::move(entries);
    std::cout << j.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < catalog.size(); ++i) {
      const auto& entry = catalog[i];
      std::cout << entry.name << ": u_dim " << entry.hull.u.dim() << ", t_dim "
                << entry.hull.t_dim << ", density " << entry.density.cert.verdict_string()
                << ", discreteness " << entry.discreteness.verdict_string();
      if (entry.expect_fail())
        std::cout << " [non-example: expected to fail " << entry.expected.fails->value << "]";
      if (entry.lie_side_disabled) std::cout << " [lie side disabled]";
      std::cout << "\n";
      if (run_verify) std::cout << reports[i].to_table();
    }
  }
  return run_verify && !all_pass ? 1 : 0;
}

int cmd_cohomology(const std::string& entry_name, const std::string& input,
                   long max_degree, const std::string& format) {
  CatalogEntry entry = [&] {
    if (!input.empty()) return load_config(input);
    const auto catalog = builtin_catalog();
    return find_entry(catalog, entry_name);
  }();
  const Json report = cohomology_report(entry, max_degree);
  if (format == "json") {
    std::cout << report.dump(2) << "\n";
    return 0;
  }
  std::cout << "entry: " << entry.name << "\n";
  if (report["lie"].contains("disabled")) {
    std::cout << "lie side disabled: " << report["lie"]["disabled"].get<std::string>() << "\n";
  } else {
    for (const auto& [module_name, side] : report["lie"].items()) {
      std::cout << "lie dims (" << module_name << "):";
      for (const auto& d : side["dims"]) std::cout << " " << d.get<std::size_t>();
      std::cout << "\n";
    }
  }
  if (report["group"].contains("disabled")) {
    std::cout << "group side disabled: " << report["group"]["disabled"].get<std::string>()
              << "\n";
  } else {
    for (const auto& [module_name, side] : report["group"].items()) {
      std::cout << "group dims (" << module_name << "):";
      for (const auto& d : side["dims"]) std::cout << " " << d.get<std::size_t>();
      if (!side["ring"].is_null()) {
        std::cout << "  ring poincare:";
        for (const auto& d : side["ring"]["poincare"]) std::cout << " " << d.get<std::size_t>();
      }
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_verify(const std::string& entry_name, const std::string& which, bool as_json) {
  const auto catalog = builtin_catalog();
  const CatalogEntry& entry = find_entry(catalog, entry_name);
  const VerificationReport report = verify_entry(catalog, entry, which);
  if (as_json)
    std::cout << report.to_json().dump(2) << "\n";
  else
    std::cout << report.to_table();
  return report.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact cohomology of solvable hulls and their dense subgroup models"};
  app.require_subcommand(1);

  auto* catalog_cmd = app.add_subcommand("catalog", "List the built-in example catalog");
  bool catalog_json = false, catalog_verify = false;
  catalog_cmd->add_flag("--json", catalog_json, "JSON output");
  catalog_cmd->add_flag("--verify", catalog_verify, "Run every check on every entry");

  auto* coh_cmd = app.add_subcommand("cohomology", "Per-degree dims and ring data");
  std::string entry_name, input_path, format = "table";
  long max_degree = -1;
  auto* entry_opt = coh_cmd->add_option("--entry", entry_name, "Catalog entry name");
  auto* input_opt = coh_cmd->add_option("--input", input_path, "Config file path");
  coh_cmd->add_option("--max-degree", max_degree, "Highest degree to report");
  coh_cmd->add_option("--format", format, "table or json")
      ->check(CLI::IsMember({"table", "json"}));
  entry_opt->excludes(input_opt);

  auto* verify_cmd = app.add_subcommand("verify", "Run verification checks on an entry");
  std::string verify_entry_name, which = "all";
  bool verify_json = false;
  verify_cmd->add_option("--entry", verify_entry_name, "Catalog entry name")->required();
  verify_cmd->add_option("--check", which, "Check group to run")
      ->check(CLI::IsMember({"main", "decomposition", "spectral", "restriction", "c17", "all"}));
  verify_cmd->add_flag("--json", verify_json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (catalog_cmd->parsed()) return cmd_catalog(catalog_json, catalog_verify);
    if (coh_cmd->parsed()) {
      if (entry_name.empty() && input_path.empty()) {
        std::cerr << "cohomology requires --entry or --input\n";
        return 2;
      }
      return cmd_cohomology(entry_name, input_path, max_degree, format);
    }
    if (verify_cmd->parsed()) return cmd_verify(verify_entry_name, which, verify_json);
  } catch (const solvcoh::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    // Unknown entries and malformed configs are usage errors.
    const std::string what = e.what();
    if (what.find("unknown catalog entry") != std::string::npos ||
        what.find("cannot open config") != std::string::npos ||
        what.find("parse error") != std::string::npos ||
        what.find("missing field") != std::string::npos ||
        what.find("expected a") != std::string::npos)
      return 2;
    return 1;
  }
  return 2;
}
