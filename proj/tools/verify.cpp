// SPDX-License-Identifier: Apache-2.0
// verify: run verification suites on catalog geometries and emit reports.
#include "twistor/suites.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>

using namespace twistor;

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of twistor-space identities"};
  std::string config_file, geometry, deriv, format, out;
  std::vector<std::string> suites, tols;
  int samples = 0;
  std::uint64_t seed = 0;
  bool list = false;
  app.add_option("--config", config_file, "flat key = value config file");
  app.add_option("--geometry", geometry, "catalog name or inline chart: description");
  app.add_option("--suite", suites, "suite name (repeatable)");
  app.add_option("--samples", samples, "sample count per suite")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "RNG seed");
  app.add_option("--tol", tols, "tolerance override name=value (repeatable)");
  app.add_option("--deriv", deriv, "dual|fd");
  app.add_option("--out", out, "report path");
  app.add_option("--format", format, "json|csv");
  app.add_flag("--list", list, "list suites and geometries");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (list) {
    std::cout << "suites:";
    for (const auto& s : suite_names()) std::cout << ' ' << s;
    std::cout << "\ngeometries:";
    for (const auto& g : catalog_names()) std::cout << ' ' << g;
    std::cout << '\n';
    return 0;
  }

  try {
    RunConfig cfg;
    if (!config_file.empty()) cfg = read_config_file(config_file, cfg);
    if (!geometry.empty()) cfg.geometry = geometry;
    if (!suites.empty()) cfg.suites = suites;
    if (samples > 0) cfg.samples = samples;
    if (app.count("--seed")) cfg.seed = seed;
    if (!deriv.empty()) cfg.deriv = parse_deriv(deriv);
    if (!format.empty()) cfg.format = format;
    if (!out.empty()) cfg.out = out;
    for (const auto& t : tols) {
      auto eq = t.find('=');
      if (eq == std::string::npos) throw Error(ErrorKind::InvalidConfig, "--tol expects name=value, got '" + t + "'");
      try {
        cfg.tolerances[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
      } catch (const std::logic_error&) {
        throw Error(ErrorKind::InvalidConfig, "bad tolerance value in '" + t + "'");
      }
    }
    if (cfg.out.empty()) {
      if (const char* dir = std::getenv("TWISTOR_VERIFY_OUT"); dir && *dir) {
        std::filesystem::create_directories(dir);
        cfg.out = (std::filesystem::path(dir) / ("report." + cfg.format)).string();
      }
    }

    auto reports = run(cfg);
    std::cout << summary_table(reports);
    if (!cfg.out.empty()) emit_report(reports, cfg.out, cfg.format);
    return all_pass(reports) ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "verify: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "verify: " << e.what() << '\n';
    return 2;
  }
}
