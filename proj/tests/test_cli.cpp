// SPDX-License-Identifier: Apache-2.0
#include "test_util.hpp"
#include "twistor/suites.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace twistor;

namespace {

RunConfig small(const std::string& geometry, std::vector<std::string> suites, int samples = 3) {
  RunConfig cfg;
  cfg.geometry = geometry;
  cfg.suites = std::move(suites);
  cfg.samples = samples;
  cfg.seed = 42;
  return cfg;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::IoFailure;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("twistor_test_" + name);
}

}  // namespace

TEST_CASE("suite registry") {
  const auto& names = suite_names();
  CHECK(names.back() == "all");
  CHECK(names.size() == 12);
  for (const auto& s : names) CHECK(default_samples(s) >= 1);
  CHECK(default_samples("flat-oracle") == 50);
}

TEST_CASE("reports are deterministic") {
  auto cfg = small("round_s4", {"asd-einstein", "integrability"});
  auto a = run(cfg), b = run(cfg);
  CHECK(to_json(a, false) == to_json(b, false));
  CHECK(to_csv(a) == to_csv(b));
  cfg.seed = 43;
  CHECK(to_json(run(cfg), false) != to_json(a, false));
}

TEST_CASE("JSON schema") {
  auto reps = run(small("hyperbolic", {"asd-einstein"}));
  auto j = nlohmann::json::parse(to_json(reps));
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 1);
  const auto& r = j[0];
  for (const char* k : {"suite", "geometry", "checks", "seed", "elapsed_ms"}) CHECK(r.contains(k));
  CHECK(r["suite"] == "asd-einstein");
  CHECK(r["seed"] == 42);
  for (const auto& c : r["checks"])
    for (const char* k : {"id", "anchor", "samples", "max_residual", "tolerance", "pass"}) CHECK(c.contains(k));
  CHECK(nlohmann::json::parse(to_json(reps, false))[0]["elapsed_ms"] == 0.0);
}

TEST_CASE("CSV layout") {
  auto reps = run(small("hyperbolic", {"asd-einstein"}));
  std::istringstream in(to_csv(reps));
  std::string header, line;
  std::getline(in, header);
  CHECK(header == "suite,check,anchor,max_residual,tolerance,pass");
  int rows = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == static_cast<int>(reps[0].checks.size()));
}

TEST_CASE("summary and exit contract") {
  auto good = run(small("hyperbolic", {"asd-einstein"}));
  CHECK(all_pass(good));
  auto n = good[0].checks.size();
  CHECK(summary_table(good).find(std::to_string(n) + "/" + std::to_string(n) + " checks passed") !=
        std::string::npos);
  auto bad = run(small("perturbed-noneinstein", {"asd-einstein"}));
  CHECK_FALSE(all_pass(bad));
}

TEST_CASE("tolerance overrides") {
  auto reps = run(small("hyperbolic", {"asd-einstein"}));
  REQUIRE(all_pass(reps));
  apply_tolerances(reps, {{"asd-einstein/lambda-constant", 1e-300}});
  const CheckRecord* c = reps[0].find("lambda-constant");
  REQUIRE(c != nullptr);
  CHECK(c->tolerance == 1e-300);
  CHECK(c->pass == (c->max_residual <= 1e-300));
  apply_tolerances(reps, {{"lambda-constant", 1.0}});
  CHECK(reps[0].find("lambda-constant")->pass);
}

TEST_CASE("configuration errors") {
  CHECK(kind_of([] { validate(small("hyperbolic", {"nonsense"})); }) == ErrorKind::UnknownSuite);
  CHECK(kind_of([] { run(small("nowhere", {"asd-einstein"})); }) == ErrorKind::UnknownGeometry);
  CHECK(kind_of([] { parse_deriv("symbolic"); }) == ErrorKind::InvalidConfig);
  CHECK(parse_deriv("fd") == DerivMode::FiniteDifference);
  auto cfg = small("hyperbolic", {"asd-einstein"});
  cfg.format = "xml";
  CHECK(kind_of([&] { validate(cfg); }) == ErrorKind::InvalidConfig);
  CHECK(kind_of([] { run(small("round_s4", {"cheng-yau"})); }) == ErrorKind::InvalidConfig);
  CHECK(kind_of([] { run(small("flat_r4", {"integrability"})); }) == ErrorKind::ZeroLambda);
  CHECK(kind_of([] { read_config_file("/nonexistent/dir/cfg.txt"); }) == ErrorKind::IoFailure);
  CHECK(kind_of([] { emit_report({}, "/nonexistent/dir/out.json", "json"); }) == ErrorKind::IoFailure);
}

TEST_CASE("config file") {
  auto path = temp_file("cfg.txt");
  {
    std::ofstream f(path);
    f << "# comment\ngeometry = round_s4\nsuite = asd-einstein\nsuite = integrability\nsamples = 4\n"
         "seed = 9\nderiv = fd\nformat = csv\ntol.lambda-constant = 1e-6\n";
  }
  RunConfig cfg = read_config_file(path.string());
  CHECK(cfg.geometry == "round_s4");
  CHECK(cfg.suites == std::vector<std::string>{"asd-einstein", "integrability"});
  CHECK(cfg.samples == 4);
  CHECK(cfg.seed == 9);
  CHECK(cfg.deriv == DerivMode::FiniteDifference);
  CHECK(cfg.format == "csv");
  CHECK(cfg.tolerances.at("lambda-constant") == 1e-6);
  {
    std::ofstream f(path);
    f << "colour = blue\n";
  }
  CHECK(kind_of([&] { read_config_file(path.string()); }) == ErrorKind::InvalidConfig);
  {
    std::ofstream f(path);
    f << "samples = many\n";
  }
  CHECK(kind_of([&] { read_config_file(path.string()); }) == ErrorKind::InvalidConfig);
  std::filesystem::remove(path);
}

TEST_CASE("report files") {
  auto reps = run(small("hyperbolic", {"asd-einstein"}));
  auto path = temp_file("report.json");
  emit_report(reps, path.string(), "json");
  std::ifstream f(path);
  auto j = nlohmann::json::parse(f);
  CHECK(j[0]["geometry"] == reps[0].geometry);
  std::filesystem::remove(path);
}

TEST_CASE("all suites carry registered anchors") {
  auto reps = run(small("hyperbolic", {"all"}, 2));
  CHECK(reps.size() >= 10);
  for (const auto& r : reps)
    for (const auto& c : r.checks) CHECK_MESSAGE(known_anchor(c.anchor), r.suite << "/" << c.id);
  auto s4 = run(small("round_s4", {"all"}, 2));
  for (const auto& r : s4) {
    CHECK(r.suite != "cheng-yau");
    CHECK(r.suite != "flat-oracle");
  }
}
