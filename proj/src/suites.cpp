// SPDX-License-Identifier: Apache-2.0
#include "twistor/suites.hpp"

#include "twistor/flat_oracle.hpp"
#include "twistor/projective.hpp"
#include "twistor/spin_bundle.hpp"
#include "twistor/total_space.hpp"
#include "twistor/twistor_cr.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace twistor {
namespace {

const std::vector<std::string> kSuites = {
    "asd-einstein", "spin-connection", "integrability", "kahler-potential", "hyperkahler", "curvature-formula",
    "ke-metric",    "cheng-yau",       "ambient-family", "twistor-cr",     "flat-oracle", "all",
};

bool known_suite(const std::string& s) { return std::find(kSuites.begin(), kSuites.end(), s) != kSuites.end(); }

bool needs_total_space(const std::string& s) {
  return s == "integrability" || s == "kahler-potential" || s == "hyperkahler" || s == "curvature-formula" ||
         s == "ke-metric";
}

bool needs_compactification(const std::string& s) {
  return s == "cheng-yau" || s == "ambient-family" || s == "twistor-cr" || s == "flat-oracle";
}

/// ASD-Einstein with Λ ≠ 0 at the chart center.
bool has_total_space(const Geometry4& geom) {
  try {
    TotalSpace::over(geom);
    return true;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotASDEinstein || e.kind() == ErrorKind::ZeroLambda) return false;
    throw;
  }
}

ScalarField<4> dilation_weight() {
  return ScalarField<4>([](const auto& x) {
    using S = std::decay_t<decltype(x(0))>;
    using std::sin;
    return S(sin(x(0)) * 0.2 + x(2) * x(3) * 0.3);
  });
}

ScalarField<4> cheng_yau_weight() {
  return ScalarField<4>([](const auto& x) {
    using S = std::decay_t<decltype(x(0))>;
    return S(x(1) * 0.3 - x(2) * x(3) * 0.1);
  });
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

}  // namespace

const std::vector<std::string>& suite_names() { return kSuites; }

int default_samples(const std::string& suite) {
  if (suite == "asd-einstein" || suite == "spin-connection") return 20;
  if (suite == "ke-metric" || suite == "ambient-family") return 10;
  if (suite == "flat-oracle") return 50;
  if (suite == "all") return 1;
  return 30;
}

DerivMode parse_deriv(const std::string& s) {
  if (s == "dual") return DerivMode::Dual;
  if (s == "fd" || s == "finite-difference") return DerivMode::FiniteDifference;
  throw Error(ErrorKind::InvalidConfig, "derivative mode must be dual or fd, got '" + s + "'");
}

void validate(const RunConfig& cfg) {
  if (cfg.suites.empty()) throw Error(ErrorKind::InvalidConfig, "no suite given");
  for (const auto& s : cfg.suites)
    if (!known_suite(s)) throw Error(ErrorKind::UnknownSuite, "no suite named '" + s + "'");
  if (cfg.samples < 0) throw Error(ErrorKind::InvalidConfig, "samples must be at least 1");
  for (const auto& [k, v] : cfg.tolerances)
    if (!(v > 0.0)) throw Error(ErrorKind::InvalidConfig, "tolerance '" + k + "' must be positive");
  if (cfg.format != "json" && cfg.format != "csv")
    throw Error(ErrorKind::InvalidConfig, "format must be json or csv, got '" + cfg.format + "'");
}

bool suite_applies(const std::string& suite, const Geometry4& geom) {
  if (needs_compactification(suite)) return static_cast<bool>(geom.compactification);
  if (needs_total_space(suite)) return has_total_space(geom);
  return suite != "all";
}

std::vector<VerificationReport> run_suite(const std::string& suite, const Geometry4& geom, const RunConfig& cfg) {
  if (!known_suite(suite) || suite == "all") throw Error(ErrorKind::UnknownSuite, "no suite named '" + suite + "'");
  const int n = cfg.samples > 0 ? cfg.samples : default_samples(suite);
  const std::uint64_t seed = cfg.seed;
  std::vector<VerificationReport> out;
  auto finish = [&](VerificationReport r, std::chrono::steady_clock::time_point t0) {
    r.seed = seed;
    r.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(r));
  };
  auto t0 = std::chrono::steady_clock::now();

  if (needs_compactification(suite) && !geom.compactification)
    throw Error(ErrorKind::InvalidConfig, "suite '" + suite + "' needs a geometry with a conformal compactification");

  if (suite == "asd-einstein") {
    const double tol = cfg.deriv == DerivMode::Dual ? 1e-8 : 1e-5;
    finish(asd_einstein_check(geom, sample_points(geom, n, seed), tol, cfg.deriv), t0);
  } else if (suite == "spin-connection") {
    finish(spin_connection_check(geom, sample_points(geom, n, seed), sample_spinors(n, seed)), t0);
  } else if (needs_total_space(suite)) {
    TotalSpace ts = TotalSpace::over(geom);
    auto pts = sample_twistor_points(geom, n, seed);
    if (suite == "integrability") {
      finish(integrability_check(ts, pts), t0);
    } else if (suite == "kahler-potential") {
      finish(kahler_potential_check(ts, pts), t0);
    } else if (suite == "hyperkahler") {
      finish(hyperkahler_check(ts, pts), t0);
    } else if (suite == "curvature-formula") {
      finish(curvature_formula_check(ts, pts, 1e-4, 1e-3, std::min(n, 3)), t0);
    } else {
      finish(ke_metric_check(ts, sample_projective_points(geom, n, seed)), t0);
      t0 = std::chrono::steady_clock::now();
      finish(ma_descent_check(ts, pts), t0);
    }
  } else {
    const Compactification& c = *geom.compactification;
    const ScalarField<4>* r = &c.r;
    if (suite == "cheng-yau") {
      finish(cheng_yau_check(c, cheng_yau_weight(), sample_projective_points(c.compact, n, seed, r)), t0);
    } else if (suite == "ambient-family") {
      auto pts = sample_twistor_points(c.compact, n, seed, r);
      finish(ambient_family_check(c, pts), t0);
      t0 = std::chrono::steady_clock::now();
      finish(dilation_pushforward_check(c, dilation_weight(), pts), t0);
    } else if (suite == "twistor-cr") {
      finish(twistor_cr_check(c.boundary, sample_cr_points(c.boundary, n, seed)), t0);
      t0 = std::chrono::steady_clock::now();
      finish(embedding_check(c, sample_twistor_points(c.compact, n, seed)), t0);
    } else {
      finish(flat_oracle_check(c, sample_twistor_points(c.compact, n, seed, r)), t0);
    }
  }
  for (auto& rep : out) rep.geometry = geom.name;
  return out;
}

std::vector<VerificationReport> run(const RunConfig& cfg) {
  validate(cfg);
  Geometry4 geom = geometry_by_name(cfg.geometry);
  std::vector<VerificationReport> out;
  for (const auto& s : cfg.suites) {
    if (s == "all") {
      for (const auto& name : kSuites) {
        if (name == "all" || !suite_applies(name, geom)) continue;
        auto r = run_suite(name, geom, cfg);
        out.insert(out.end(), r.begin(), r.end());
      }
    } else {
      auto r = run_suite(s, geom, cfg);
      out.insert(out.end(), r.begin(), r.end());
    }
  }
  apply_tolerances(out, cfg.tolerances);
  return out;
}

void apply_tolerances(std::vector<VerificationReport>& reports, const std::map<std::string, double>& tol) {
  if (tol.empty()) return;
  for (auto& rep : reports)
    for (auto& c : rep.checks) {
      auto it = tol.find(rep.suite + "/" + c.id);
      if (it == tol.end()) it = tol.find(c.id);
      if (it == tol.end()) continue;
      c.tolerance = it->second;
      c.pass = c.samples > 0 && c.max_residual < c.tolerance;
    }
}

bool all_pass(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports)
    if (!r.pass()) return false;
  return true;
}

std::string to_json(const std::vector<VerificationReport>& reports, bool with_timing) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json o;
    o["suite"] = r.suite;
    o["geometry"] = r.geometry;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) {
      nlohmann::ordered_json k;
      k["id"] = c.id;
      k["anchor"] = c.anchor;
      k["samples"] = c.samples;
      k["max_residual"] = c.max_residual;
      k["tolerance"] = c.tolerance;
      k["pass"] = c.pass;
      if (!c.note.empty()) k["note"] = c.note;
      checks.push_back(std::move(k));
    }
    o["checks"] = std::move(checks);
    o["seed"] = r.seed;
    o["elapsed_ms"] = with_timing ? r.elapsed_ms : 0.0;
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

std::string to_csv(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  os << "suite,check,anchor,max_residual,tolerance,pass\n";
  for (const auto& r : reports)
    for (const auto& c : r.checks)
      os << r.suite << ',' << c.id << ",\"" << c.anchor << "\"," << format_double(c.max_residual) << ','
         << format_double(c.tolerance) << ',' << (c.pass ? "true" : "false") << '\n';
  return os.str();
}

std::string summary_table(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  os << std::left << std::setw(18) << "suite" << std::setw(30) << "check" << std::setw(14) << "residual"
     << std::setw(14) << "tolerance" << "result\n";
  int failed = 0, total = 0;
  for (const auto& r : reports)
    for (const auto& c : r.checks) {
      ++total;
      if (!c.pass) ++failed;
      os << std::left << std::setw(18) << r.suite << std::setw(30) << c.id << std::setw(14)
         << format_double(c.max_residual) << std::setw(14) << format_double(c.tolerance)
         << (c.pass ? "pass" : "FAIL") << '\n';
    }
  os << total - failed << "/" << total << " checks passed\n";
  return os.str();
}

void emit_report(const std::vector<VerificationReport>& reports, const std::string& path, const std::string& format) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::IoFailure, "cannot open '" + path + "' for writing");
  f << (format == "csv" ? to_csv(reports) : to_json(reports));
  if (!f) throw Error(ErrorKind::IoFailure, "write to '" + path + "' failed");
}

RunConfig read_config_file(const std::string& path, RunConfig base) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::IoFailure, "cannot read config '" + path + "'");
  auto trim = [](std::string s) {
    const char* ws = " \t\r";
    s.erase(0, s.find_first_not_of(ws));
    s.erase(s.find_last_not_of(ws) + 1);
    return s;
  };
  std::string line;
  int lineno = 0;
  bool suites_set = false;
  while (std::getline(f, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::InvalidConfig, path + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    try {
      if (key == "geometry") {
        base.geometry = val;
      } else if (key == "suite") {
        if (!suites_set) base.suites.clear();
        suites_set = true;
        base.suites.push_back(val);
      } else if (key == "samples") {
        base.samples = std::stoi(val);
        if (base.samples < 1) throw Error(ErrorKind::InvalidConfig, "samples must be at least 1");
      } else if (key == "seed") {
        base.seed = std::stoull(val);
      } else if (key == "deriv") {
        base.deriv = parse_deriv(val);
      } else if (key == "out") {
        base.out = val;
      } else if (key == "format") {
        base.format = val;
      } else if (key.rfind("tol.", 0) == 0) {
        base.tolerances[key.substr(4)] = std::stod(val);
      } else {
        throw Error(ErrorKind::InvalidConfig, "unknown key '" + key + "'");
      }
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::InvalidConfig, path + ":" + std::to_string(lineno) + ": bad value for '" + key + "'");
    }
  }
  return base;
}

}  // namespace twistor
