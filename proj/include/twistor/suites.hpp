// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "twistor/geometry.hpp"

#include <map>
#include <string>
#include <vector>

namespace twistor {

struct RunConfig {
  std::string geometry = "hyperbolic";
  std::vector<std::string> suites = {"all"};
  int samples = 0;  // 0: per-suite defaults
  std::uint64_t seed = 1;
  /// Overrides keyed by check id or suite/check id.
  std::map<std::string, double> tolerances;
  DerivMode deriv = DerivMode::Dual;
  std::string out;
  std::string format = "json";
};

/// Suite names accepted by `run`, "all" last.
const std::vector<std::string>& suite_names();

/// Default sample count of a suite.
int default_samples(const std::string& suite);

/// Throws UnknownSuite or InvalidConfig.
void validate(const RunConfig& cfg);

/// Reports of one suite on one geometry; throws the precondition error when the suite does not apply.
std::vector<VerificationReport> run_suite(const std::string& suite, const Geometry4& geom, const RunConfig& cfg);

/// Whether `run_suite` has anything to check on `geom`.
bool suite_applies(const std::string& suite, const Geometry4& geom);

/// Runs the configured suites sequentially.  "all" skips suites that do not apply.
std::vector<VerificationReport> run(const RunConfig& cfg);

/// Re-evaluates pass flags under the tolerance overrides.
void apply_tolerances(std::vector<VerificationReport>& reports, const std::map<std::string, double>& tol);

bool all_pass(const std::vector<VerificationReport>& reports);

std::string to_json(const std::vector<VerificationReport>& reports, bool with_timing = true);
std::string to_csv(const std::vector<VerificationReport>& reports);
std::string summary_table(const std::vector<VerificationReport>& reports);

/// Writes JSON or CSV to `path`; throws IoFailure.
void emit_report(const std::vector<VerificationReport>& reports, const std::string& path, const std::string& format);

/// Flat `key = value` file; '#' starts a comment.  Keys: geometry, suite, samples, seed, deriv, out,
/// format, and tol.<name>.  Throws InvalidConfig or IoFailure.
RunConfig read_config_file(const std::string& path, RunConfig base = {});

DerivMode parse_deriv(const std::string& s);

}  // namespace twistor
