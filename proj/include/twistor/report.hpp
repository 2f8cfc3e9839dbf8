// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace twistor {

struct CheckRecord {
  std::string id;
  std::string anchor;
  int samples = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

struct VerificationReport {
  std::string suite;
  std::string geometry;
  std::vector<CheckRecord> checks;
  std::uint64_t seed = 0;
  double elapsed_ms = 0.0;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  const CheckRecord* find(const std::string& id) const {
    for (const auto& c : checks)
      if (c.id == id) return &c;
    return nullptr;
  }
};

/// Anchor strings a check record may carry.
inline const std::vector<std::string>& anchor_registry() {
  static const std::vector<std::string> r = {
      "Eq sigma",          "Eq sigma-square",       "Eq invariance-e-tensor", "Sec spinor-calculus",
      "Eq I-map",          "Eq J-map",              "Eq I-J",                 "Thm swann",
      "Eq S-prime-curvature", "Eq Omega-star-pi",   "Eq e-rescale",           "Eq spinor-conf",
      "Eq d-delta",        "Sec def-I",             "Thm I-integrable",       "Sec def-J",
      "Thm J-integrable",  "Eq omega",              "Eq omega-J",             "Thm thm-potential",
      "Eq wt-g",           "Thm J-parallel",        "Prop canonical-bundle",  "Thm curvature-wt-g",
      "Lemma hessian1",    "Lemma hessian2",        "Eq MA-descend",          "Thm Kahler-Einstein",
      "Prop totally",      "Prop twistor-CR-local", "Prop dilation",          "Lemma def-xi",
      "Eq tangential",     "Thm CR-isom",           "Eq tau",                 "Eq omega-J-r",
      "Eq potential-r",    "Thm main-theorem",      "Eq norm-r",              "Thm cheng-yau",
      "Sec flat-case",     "Eq A-property",         "Prop J-flat",            "Eq omega-J-flat",
      "Sec ambient-conf-CR",
  };
  return r;
}

inline bool known_anchor(const std::string& a) {
  for (const auto& s : anchor_registry())
    if (s == a) return true;
  return false;
}

/// Running maximum of a residual over sample points.
class Residual {
 public:
  void add(double r) {
    if (r != r) nan_ = true;
    if (r > max_) max_ = r;
    ++n_;
  }
  double max() const { return nan_ ? std::numeric_limits<double>::infinity() : max_; }
  int count() const { return n_; }

  CheckRecord record(std::string id, std::string anchor, double tol) const {
    CheckRecord c;
    c.id = std::move(id);
    c.anchor = std::move(anchor);
    c.samples = n_;
    c.max_residual = max();
    c.tolerance = tol;
    c.pass = n_ > 0 && c.max_residual < tol;
    return c;
  }

 private:
  double max_ = 0.0;
  int n_ = 0;
  bool nan_ = false;
};

}  // namespace twistor
