// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "twistor/report.hpp"

#include <doctest.h>

#include <string>

namespace twistor::testing {

/// Every check passes and carries a registered anchor; failures are listed by id.
inline void require_pass(const VerificationReport& rep) {
  std::string failed;
  for (const auto& c : rep.checks) {
    if (!c.pass) failed += c.id + "(" + std::to_string(c.max_residual) + ") ";
    CHECK_MESSAGE(known_anchor(c.anchor), rep.suite << "/" << c.id << " anchor " << c.anchor);
  }
  REQUIRE_FALSE(rep.checks.empty());
  CHECK_MESSAGE(failed.empty(), rep.suite << " on " << rep.geometry << ": " << failed);
}

inline const CheckRecord& check(const VerificationReport& rep, const std::string& id) {
  const CheckRecord* c = rep.find(id);
  REQUIRE_MESSAGE(c != nullptr, "missing check " << id);
  return *c;
}

}  // namespace twistor::testing
