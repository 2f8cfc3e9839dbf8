// SPDX-License-Identifier: Apache-2.0
// Acceptance criteria: one PASS/FAIL line each; exit status 1 if any fails.
#include "twistor/flat_oracle.hpp"
#include "twistor/projective.hpp"
#include "twistor/suites.hpp"
#include "twistor/twistor_cr.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace twistor;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    pass = false;
    detail << " [" << why << "]";
  }
  /// The named check must exist, pass, and sit below `bound`.
  void require(const VerificationReport& rep, const std::string& id, double bound) {
    const CheckRecord* c = rep.find(id);
    if (!c) return fail(rep.suite + "/" + id + " missing");
    detail << ' ' << rep.geometry << ':' << id << '=' << c->max_residual;
    if (!c->pass || !(c->max_residual < bound)) fail(rep.suite + "/" + id + " on " + rep.geometry);
  }
  void require_value(const std::string& what, double value, double bound) {
    detail << ' ' << what << '=' << value;
    if (!(value < bound)) fail(what);
  }
};

const char* const kAsdBases[] = {"hyperbolic", "round_s4", "fubini_study_reversed"};

ScalarField<4> dilation_factor() {
  return ScalarField<4>([](const auto& x) {
    using std::sin;
    using S = std::decay_t<decltype(x(0))>;
    return S(sin(x(0)) * 0.2 + x(2) * x(3) * 0.3);
  });
}

ScalarField<4> cy_rescale() {
  return ScalarField<4>([](const auto& x) {
    using S = std::decay_t<decltype(x(0))>;
    return S(x(1) * 0.3 - x(2) * x(3) * 0.1);
  });
}

void flat_oracle(Outcome& o) {
  auto t0 = Clock::now();
  auto c = compactified_hyperbolic();
  auto rep = flat_oracle_check(*c, sample_twistor_points(c->compact, 50, 1, &c->r), 1e-6, 1e-8);
  o.require(rep, "metric-pullback", 1e-6);
  o.require(rep, "J-pushforward", 1e-8);
  o.require(rep, "potential-pullback", 1e-8);
  o.require_value("seconds", seconds_since(t0), 30.0);
}

void curvature_spinor_values(Outcome& o) {
  const std::pair<const char*, double> cases[] = {{"hyperbolic", -0.5}, {"round_s4", 0.5}};
  for (auto [name, want] : cases) {
    auto geom = geometry_by_name(name);
    double dl = 0.0, spin = 0.0, scal = 0.0;
    for (const auto& x : sample_points(geom, 20, 1)) {
      auto cd = curvature(geom, x);
      auto cs = curvature_spinors(cd);
      dl = std::max(dl, std::abs(cs.lambda - want));
      spin = std::max({spin, cs.psi.max_abs(), cs.psi_tilde.max_abs(), cs.phi.max_abs()});
      scal = std::max(scal, std::abs(cd.scalar - 24.0 * want));  // constant curvature: R = 12K
    }
    o.require_value(std::string(name) + ":|lambda-target|", dl, 1e-8);
    o.require_value(std::string(name) + ":max|psi,psi~,phi|", spin, 1e-8);
    o.require_value(std::string(name) + ":|R-12K|", scal, 1e-7);
  }
}

template <class F>
void over_bases(Outcome& o, int n, F&& f) {
  for (const char* name : kAsdBases) {
    auto ts = TotalSpace::over(geometry_by_name(name));
    f(ts, sample_twistor_points(ts.base(), n, 1));
  }
}

void kahler_potential(Outcome& o) {
  over_bases(o, 30, [&](const TotalSpace& ts, const std::vector<TwistorPoint>& pts) {
    o.require(kahler_potential_check(ts, pts, 1e-5), "potential", 1e-5);
  });
}

void hyperkahler(Outcome& o) {
  over_bases(o, 30, [&](const TotalSpace& ts, const std::vector<TwistorPoint>& pts) {
    auto rep = hyperkahler_check(ts, pts, 1e-4);
    o.require(rep, "nabla-J", 1e-4);
    o.require(rep, "nabla-omega", 1e-4);
    o.require(rep, "ricci-flat", 1e-4);
    const CheckRecord* sig = rep.find("signature");
    const std::string want = ts.lambda() < 0 ? "(4,4)" : "(8,0)";
    o.detail << ' ' << rep.geometry << ":signature=" << (sig ? sig->note : "?");
    if (!sig || sig->note != want) o.fail("signature on " + rep.geometry);
  });
}

void curvature_formula(Outcome& o) {
  over_bases(o, 30, [&](const TotalSpace& ts, const std::vector<TwistorPoint>& pts) {
    auto rep = curvature_formula_check(ts, pts, 1e-4, 1e-3);
    o.require(rep, "nonhorizontal-zero", 1e-4);
    if (ts.base().name == fubini_study_reversed().name)
      o.require(rep, "horizontal-relative", 1e-3);
    else
      o.require(rep, "flat-total", 1e-4);
  });
}

void integrability(Outcome& o) {
  over_bases(o, 30, [&](const TotalSpace& ts, const std::vector<TwistorPoint>& pts) {
    auto rep = integrability_check(ts, pts, 1e-10, 1e-5);
    o.require(rep, "nijenhuis-I", 1e-5);
    o.require(rep, "nijenhuis-J", 1e-5);
  });
}

void kahler_einstein(Outcome& o) {
  for (const char* name : kAsdBases) {
    auto ts = TotalSpace::over(geometry_by_name(name));
    auto rep = ke_metric_check(ts, sample_projective_points(ts.base(), 10, 1), 1e-6, 1e-8, 1e-3);
    o.require(rep, "off-block", 1e-6);
    o.require(rep, "horizontal-block", 1e-6);
    o.require(rep, "fiber-block", 1e-8);
    o.require(rep, "einstein-constant", 1e-3);
  }
}

void cheng_yau(Outcome& o) {
  auto c = compactified_hyperbolic();
  auto rep = cheng_yau_check(*c, cy_rescale(), sample_projective_points(c->compact, 30, 1, &c->r), 1e-6, 1e-8);
  o.require(rep, "horizontal-block", 1e-6);
  o.require(rep, "fiber-block", 1e-6);
  o.require(rep, "off-block", 1e-6);
  o.require(rep, "r-independence", 1e-8);
}

void dilation(Outcome& o) {
  auto c = compactified_hyperbolic();
  auto rep = dilation_pushforward_check(*c, dilation_factor(), sample_twistor_points(c->compact, 30, 1, &c->r), 1e-6);
  o.require(rep, "I-eigenspace-pushforward", 1e-6);
  o.require(rep, "J-eigenspace-pushforward", 1e-6);
  o.require(rep, "metric-pullback", 1e-6);
}

void twistor_cr(Outcome& o) {
  auto rep = twistor_cr_check(flat_r3(), sample_cr_points(flat_r3(), 30, 1), 1e-10, 1e-6);
  o.require(rep, "omega-isotropy", 1e-10);
  o.require(rep, "levi-signature", 0.5);
  auto c = compactified_hyperbolic();
  auto emb = embedding_check(*c, sample_twistor_points(c->compact, 30, 1), 1e-6);
  o.require(emb, "embedding-cr", 1e-6);
  if (!emb.pass()) o.fail("embedding_check");
}

void negative_controls(Outcome& o) {
  auto bad = perturbed_non_einstein();
  auto asd = asd_einstein_check(bad, sample_points(bad, 20, 1), 1e-8);
  o.detail << " perturbed:" << (asd.pass() ? "passes" : "fails");
  if (asd.pass()) o.fail("non-Einstein perturbation passes");
  auto wrong = fubini_study(false);
  auto rep = asd_einstein_check(wrong, sample_points(wrong, 20, 1), 1e-8);
  const CheckRecord* c = rep.find("psi-tilde-zero");
  o.detail << " wrong-orientation:psi-tilde-zero=" << (c ? c->max_residual : -1.0);
  if (!c || c->pass) o.fail("wrong orientation passes psi-tilde-zero");
}

void full_suite(Outcome& o) {
  auto t0 = Clock::now();
  for (const char* name : {"flat_r4", "hyperbolic", "round_s4", "fubini_study_reversed"}) {
    RunConfig cfg;
    cfg.geometry = name;
    auto reps = run(cfg);
    int n = 0, ok = 0;
    for (const auto& r : reps)
      for (const auto& c : r.checks) {
        ++n;
        ok += c.pass;
      }
    o.detail << ' ' << name << '=' << ok << '/' << n;
    if (ok != n || n == 0) o.fail(std::string(name) + " has failing checks");
  }
  o.require_value("seconds", seconds_since(t0), 600.0);
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Outcome&)>> criteria[] = {
      {"flat-oracle equivalence", flat_oracle},
      {"curvature spinors of H4 and S4", curvature_spinor_values},
      {"kahler potential", kahler_potential},
      {"hyperkahler", hyperkahler},
      {"curvature formula", curvature_formula},
      {"integrability", integrability},
      {"kahler-einstein blocks", kahler_einstein},
      {"cheng-yau", cheng_yau},
      {"dilation equivariance", dilation},
      {"twistor CR", twistor_cr},
      {"negative controls", negative_controls},
      {"full suite runtime", full_suite},
  };
  int failures = 0, k = 0;
  for (const auto& [name, fn] : criteria) {
    ++k;
    Outcome o;
    auto t0 = Clock::now();
    try {
      fn(o);
    } catch (const std::exception& e) {
      o.fail(e.what());
    }
    std::printf("%s %2d %s (%.1fs):%s\n", o.pass ? "PASS" : "FAIL", k, name, seconds_since(t0), o.detail.str().c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  std::printf("%d/%d criteria passed\n", k - failures, k);
  return failures == 0 ? 0 : 1;
}
