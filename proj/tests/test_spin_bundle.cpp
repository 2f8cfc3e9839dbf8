// SPDX-License-Identifier: Apache-2.0
#include "test_util.hpp"
#include "twistor/spin_bundle.hpp"

using namespace twistor;
using twistor::testing::check;
using twistor::testing::require_pass;

TEST_CASE("flat spin connection vanishes") {
  for (const auto& x : sample_points(flat_r4(), 4, 3)) {
    auto sc = spin_connection(flat_r4(), x);
    for (int c = 0; c < 4; ++c) {
      CHECK(max_abs(sc.primed[c]) < 1e-15);
      CHECK(max_abs(sc.unprimed[c]) < 1e-15);
    }
  }
}

TEST_CASE("spin connection on hyperbolic space") {
  // Frame coefficients of θ = dx/x⁰ do not depend on the point.
  auto hyp = hyperbolic_half_space();
  Vec4d x(1.0, 0.2, -0.1, 0.3), x2(2.0, 0.2, -0.1, 0.3);
  auto a = spin_connection(hyp, x), b = spin_connection(hyp, x2);
  for (int c = 0; c < 4; ++c) {
    CHECK(max_abs(a.primed[c] - b.primed[c]) < 1e-12);
    CHECK(std::abs(a.primed[c].trace()) < 1e-14);
    CHECK(std::abs(a.unprimed[c].trace()) < 1e-14);
  }
  bool nonzero = false;
  for (int c = 0; c < 4; ++c) nonzero = nonzero || max_abs(a.primed[c]) > 0.1;
  CHECK(nonzero);
}

TEST_CASE("closed form and least squares agree") {
  for (const auto& name : {"hyperbolic", "round_s4", "fubini_study_reversed", "perturbed-noneinstein"}) {
    auto geom = geometry_by_name(name);
    for (const auto& x : sample_points(geom, 3, 11)) {
      auto a = spin_connection(geom, x), b = spin_connection_lsq(geom, x);
      CHECK(b.residual < 1e-10);
      for (int c = 0; c < 4; ++c) {
        CHECK(max_abs(a.primed[c] - b.primed[c]) < 1e-8);
        CHECK(max_abs(a.unprimed[c] - b.unprimed[c]) < 1e-8);
      }
    }
  }
}

TEST_CASE("S-prime curvature") {
  auto s4 = round_s4();
  Vec4d x(0.1, -0.2, 0.3, 0.0);
  auto om = sprime_curvature(s4, x);
  Vec2<cplx> pi(cplx(0.4, -0.3), cplx(1.1, 0.2));
  auto model = sprime_curvature_model(lambda_at(s4, x), pi);
  double m = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) m = std::max(m, (om[a][b] * pi - model[a][b]).norm());
  CHECK(m < 1e-8);
  CHECK_THROWS_AS(sprime_curvature(perturbed_non_einstein(), Vec4d(0.1, 0.2, 0.0, -0.1)), Error);
  try {
    sprime_curvature(fubini_study(false), x);
    FAIL("expected NotASDEinstein");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotASDEinstein);
  }
}

TEST_CASE("spin_connection_check") {
  for (const auto& name : {"flat_r4", "hyperbolic", "round_s4", "fubini_study_reversed"}) {
    auto geom = geometry_by_name(name);
    auto rep = spin_connection_check(geom, sample_points(geom, 6, 2), sample_spinors(6, 3));
    require_pass(rep);
    CHECK(check(rep, "sprime-curvature").pass);
  }
  auto bad = spin_connection_check(perturbed_non_einstein(), sample_points(perturbed_non_einstein(), 4, 2),
                                   sample_spinors(4, 3));
  require_pass(bad);
  CHECK(bad.find("sprime-curvature") == nullptr);
}
