// SPDX-License-Identifier: Apache-2.0
#include "test_util.hpp"
#include "twistor/flat_oracle.hpp"

using namespace twistor;
using twistor::testing::require_pass;

TEST_CASE("flat map examples") {
  WPoint w = flat_map(Vec4d::Zero(), Vec2<cplx>(1.0, 0.0));
  CHECK(max_abs(w - WPoint(0.0, 0.0, 0.0, 1.0)) < 1e-15);
  WPoint w1(1.0, 0.0, 1.0, 0.0);
  CHECK(flat_potential(w1) == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(flat_map(Vec4d::Zero(), Vec2<cplx>::Zero()), Error);
  CHECK_THROWS_AS(flat_map_inverse(WPoint(1.0, 2.0, 0.0, 0.0)), Error);
}

TEST_CASE("flat map round trip and potential") {
  auto pts = sample_twistor_points(flat_r4(), 20, 5);
  for (const auto& p : pts) {
    WPoint w = flat_map(p.x, p.pi);
    TwistorPoint b = flat_map_inverse(w);
    CHECK((b.x - p.x).norm() < 1e-12);
    CHECK((b.pi - p.pi).norm() < 1e-12);
    CHECK(std::abs(flat_potential(w) - norm_squared(p.pi).real() * p.x(0)) < 1e-12);
  }
}

TEST_CASE("flat structures") {
  const Mat8d J = flat_J(), Js = standard_J(), G = flat_ambient_metric();
  CHECK((J * J + Mat8d::Identity()).norm() < 1e-15);
  CHECK((Js * Js + Mat8d::Identity()).norm() < 1e-15);
  CHECK((J * Js + Js * J).norm() < 1e-15);
  CHECK((Js.transpose() * G * Js - G).norm() < 1e-14);
  CHECK((J.transpose() * G * J - G).norm() < 1e-14);
  auto sig = signature(Eigen::MatrixXd(G));
  CHECK(sig == std::pair{4, 4});
  const Mat8d om = flat_kahler_form();
  CHECK((om + om.transpose()).norm() < 1e-15);
}

TEST_CASE("flat-oracle suite") {
  auto c = compactified_hyperbolic();
  require_pass(flat_oracle_check(*c, sample_twistor_points(c->compact, 12, 3, &c->r)));
}
