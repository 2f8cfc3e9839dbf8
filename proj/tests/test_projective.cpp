// SPDX-License-Identifier: Apache-2.0
#include "test_util.hpp"
#include "twistor/projective.hpp"

using namespace twistor;
using twistor::testing::check;
using twistor::testing::require_pass;

TEST_CASE("sections and quotients") {
  Vec6<cplx> q;
  q << 0.3, -0.1, 0.2, 0.4, 0.5, -0.7;
  for (int chart = 0; chart < 2; ++chart) {
    Vec8<cplx> y = section(q, chart);
    CHECK(max_abs(quotient(y, chart) - q) < 1e-15);
    CHECK(max_abs(quotient_jacobian(y, chart) * section_jacobian(chart) - Mat6<cplx>::Identity()) < 1e-14);
  }
  Vec8<cplx> y0 = section(q, 0);
  CHECK(y0(4) == cplx(1.0));
  CHECK(y0(6) == cplx(0.5));
  CHECK(y0(7) == cplx(-0.7));
}

TEST_CASE("Kähler-Einstein metric at z = 0") {
  for (const auto& name : {"hyperbolic", "round_s4", "fubini_study_reversed"}) {
    auto geom = geometry_by_name(name);
    auto ts = TotalSpace::over(geom);
    ProjectivePoint p;
    p.x = 0.5 * (geom.lo + geom.hi);
    Mat6d g = ke_metric(ts, p);
    CHECK(max_abs(g - g.transpose()) < 1e-10);
    CHECK(std::abs(g(4, 4) - g(5, 5)) < 1e-10);
    CHECK(std::abs(g(4, 5)) < 1e-10);
    auto sig = signature(Eigen::MatrixXd(g));
    CHECK(sig == (ts.lambda() > 0 ? std::pair{6, 0} : std::pair{2, 4}));
  }
  CHECK_THROWS_AS(ke_metric(perturbed_non_einstein(), ProjectivePoint{}), Error);
}

TEST_CASE("ke-metric and ma-descent suites") {
  for (const auto& name : {"hyperbolic", "round_s4", "fubini_study_reversed"}) {
    auto ts = TotalSpace::over(geometry_by_name(name));
    auto rep = ke_metric_check(ts, sample_projective_points(ts.base(), 4, 6));
    require_pass(rep);
    CHECK(check(rep, "chart-independence").samples > 0);
    require_pass(ma_descent_check(ts, sample_twistor_points(ts.base(), 3, 6)));
  }
}

TEST_CASE("Cheng-Yau metric") {
  auto c = compactified_hyperbolic();
  ProjectivePoint p;
  p.x = Vec4d(0.5, 0.1, -0.2, 0.3);
  p.z = cplx(0.2, -0.4);
  Mat6d g = cheng_yau_metric(*c, p);
  CHECK(max_abs(g - g.transpose()) < 1e-10);
  CHECK(signature(Eigen::MatrixXd(g)) == std::pair{4, 2});
  ProjectivePoint b = p;
  b.x(0) = 0.01;
  try {
    cheng_yau_metric(*c, b);
    FAIL("expected BoundaryPoint");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BoundaryPoint);
  }
  ScalarField<4> ups([](const auto& x) {
    using S = std::decay_t<decltype(x(0))>;
    return S(x(1) * 0.3 - x(2) * x(3) * 0.1);
  });
  require_pass(cheng_yau_check(*c, ups, sample_projective_points(c->compact, 5, 9, &c->r)));
}
