// SPDX-License-Identifier: Apache-2.0
#include "test_util.hpp"
#include "twistor/twistor_cr.hpp"

using namespace twistor;
using twistor::testing::require_pass;

namespace {

Geometry3 curved_r3() {
  Geometry3 g;
  g.name = "curved-r3";
  g.metric = MatrixField<3>([](const auto& x) {
    using std::exp;
    using S = std::decay_t<decltype(x(0))>;
    Mat3<S> m = Mat3<S>::Identity();
    m(0, 0) = exp(x(1) * 0.4);
    m(1, 1) = S(1.0) + x(0) * x(0) * 0.3;
    m(0, 2) = m(2, 0) = x(2) * 0.1;
    return m;
  });
  return g;
}

}  // namespace

TEST_CASE("flat boundary example") {
  auto h = flat_r3();
  CRPoint p;
  p.x = Vec3d(0.1, -0.2, 0.3);
  CHECK(std::abs(null_defect(h, p)) < 1e-15);
  Mat<cplx, 9, 3> D = cr_distribution(h, p);
  Vec9<cplx> expected = Vec9<cplx>::Zero();  // ∂/∂x¹ + i∂/∂x²
  expected(0) = 1.0;
  expected(1) = cplx(0.0, 1.0);
  CHECK(span_residual(D, expected) < 1e-14);
  Mat2<cplx> L = levi_form(h, p);
  CHECK(max_abs(L - L.adjoint()) < 1e-14);
  CHECK(std::abs(L(0, 0)) < 1e-12);
  CHECK(std::abs(L(1, 1)) < 1e-12);
  CHECK(std::abs(std::abs(L(0, 1)) - 4.0) < 1e-12);
  Eigen::SelfAdjointEigenSolver<Mat2<cplx>> es(L);
  CHECK(es.eigenvalues()(0) < 0.0);
  CHECK(es.eigenvalues()(1) > 0.0);
}

TEST_CASE("non-null covectors are rejected") {
  CRPoint p;
  p.zeta = Vec3<cplx>(1.0, 0.0, 0.0);
  CHECK(std::abs(null_defect(flat_r3(), p) - cplx(1.0)) < 1e-15);
  try {
    cr_distribution(flat_r3(), p);
    FAIL("expected NotNull");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotNull);
  }
  CHECK_THROWS_AS(levi_form(flat_r3(), p), Error);
}

TEST_CASE("sampled null covectors") {
  auto h = curved_r3();
  h.lo = Vec3d::Constant(-1.0);
  h.hi = Vec3d::Constant(1.0);
  auto pts = sample_cr_points(h, 10, 4);
  REQUIRE(pts.size() == 10);
  for (const auto& p : pts) {
    CHECK(std::abs(null_defect(h, p)) < 1e-12);
    CHECK(p.zeta.norm() > 0.1);
  }
}

TEST_CASE("twistor-cr suite") {
  require_pass(twistor_cr_check(flat_r3(), sample_cr_points(flat_r3(), 10, 2)));
  auto h = curved_r3();
  require_pass(twistor_cr_check(h, sample_cr_points(h, 8, 3)));
}

TEST_CASE("tangential spinor and embedding") {
  auto c = compactified_hyperbolic();
  Vec4d x(0.0, 0.1, 0.2, -0.3);
  Vec2<cplx> pi(cplx(0.3, 0.4), cplx(-1.0, 0.2));
  Vec2<cplx> xi = tangential_spinor(*c, x, pi);
  CHECK(std::abs(xi.norm() - 1.0) < 1e-14);
  Vec4<cplx> z = tangential_vector<cplx>(*c, x.cast<cplx>(), pi);
  CHECK(std::abs(z(0)) < 1e-14);  // tangent to the slice r = x⁰
  CHECK(std::abs(z.cwiseProduct(z).sum()) < 1e-14);
  Vec2<cplx> xi2 = tangential_spinor(*c, x, pi * cplx(2.0, -1.0));
  CHECK(std::abs(std::abs(xi.dot(xi2)) - 1.0) < 1e-12);
  require_pass(embedding_check(*c, sample_twistor_points(c->compact, 8, 7)));
}
