// SPDX-License-Identifier: Apache-2.0
#include "test_util.hpp"
#include "twistor/geometry.hpp"

using namespace twistor;
using twistor::testing::require_pass;

namespace {

double diff4(const Tensor4<4>& a, const Tensor4<4>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) m = std::max(m, std::abs(a.data[i] - b.data[i]));
  return m;
}

ScalarField<4> log_x0() {
  return ScalarField<4>([](const auto& x) {
    using std::log;
    using S = std::decay_t<decltype(x(0))>;
    return S(log(x(0)));
  });
}

}  // namespace

TEST_CASE("orthonormal coframes") {
  auto flat = flat_r4();
  Vec4<cplx> x(0.3, -0.2, 0.1, 0.5);
  CHECK(max_abs(orthonormal_coframe<cplx, 4>(flat, x) - Mat4<cplx>::Identity()) < 1e-15);

  auto hyp = hyperbolic_half_space();
  Vec4<cplx> x2(2.0, 0.1, -0.3, 0.2);
  CHECK(max_abs(orthonormal_coframe<cplx, 4>(hyp, x2) - 0.5 * Mat4<cplx>::Identity()) < 1e-15);

  auto s4 = round_s4();
  Mat4<cplx> th = orthonormal_coframe<cplx, 4>(s4, Vec4<cplx>::Zero());
  Mat4<cplx> g = s4.g(Vec4<cplx>(Vec4<cplx>::Zero()));
  CHECK(max_abs(th - std::sqrt(g(0, 0).real()) * Mat4<cplx>::Identity()) < 1e-14);

  for (const auto& name : {"hyperbolic", "round_s4", "fubini_study_reversed"}) {
    auto geom = geometry_by_name(name);
    for (const auto& p : sample_points(geom, 5, 2)) {
      Vec4<cplx> pc = p.cast<cplx>();
      Mat4<cplx> t = orthonormal_coframe<cplx, 4>(geom, pc);
      CHECK(max_abs(Mat4<cplx>(t.transpose() * t) - geom.g(pc)) < 1e-13);
      CHECK(t.determinant().real() * geom.orientation > 0.0);
    }
  }
}

TEST_CASE("curvature of constant-curvature models") {
  for (const auto& x : sample_points(flat_r4(), 3, 5)) {
    auto cd = curvature(flat_r4(), x);
    CHECK(cd.riemann.max_abs() < 1e-9);
  }
  for (const auto& x : sample_points(hyperbolic_half_space(), 5, 5)) {
    auto cd = curvature(hyperbolic_half_space(), x);
    CHECK(cd.scalar == doctest::Approx(-12.0).epsilon(1e-10));
    CHECK(cd.weyl.max_abs() < 1e-9);
    auto cs = curvature_spinors(cd);
    CHECK(cs.lambda == doctest::Approx(-0.5).epsilon(1e-10));
    CHECK(cs.psi.max_abs() < 1e-8);
    CHECK(cs.psi_tilde.max_abs() < 1e-8);
    CHECK(cs.phi.max_abs() < 1e-8);
  }
  for (const auto& x : sample_points(round_s4(), 5, 5)) {
    auto cd = curvature(round_s4(), x);
    CHECK(cd.scalar == doctest::Approx(12.0).epsilon(1e-10));
    CHECK(cd.weyl.max_abs() < 1e-9);
    CHECK(lambda_at(round_s4(), x) == doctest::Approx(0.5).epsilon(1e-10));
  }
}

TEST_CASE("curvature decomposition identities") {
  for (const auto& name : {"hyperbolic", "round_s4", "fubini_study_reversed", "perturbed-noneinstein"}) {
    auto geom = geometry_by_name(name);
    for (const auto& x : sample_points(geom, 3, 9)) {
      auto cd = curvature(geom, x);
      auto cs = curvature_spinors(cd);
      CHECK(cs.reassembly_residual < 1e-8);
      CHECK(std::abs(cd.scalar - 24.0 * cs.lambda) < 1e-8);
      // first Bianchi
      double bianchi = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          for (int c = 0; c < 4; ++c)
            for (int d = 0; d < 4; ++d)
              bianchi = std::max(bianchi, std::abs(cd.riemann(a, b, c, d) + cd.riemann(a, c, d, b) +
                                                   cd.riemann(a, d, b, c)));
      CHECK(bianchi < 1e-8);
      Tensor4<4> sum = cd.weyl_plus;
      for (std::size_t i = 0; i < sum.data.size(); ++i) sum.data[i] += cd.weyl_minus.data[i];
      CHECK(diff4(sum, cd.weyl) < 1e-8);
      Tensor4<4> hm = hodge_right(cd.weyl_minus), hp = hodge_right(cd.weyl_plus);
      for (auto& v : hm.data) v = -v;
      CHECK(diff4(hm, cd.weyl_minus) < 1e-8);
      CHECK(diff4(hp, cd.weyl_plus) < 1e-8);
    }
  }
}

TEST_CASE("Fubini-Study orientations") {
  auto asd = fubini_study_reversed();
  auto wrong = fubini_study(false);
  Vec4d x(0.2, -0.1, 0.3, 0.05);
  auto cs = curvature_spinors(asd, x);
  CHECK(cs.psi.max_abs() > 0.1);
  CHECK(cs.psi_tilde.max_abs() < 1e-8);
  CHECK(cs.phi.max_abs() < 1e-8);
  CHECK(cs.lambda > 0.0);
  // regression value: Λ = 1/2 for the potential log(1 + |z|²)
  CHECK(cs.lambda == doctest::Approx(0.5).epsilon(1e-10));
  auto cw = curvature_spinors(wrong, x);
  CHECK(cw.psi_tilde.max_abs() > 0.1);
  CHECK(cw.psi.max_abs() < 1e-8);
}

TEST_CASE("asd_einstein_check") {
  require_pass(asd_einstein_check(hyperbolic_half_space(), sample_points(hyperbolic_half_space(), 10, 1), 1e-8));
  require_pass(asd_einstein_check(round_s4(), sample_points(round_s4(), 10, 1), 1e-8));
  require_pass(asd_einstein_check(fubini_study_reversed(), sample_points(fubini_study_reversed(), 10, 1), 1e-8));
  require_pass(asd_einstein_check(hyperbolic_half_space(), sample_points(hyperbolic_half_space(), 4, 1), 1e-5,
                                  DerivMode::FiniteDifference));
  auto bad = asd_einstein_check(perturbed_non_einstein(), sample_points(perturbed_non_einstein(), 5, 1), 1e-8);
  CHECK_FALSE(bad.pass());
  CHECK_FALSE(bad.find("phi-zero")->pass);
  auto wrong = asd_einstein_check(fubini_study(false), sample_points(fubini_study(false), 5, 1), 1e-8);
  CHECK_FALSE(wrong.find("psi-tilde-zero")->pass);
}

TEST_CASE("conformal rescaling") {
  auto hyp = hyperbolic_half_space();
  auto same = conformal_rescale(hyp, ScalarField<4>([](const auto& x) {
                                  using S = std::decay_t<decltype(x(0))>;
                                  return S(0.0);
                                }));
  Vec4<cplx> x(1.3, 0.2, -0.4, 0.1);
  CHECK(max_abs(same.g(x) - hyp.g(x)) == 0.0);
  auto flat = conformal_rescale(hyp, log_x0());
  for (const auto& p : sample_points(hyp, 5, 3)) {
    Vec4<cplx> pc = p.cast<cplx>();
    CHECK(max_abs(flat.g(pc) - Mat4<cplx>::Identity()) < 1e-14);
  }
  // Weyl tensor: W(e^{2Υ}g) in θ̂ = e^Υθ equals e^{−2Υ}W(g)
  auto fs = fubini_study_reversed();
  ScalarField<4> ups([](const auto& y) {
    using S = std::decay_t<decltype(y(0))>;
    return S(y(0) * 0.3 + y(1) * y(2) * 0.2);
  });
  auto hat = conformal_rescale(fs, ups);
  for (const auto& p : sample_points(fs, 3, 4)) {
    auto w0 = curvature(fs, p).weyl;
    auto w1 = curvature(hat, p).weyl;
    const double f = std::exp(-2.0 * ups(Vec4<cplx>(p.cast<cplx>())).real());
    for (auto& v : w0.data) v *= f;
    CHECK(diff4(w0, w1) < 1e-8);
  }
}

TEST_CASE("special defining function") {
  auto c = compactified_hyperbolic();
  auto pts = sample_points(c->compact, 8, 6);
  require_pass(special_defining_check(c->compact, c->r, c->lambda, pts, 1e-10));
  ScalarField<4> r2([](const auto& x) {
    using S = std::decay_t<decltype(x(0))>;
    return S(x(0) * 2.0);
  });
  auto bad = special_defining_check(c->compact, r2, c->lambda, pts, 1e-10);
  CHECK_FALSE(bad.pass());
}

TEST_CASE("catalog and inline charts") {
  for (const auto& n : catalog_names()) CHECK_NOTHROW(geometry_by_name(n));
  CHECK_THROWS_AS(geometry_by_name("no-such-space"), Error);
  auto g = geometry_by_name("chart:g00=1/x0^2;g11=1/x0^2;g22=1/x0^2;g33=1/x0^2;lo=0.5,-1,-1,-1;hi=2,1,1,1");
  Vec4<cplx> x(1.5, 0.1, 0.2, 0.3);
  CHECK(max_abs(g.g(x) - hyperbolic_half_space().g(x)) < 1e-15);
  require_pass(asd_einstein_check(g, sample_points(g, 4, 2), 1e-8));
  CHECK_THROWS_AS(geometry_by_name("chart:g00=1;g11=1;g22=1"), Error);
  CHECK_THROWS_AS(geometry_by_name("chart:g00=1+;g11=1;g22=1;g33=1"), Error);
}

TEST_CASE("sampling is deterministic and respects margins") {
  auto g = hyperbolic_half_space();
  auto a = sample_points(g, 20, 77), b = sample_points(g, 20, 77);
  REQUIRE(a.size() == 20);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK((a[i] - b[i]).norm() == 0.0);
    for (int k = 0; k < 4; ++k) {
      const double lo = g.lo(k) + 0.1 * (g.hi(k) - g.lo(k)), hi = g.hi(k) - 0.1 * (g.hi(k) - g.lo(k));
      CHECK(a[i](k) >= lo);
      CHECK(a[i](k) <= hi);
    }
  }
  auto c = compactified_hyperbolic();
  for (const auto& p : sample_points(c->compact, 30, 5, &c->r)) CHECK(std::abs(p(0)) >= 0.05);
}
