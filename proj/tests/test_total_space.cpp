// SPDX-License-Identifier: Apache-2.0
#include "test_util.hpp"
#include "twistor/total_space.hpp"

using namespace twistor;
using twistor::testing::check;
using twistor::testing::require_pass;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::IoFailure;
}

const char* const kBases[] = {"hyperbolic", "round_s4", "fubini_study_reversed"};

}  // namespace

TEST_CASE("preconditions of the total space") {
  CHECK(kind_of([] { TotalSpace::over(perturbed_non_einstein()); }) == ErrorKind::NotASDEinstein);
  CHECK(kind_of([] { TotalSpace::over(fubini_study(false)); }) == ErrorKind::NotASDEinstein);
  CHECK(kind_of([] { TotalSpace::over(flat_r4()); }) == ErrorKind::ZeroLambda);
  CHECK(TotalSpace::over(hyperbolic_half_space()).lambda() == doctest::Approx(-0.5));
  CHECK(TotalSpace::over(round_s4()).lambda() == doctest::Approx(0.5));
  TwistorPoint z;
  z.x = Vec4d(1.0, 0.0, 0.0, 0.0);
  z.pi = Vec2<cplx>::Zero();
  auto ts = TotalSpace::over(hyperbolic_half_space());
  CHECK(kind_of([&] { ts.structure_I(z.coords()); }) == ErrorKind::ZeroSpinor);
}

TEST_CASE("structures at a point") {
  for (const char* name : kBases) {
    auto ts = TotalSpace::over(geometry_by_name(name));
    for (const auto& p : sample_twistor_points(ts.base(), 4, 21)) {
      Vec8<cplx> y = p.coords();
      Mat8<cplx> I = ts.structure_I(y), J = ts.structure_J(y), K = ts.structure_K(y);
      const Mat8<cplx> id = Mat8<cplx>::Identity();
      CHECK(max_abs(I * I + id) < 1e-12);
      CHECK(max_abs(J * J + id) < 1e-12);
      CHECK(max_abs(I * J + J * I) < 1e-12);
      CHECK(max_abs(K * K + id) < 1e-12);
      Mat8<cplx> g = ts.metric(y);
      CHECK(max_abs(g - g.transpose()) < 1e-12);
      CHECK(max_abs(I.transpose() * g * I - g) < 1e-12);
      CHECK(max_abs(J.transpose() * g * J - g) < 1e-12);
      CHECK(max_abs(ts.metric_from_forms(y) - g) < 1e-10);
      CHECK(std::abs(ts.potential(y) - norm_squared(p.pi)) < 1e-14);
      // homogeneity of the potential under π ↦ cπ
      TwistorPoint q = p;
      q.pi *= cplx(0.7, -1.2);
      CHECK(std::abs(ts.potential(q.coords()) - std::norm(cplx(0.7, -1.2)) * ts.potential(y)) < 1e-12);
      auto sig = signature(real_part(g));
      if (ts.lambda() < 0) CHECK(sig == std::pair{4, 4});
      else CHECK(sig == std::pair{8, 0});
    }
  }
}

TEST_CASE("integrability, potential, hyperkähler suites") {
  for (const char* name : kBases) {
    auto ts = TotalSpace::over(geometry_by_name(name));
    auto pts = sample_twistor_points(ts.base(), 6, 4);
    require_pass(integrability_check(ts, pts));
    require_pass(kahler_potential_check(ts, pts));
    auto hk = hyperkahler_check(ts, pts);
    require_pass(hk);
    check(hk, "ricci-flat");
    check(hk, "nabla-J");
  }
}

TEST_CASE("curvature formula") {
  for (const char* name : kBases) {
    auto ts = TotalSpace::over(geometry_by_name(name));
    auto rep = curvature_formula_check(ts, sample_twistor_points(ts.base(), 3, 8), 1e-4, 1e-3, 1);
    require_pass(rep);
    check(rep, "horizontal-formula");
    check(rep, "nonhorizontal-zero");
  }
}

TEST_CASE("nonhorizontal curvature of the hyperbolic total space") {
  auto ts = TotalSpace::over(hyperbolic_half_space());
  TwistorPoint p;
  p.x = Vec4d(1.2, 0.1, -0.2, 0.3);
  p.pi = Vec2<cplx>(cplx(0.6, 0.1), cplx(-0.3, 0.8));
  auto R = total_riemann_adapted(ts, p);
  double vert = 0.0;
  for (int a = 4; a < 8; ++a)
    for (int b = 4; b < 8; ++b)
      for (int c = 0; c < 8; ++c)
        for (int d = 0; d < 8; ++d) vert = std::max(vert, std::abs(R(a, b, c, d)));
  CHECK(vert < 1e-6);
}

TEST_CASE("ambient family and dilation") {
  auto c = compactified_hyperbolic();
  auto pts = sample_twistor_points(c->compact, 6, 13, &c->r);
  for (const auto& p : pts) CHECK(std::abs(p.x(0)) >= 0.05);
  require_pass(ambient_family_check(*c, pts));
  ScalarField<4> ups([](const auto& x) {
    using std::sin;
    using S = std::decay_t<decltype(x(0))>;
    return S(sin(x(0)) * 0.2 + x(2) * x(3) * 0.3);
  });
  require_pass(dilation_pushforward_check(*c, ups, pts));
  auto amb = TotalSpace::ambient(*c);
  CHECK(amb.is_ambient());
  TwistorPoint p = pts.front();
  auto av = ambient_family(amb, p);
  CHECK(std::abs(av.potential - norm_squared(p.pi) * p.x(0)) < 1e-12);
  CHECK(max_abs(av.structure_I * av.structure_I + Mat8d::Identity()) < 1e-12);
}
