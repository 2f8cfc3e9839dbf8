// SPDX-License-Identifier: Apache-2.0
#include "twistor/geometry.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

using namespace twistor;

namespace {
const cplx I(0.0, 1.0);
double dist(const Vec2<cplx>& a, const Vec2<cplx>& b) { return (a - b).norm(); }
}  // namespace

TEST_CASE("sigma map") {
  CHECK(dist(sigma_apply(Vec2<cplx>(1.0, 0.0)), Vec2<cplx>(0.0, -1.0)) == 0.0);
  CHECK(dist(sigma_apply(Vec2<cplx>(I, 0.0)), Vec2<cplx>(0.0, I)) == 0.0);
  Vec2<cplx> p(cplx(2.0, 1.0), 3.0);
  CHECK(dist(sigma_apply(sigma_apply(p)), -p) < 1e-15);
  for (const auto& a : sample_spinors(10, 3)) {
    for (const auto& b : sample_spinors(3, 4))
      CHECK(std::abs(eps_pair(sigma_apply(a), sigma_apply(b)) - std::conj(eps_pair(a, b))) < 1e-14);
    CHECK(eps_pair(sigma_apply(a), a).real() > 0.0);
    CHECK(std::abs(eps_pair(sigma_apply(a), a) - norm_squared(a)) < 1e-14);
  }
}

TEST_CASE("norm squared") {
  CHECK(norm_squared(Vec2<cplx>(1.0, 0.0)).real() == 1.0);
  CHECK(norm_squared(Vec2<cplx>(0.0, 0.0)).real() == 0.0);
  CHECK(std::abs(norm_squared(Vec2<cplx>(3.0, 4.0 * I)) - 25.0) < 1e-15);
}

TEST_CASE("epsilon identities") {
  Mat2<cplx> e = epsilon();
  CHECK(max_abs(e + e.transpose()) == 0.0);
  // ε_{AB} ε^{CB} = δ_A^C
  CHECK(max_abs(Mat2<cplx>(e * e.transpose()) - Mat2<cplx>::Identity()) == 0.0);
  for (const auto& xi : sample_spinors(5, 8)) {
    CHECK(dist(raise(lower(xi)), xi) == 0.0);
    CHECK(dist(lower(raise(xi)), xi) == 0.0);
  }
  CHECK(max_abs(sigma_hermitian() - Mat2<cplx>::Identity()) == 0.0);
}

TEST_CASE("2(σπ)_[A'π_B'] = ‖π‖² ε") {
  for (const auto& pi : sample_spinors(8, 12)) {
    Vec2<cplx> a = lower(sigma_apply(pi)), b = lower(pi);
    Mat2<cplx> m = a * b.transpose() - b * a.transpose();
    CHECK(max_abs(m - norm_squared(pi) * epsilon()) < 1e-14);
  }
}

TEST_CASE("soldering: 2 det A(v) = |v|²") {
  for (const auto& x : sample_points(flat_r4(), 10, 17)) {
    Mat2<cplx> A = to_spinor(Vec4<cplx>(x.cast<cplx>()));
    CHECK(std::abs(2.0 * A.determinant() - x.squaredNorm()) < 1e-14);
    CHECK((from_spinor(A) - x.cast<cplx>()).norm() < 1e-15);
  }
}

TEST_CASE("alpha planes") {
  SUBCASE("pi = (1,0)") {
    Vec2<cplx> pi(1.0, 0.0);
    auto B = alpha_plane(pi);
    for (int k = 0; k < 2; ++k) {
      Mat2<cplx> y = to_spinor(Vec4<cplx>(B.col(k)));
      CHECK(std::abs(y(0, 1)) + std::abs(y(1, 1)) < 1e-15);
    }
    Eigen::Matrix4cd both;
    both << B, alpha_plane(sigma_apply(pi));
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(both);
    CHECK(svd.singularValues()(3) > 0.1);
  }
  SUBCASE("totally null and projective") {
    for (const auto& pi : sample_spinors(10, 21)) {
      auto B = alpha_plane(pi);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(std::abs(frame_dot(Vec4<cplx>(B.col(i)), Vec4<cplx>(B.col(j)))) < 1e-12);
      Eigen::Matrix<cplx, 4, 4> st;
      st << B, alpha_plane(Vec2<cplx>(pi * cplx(0.3, -2.0)));
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd{Eigen::MatrixXcd(st)};
      CHECK(svd.singularValues()(2) < 1e-12);
    }
  }
  CHECK_THROWS_AS(alpha_plane(Vec2<cplx>(0.0, 0.0)), Error);
}

TEST_CASE("endomorphisms I and J") {
  Vec2<cplx> e0(1.0, 0.0);
  CHECK(dist(endo_apply(endo_I(e0), e0), Vec2<cplx>(-I, 0.0)) < 1e-15);
  // J π = −σπ; σ(1,0) = (0,−1)
  Eigen::Vector4cd jr = endo_J_real(e0) * Eigen::Vector4cd(1.0, 0.0, 0.0, 0.0);
  CHECK((jr - Eigen::Vector4cd(0.0, 0.0, 1.0, 0.0)).norm() < 1e-15);

  Vec2<cplx> p11(1.0, 1.0);
  Mat2<cplx> Ip = endo_I(p11);
  CHECK(dist(endo_apply(Ip, p11), -I * p11) < 1e-14);
  CHECK(dist(endo_apply(Ip, sigma_apply(p11)), I * sigma_apply(p11)) < 1e-14);
  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(Eigen::Matrix2cd(Ip.transpose()));
  std::vector<double> ev{es.eigenvalues()(0).imag(), es.eigenvalues()(1).imag()};
  std::sort(ev.begin(), ev.end());
  CHECK(ev[0] == doctest::Approx(-1.0));
  CHECK(ev[1] == doctest::Approx(1.0));

  const Mat4<cplx> sig = sigma_real();
  for (const auto& pi : sample_spinors(10, 33)) {
    Mat2<cplx> Im = endo_I(pi);
    CHECK(max_abs(Mat2<cplx>(Im * Im) + Mat2<cplx>::Identity()) < 1e-12);
    Mat4<cplx> Ir = endo_real(Im), Jr = endo_J_real(pi);
    CHECK(max_abs(Mat4<cplx>(Jr * Jr) + Mat4<cplx>::Identity()) < 1e-12);
    CHECK(max_abs(Mat4<cplx>(Ir * Jr + Jr * Ir)) < 1e-12);
    CHECK(max_abs(Mat4<cplx>(sig * sig) + Mat4<cplx>::Identity()) == 0.0);
  }
  CHECK_THROWS_AS(endo_I(Vec2<cplx>(0.0, 0.0)), Error);
  CHECK_THROWS_AS(endo_J(Vec2<cplx>(0.0, 0.0)), Error);
}
