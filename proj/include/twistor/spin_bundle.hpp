// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "twistor/geometry.hpp"

namespace twistor {

/// Orthonormal frame, Levi-Civita and spin connection data at a point, for any
/// scalar of the dual family (the metric is evaluated one dual level deeper).
template <class S>
struct FrameData {
  Vec4<S> x;
  Mat4<S> g, ginv, theta, frame;
  std::array<Mat4<S>, 4> dg;           // ∂_μ g
  std::array<Mat4<S>, 4> dtheta;       // ∂_μ θ
  std::array<Mat4<S>, 4> christoffel;  // christoffel[μ](ν, λ) = Γ^μ_{νλ}
  std::array<Mat4<S>, 4> omega;        // omega[c](a, b) = ω_c^a_b, ∇_{e_c}e_b = ω_c^a_b e_a
  std::array<Mat2<S>, 4> gp;           // gp[c](A', B') = Γ_{cA'}^{B'}
  std::array<Mat2<S>, 4> gu;           // gu[c](A, B)   = Γ_{cA}^{B}
};

/// Spin connection from the frame connection: the map Y ↦ γ(ω_c γ⁻¹(Y)) on
/// 2×2 matrices splits as Y ↦ MY + YN with M, N trace-free; Γ_{cB}^A = M(A,B)
/// and Γ_{cB'}^{A'} = N(B',A').
template <class S>
void spin_from_frame_connection(const Mat4<S>& omega_c, Mat2<S>& gp, Mat2<S>& gu) {
  Mat2<S> P = Mat2<S>::Zero(), Q = Mat2<S>::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Mat2<S> Eij = Mat2<S>::Zero();
      Eij(i, j) = S(1.0);
      Mat2<S> Eji = Eij.transpose();
      Mat2<S> T = to_spinor(Vec4<S>(omega_c * from_spinor(Eij)));
      P += T * Eji;
      Q += Eji * T;
    }
  P *= 0.5;
  Q *= 0.5;
  gp = Q;
  gu = P.transpose();
}

template <class S>
FrameData<S> frame_data(const Geometry4& geom, const Vec4<S>& x) {
  using T = Dual<S>;
  FrameData<S> fd;
  fd.x = x;
  for (int mu = 0; mu < 4; ++mu) {
    Vec4<T> xs = seed(x, mu);
    Mat4<T> gm = geom.g(xs);
    Mat4<T> th = orthonormal_coframe<T, 4>(gm, geom.orientation);
    if (mu == 0) {
      fd.g = values(gm);
      fd.theta = values(th);
    }
    fd.dg[mu] = derivs(gm);
    fd.dtheta[mu] = derivs(th);
  }
  fd.ginv = inverse(fd.g);
  fd.frame = inverse(fd.theta);
  fd.christoffel = christoffel_from<S, 4>(fd.ginv, fd.dg);
  std::array<Mat4<S>, 4> dE;
  for (int mu = 0; mu < 4; ++mu) dE[mu] = -(fd.frame * fd.dtheta[mu] * fd.frame);
  // ∇_ν e_b^μ = ∂_ν e_b^μ + Γ^μ_{νλ} e_b^λ
  std::array<Mat4<S>, 4> nablaE;  // nablaE[ν](μ, b)
  for (int nu = 0; nu < 4; ++nu) {
    nablaE[nu] = dE[nu];
    for (int mu = 0; mu < 4; ++mu) nablaE[nu].row(mu) += fd.christoffel[mu].row(nu) * fd.frame;
  }
  for (int c = 0; c < 4; ++c) {
    Mat4<S> acc = Mat4<S>::Zero();
    for (int nu = 0; nu < 4; ++nu) acc += nablaE[nu] * fd.frame(nu, c);
    fd.omega[c] = fd.theta * acc;
    spin_from_frame_connection(fd.omega[c], fd.gp[c], fd.gu[c]);
  }
  return fd;
}

struct SpinConnectionCoeffs {
  std::array<Mat2<cplx>, 4> primed;    // Γ_{cA'}^{B'} at (c)(A', B')
  std::array<Mat2<cplx>, 4> unprimed;  // Γ_{cA}^{B}
  double residual = 0.0;               // least-squares residual when solved numerically
};

SpinConnectionCoeffs spin_connection(const Geometry4& geom, const Vec4d& x);

/// Least-squares solve of {∇γ = 0, Γ lowered-symmetric}; cross-check path.
SpinConnectionCoeffs spin_connection_lsq(const Geometry4& geom, const Vec4d& x);

/// max over c, Y of |γ(ω_c γ⁻¹Y) − (Γ_c Y + Y Γ'_c)|: the residual of ∇γ = 0.
double nabla_gamma_residual(const FrameData<cplx>& fd, const SpinConnectionCoeffs& sc);
/// max |Γ_{cA'B'} − Γ_{cB'A'}| and the unprimed analog: the residual of ∇ε = 0.
double nabla_epsilon_residual(const SpinConnectionCoeffs& sc);

/// Ω_ab as a matrix acting on π: (Ω_ab π)^{C'} = Ω_ab^{C'}_{D'} π^{D'}.
using SprimeCurvature = std::array<std::array<Mat2<cplx>, 4>, 4>;

/// Curvature of ∇ on S′ from dΓ + Γ∧Γ in the orthonormal frame.
SprimeCurvature sprime_curvature_raw(const Geometry4& geom, const Vec4d& x);
/// As above after verifying the ASD-Einstein precondition at x (throws NotASDEinstein).
SprimeCurvature sprime_curvature(const Geometry4& geom, const Vec4d& x, double tol = 1e-6);

/// Frame components of 2Λ ε_AB δ_(A'^C' π_B') as [a][b] → C' vector.
std::array<std::array<Vec2<cplx>, 4>, 4> sprime_curvature_model(double lambda, const Vec2<cplx>& pi);
/// Frame components of −2Λ ε_AB σ_(A'^C̄' (σπ)_B').
std::array<std::array<Vec2<cplx>, 4>, 4> sprime_conjugate_model(double lambda, const Vec2<cplx>& pi);

/// Coefficients for ĝ = e^{2Υ}g in the rescaled frame θ̂ = e^Υθ and spin frame:
/// Γ̂_{cC'}^{B'} = e^{−Υ}(Γ_{cC'}^{B'} + γ_c^{AB'}Υ_{AC'} − ½Υ_c δ_{C'}^{B'}), unprimed alike.
/// `dups` holds the frame components Υ_c = e_c(Υ) in the original frame.
SpinConnectionCoeffs conformal_spin_shift(const SpinConnectionCoeffs& sc, const Vec4<cplx>& dups, double ups);

/// Rows θ^a, δπ^{A'}, conj(δπ^{A'}) over the real coordinates (x, Re π⁰', Im π⁰', Re π¹', Im π¹').
template <class S>
Mat8<S> delta_pi_coframe(const FrameData<S>& fd, const Vec2<S>& pi) {
  Mat8<S> m = Mat8<S>::Zero();
  m.template block<4, 4>(0, 0) = fd.theta;
  const cplx i(0.0, 1.0);
  for (int A = 0; A < 2; ++A) {
    Vec8<S> row = Vec8<S>::Zero();
    row(4 + 2 * A) = S(1.0);
    row(5 + 2 * A) = S(i);
    for (int c = 0; c < 4; ++c) {
      S coef(0.0);
      for (int B = 0; B < 2; ++B) coef += fd.gp[c](B, A) * pi(B);
      row.template head<4>() += coef * fd.theta.row(c).transpose();
    }
    m.row(4 + A) = row.transpose();
    m.row(6 + A) = conj(Vec8<S>(row)).transpose();
  }
  return m;
}

/// ∇γ = 0, ∇ε = 0, least-squares agreement, S′ curvature (on ASD-Einstein points), conformal shift,
/// and the δπ coframe at seeded points.
VerificationReport spin_connection_check(const Geometry4& geom, const std::vector<Vec4d>& pts,
                                         const std::vector<Vec2<cplx>>& spinors, double tol = 1e-10,
                                         double tol_curvature = 1e-6);

}  // namespace twistor
