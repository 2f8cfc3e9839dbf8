// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "twistor/total_space.hpp"

namespace twistor {

/// Coordinates (W⁰, W¹, W², W³) on C⁴; real slots (Re W⁰, Im W⁰, …, Re W³, Im W³).
using WPoint = Vec4<cplx>;

/// F̃(x, π) = (x^{AA'}π_{A'}, π_{A'}).
template <class S>
Vec4<S> flat_map_F(const Vec4<S>& x, const Vec2<S>& pi) {
  Vec2<S> pl = lower(pi);
  Vec2<S> top = to_spinor(x) * pl;
  return Vec4<S>(top(0), top(1), pl(0), pl(1));
}

template <class S>
Vec8<S> w_to_real(const Vec4<S>& w) {
  Vec8<S> r;
  for (int k = 0; k < 4; ++k) {
    r(2 * k) = re(w(k));
    r(2 * k + 1) = im(w(k));
  }
  return r;
}

/// F̃ in real coordinates on both sides.
template <class S>
Vec8<S> flat_map_real(const Vec8<S>& y) {
  const cplx i(0.0, 1.0);
  Vec4<S> x = y.template head<4>();
  Vec2<S> pi(y(4) + y(5) * i, y(6) + y(7) * i);
  return w_to_real(flat_map_F(x, pi));
}

/// Throws ZeroSpinor if π = 0.
WPoint flat_map(const Vec4d& x, const Vec2<cplx>& pi);

/// Inverse of F̃ for (W², W³) ≠ 0 by a real 4×4 solve for x; throws ZeroSpinor otherwise.
TwistorPoint flat_map_inverse(const WPoint& w);

/// 𝕁_r on C⁴∖C² as a real 8×8 matrix: (w⁰, w¹, w², w³) ↦ (w̄¹, −w̄⁰, w̄³, −w̄²).
Eigen::Matrix<double, 8, 8> flat_J();

/// Multiplication by i on each W component.
Eigen::Matrix<double, 8, 8> standard_J();

/// √2(dW⁰·dW̄² + dW²·dW̄⁰ + dW¹·dW̄³ + dW³·dW̄¹) in real coordinates.
Eigen::Matrix<double, 8, 8> flat_ambient_metric();

/// Kähler form of the flat metric for the standard structure: ω(V, W) = g(J V, W).
Eigen::Matrix<double, 8, 8> flat_kahler_form();

/// r̃ = (1/√2)(W⁰W̄² + W²W̄⁰ + W¹W̄³ + W³W̄¹) on real coordinates.
template <class S>
S flat_potential_real(const Vec8<S>& r) {
  // 2Re(W⁰W̄² + W¹W̄³) = 2(a₀a₂ + b₀b₂ + a₁a₃ + b₁b₃)
  return (r(0) * r(4) + r(1) * r(5) + r(2) * r(6) + r(3) * r(7)) * std::sqrt(2.0);
}

double flat_potential(const WPoint& w);

/// (1/√2)(W⁰dW³ − W³dW⁰ + W²dW¹ − W¹dW²) as components on real coordinates.
Vec8<cplx> flat_tau(const WPoint& w);

/// Pullback checks of the flat closed forms against the ambient pipeline on a compactification
/// whose compact metric is flat with r = x⁰.
VerificationReport flat_oracle_check(const Compactification& c, const std::vector<TwistorPoint>& pts,
                                     double tol_metric = 1e-6, double tol_structure = 1e-8);

}  // namespace twistor
