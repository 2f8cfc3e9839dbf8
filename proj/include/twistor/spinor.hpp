// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "twistor/types.hpp"

#include <array>

namespace twistor {

// Spinors carry upper-index components; matrices indexed [row][col] follow
// the index order written in their names.

/// ε_{AB} = ε^{AB} with ε_{01} = 1.
template <class S = cplx>
Mat2<S> epsilon() {
  Mat2<S> e;
  e << S(0.0), S(1.0), S(-1.0), S(0.0);
  return e;
}

/// ξ_A = ξ^B ε_{BA}.
template <class S>
Vec2<S> lower(const Vec2<S>& xi) {
  return Vec2<S>(-xi(1), xi(0));
}

/// ξ^A = ε^{AB} ξ_B.
template <class S>
Vec2<S> raise(const Vec2<S>& xi) {
  return Vec2<S>(xi(1), -xi(0));
}

/// σ(a, b) = (b̄, −ā).
template <class S>
Vec2<S> sigma_apply(const Vec2<S>& pi) {
  return Vec2<S>(conj(pi(1)), -conj(pi(0)));
}

/// ε(ξ, η) = ε_{AB} ξ^A η^B.
template <class S>
S eps_pair(const Vec2<S>& xi, const Vec2<S>& eta) {
  return xi(0) * eta(1) - xi(1) * eta(0);
}

/// ‖π‖² = (σπ)_{A'} π^{A'}.
template <class S>
S norm_squared(const Vec2<S>& pi) {
  return pi(0) * conj(pi(0)) + pi(1) * conj(pi(1));
}

/// σ_{A'B̄'} as the matrix of the hermitian form h(π, η) = σ_{A'B̄'}π^{A'}η̄^{B'}.
template <class S = cplx>
Mat2<S> sigma_hermitian() {
  Mat2<S> s;
  s << S(1.0), S(0.0), S(0.0), S(1.0);
  return s;
}

/// σ acting on (Re π⁰', Im π⁰', Re π¹', Im π¹').
template <class S = cplx>
Mat4<S> sigma_real() {
  Mat4<S> m = Mat4<S>::Zero();
  m(0, 2) = S(1.0);
  m(1, 3) = S(-1.0);
  m(2, 0) = S(-1.0);
  m(3, 1) = S(1.0);
  return m;
}

/// γ_a^{AA'}: v^{AA'} = Σ_a v^a γ_a^{AA'}, read off v ↦ A(v).
template <class S = cplx>
const std::array<Mat2<S>, 4>& soldering() {
  static const std::array<Mat2<S>, 4> g = [] {
    const double h = 1.0 / std::sqrt(2.0);
    const cplx i(0.0, 1.0);
    std::array<Mat2<S>, 4> m;
    m[0] << S(h), S(0.0), S(0.0), S(h);
    m[1] << S(0.0), S(h), S(-h), S(0.0);
    m[2] << S(0.0), S(i * h), S(i * h), S(0.0);
    m[3] << S(i * h), S(0.0), S(0.0), S(-i * h);
    return m;
  }();
  return g;
}

/// γ^a_{AA'}: v^a = Σ γ^a_{AA'} v^{AA'}; also φ_{AA'} = Σ_a γ^a_{AA'} φ_a.
template <class S = cplx>
const std::array<Mat2<S>, 4>& soldering_inverse() {
  static const std::array<Mat2<S>, 4> g = [] {
    const double h = 1.0 / std::sqrt(2.0);
    const cplx i(0.0, 1.0);
    std::array<Mat2<S>, 4> m;
    m[0] << S(h), S(0.0), S(0.0), S(h);
    m[1] << S(0.0), S(h), S(-h), S(0.0);
    m[2] << S(0.0), S(-i * h), S(-i * h), S(0.0);
    m[3] << S(-i * h), S(0.0), S(0.0), S(i * h);
    return m;
  }();
  return g;
}

/// v^a ↦ v^{AA'}.
template <class S>
Mat2<S> to_spinor(const Vec4<S>& v) {
  const auto& g = soldering<S>();
  return g[0] * v(0) + g[1] * v(1) + g[2] * v(2) + g[3] * v(3);
}

/// v^{AA'} ↦ v^a.
template <class S>
Vec4<S> from_spinor(const Mat2<S>& y) {
  const auto& gi = soldering_inverse<S>();
  Vec4<S> v;
  for (int a = 0; a < 4; ++a) v(a) = gi[a].cwiseProduct(y).sum();
  return v;
}

/// φ_a ↦ φ_{AA'}.
template <class S>
Mat2<S> covector_to_spinor(const Vec4<S>& phi) {
  const auto& gi = soldering_inverse<S>();
  return gi[0] * phi(0) + gi[1] * phi(1) + gi[2] * phi(2) + gi[3] * phi(3);
}

/// φ_{AA'} ↦ φ_a.
template <class S>
Vec4<S> covector_from_spinor(const Mat2<S>& phi) {
  const auto& g = soldering<S>();
  Vec4<S> v;
  for (int a = 0; a < 4; ++a) v(a) = g[a].cwiseProduct(phi).sum();
  return v;
}

/// Frame components X_{ab} of a covariant 2-tensor given by X_{ab} = u_{aA}ε^{?}…
/// Specifically X_{ab} = ε_{AB} α_{A'} β_{B'} with primed covectors α, β.
template <class S>
Mat4<S> eps_alpha_beta(const Vec2<S>& alpha, const Vec2<S>& beta) {
  const auto& g = soldering<S>();
  std::array<Vec2<S>, 4> u, w;
  for (int a = 0; a < 4; ++a) {
    u[a] = g[a] * alpha;
    w[a] = g[a] * beta;
  }
  Mat4<S> x;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) x(a, b) = u[a](0) * w[b](1) - u[a](1) * w[b](0);
  return x;
}

/// Endomorphisms of S′ stored as M(B', A') = M_{B'}{}^{A'}; (Mη)^{A'} = η^{B'}M_{B'}{}^{A'}.
template <class S>
Vec2<S> endo_apply(const Mat2<S>& m, const Vec2<S>& eta) {
  return m.transpose() * eta;
}

inline void require_nonzero(double n2) {
  if (!(n2 > 0.0)) throw Error(ErrorKind::ZeroSpinor, "spinor has zero norm");
}

/// I_{B'}{}^{A'} = (−i/‖π‖²)(π_{B'}(σπ)^{A'} + (σπ)_{B'}π^{A'}).
template <class S>
Mat2<S> endo_I(const Vec2<S>& pi) {
  S n2 = norm_squared(pi);
  require_nonzero(real0(n2));
  Vec2<S> sp = sigma_apply(pi);
  Vec2<S> pl = lower(pi), spl = lower(sp);
  Mat2<S> m = pl * sp.transpose() + spl * pi.transpose();
  return m * (cplx(0.0, -1.0) / n2);
}

/// J_{B'}{}^{A'} = (−1/‖π‖²)(π_{B'}π^{A'} + (σπ)_{B'}(σπ)^{A'}).
template <class S>
Mat2<S> endo_J(const Vec2<S>& pi) {
  S n2 = norm_squared(pi);
  require_nonzero(real0(n2));
  Vec2<S> sp = sigma_apply(pi);
  Vec2<S> pl = lower(pi), spl = lower(sp);
  Mat2<S> m = pl * pi.transpose() + spl * sp.transpose();
  return m * (S(-1.0) / n2);
}

/// Complex-linear endomorphism of S′ as a real 4×4 on (Re η⁰', Im η⁰', Re η¹', Im η¹').
template <class S>
Mat4<S> endo_real(const Mat2<S>& m) {
  Mat2<S> t = m.transpose();
  Mat4<S> r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      S a = re(t(i, j)), b = im(t(i, j));
      r(2 * i, 2 * j) = a;
      r(2 * i, 2 * j + 1) = -b;
      r(2 * i + 1, 2 * j) = b;
      r(2 * i + 1, 2 * j + 1) = a;
    }
  return r;
}

template <class S>
Mat4<S> endo_J_real(const Vec2<S>& pi) {
  return endo_real(endo_J(pi));
}

/// Action on frame components of TX: v^{AA'} ↦ v^{AB'}M_{B'}{}^{A'}.
template <class S>
Mat4<S> frame_action(const Mat2<S>& m) {
  Mat4<S> r;
  for (int b = 0; b < 4; ++b) {
    Vec4<S> e = Vec4<S>::Zero();
    e(b) = S(1.0);
    r.col(b) = from_spinor(Mat2<S>(to_spinor(e) * m));
  }
  return r;
}

/// Basis of the α-plane 𝒜_[π]: columns γ(ξ_k ⊗ π) for ξ₁ = (1,0), ξ₂ = (0,1).
template <class S>
Mat<S, 4, 2> alpha_plane(const Vec2<S>& pi) {
  require_nonzero(real0(norm_squared(pi)));
  Mat<S, 4, 2> basis;
  for (int k = 0; k < 2; ++k) {
    Vec2<S> xi = Vec2<S>::Zero();
    xi(k) = S(1.0);
    basis.col(k) = from_spinor(Mat2<S>(xi * pi.transpose()));
  }
  return basis;
}

/// Complex bilinear extension of the Euclidean frame metric.
template <class S>
S frame_dot(const Vec4<S>& u, const Vec4<S>& w) {
  return u.cwiseProduct(w).sum();
}

}  // namespace twistor
