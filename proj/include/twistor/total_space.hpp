// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "twistor/spin_bundle.hpp"

#include <optional>

namespace twistor {

using Mat8d = Eigen::Matrix<double, 8, 8>;
using Vec8d = Eigen::Matrix<double, 8, 1>;

/// A point (x, π) of S′∖{0}; real coordinates (x⁰..x³, Re π⁰', Im π⁰', Re π¹', Im π¹').
struct TwistorPoint {
  Vec4d x = Vec4d::Zero();
  Vec2<cplx> pi = Vec2<cplx>(1.0, 0.0);

  Vec8<cplx> coords() const {
    Vec8<cplx> y;
    y << x(0), x(1), x(2), x(3), pi(0).real(), pi(0).imag(), pi(1).real(), pi(1).imag();
    return y;
  }
};

template <class S>
Vec2<S> fiber_spinor(const Vec8<S>& y) {
  const cplx i(0.0, 1.0);
  return Vec2<S>(y(4) + y(5) * i, y(6) + y(7) * i);
}

/// δπ^{A'} as a complex covector, from the Re/Im rows of the adapted cobasis.
template <class S>
Vec8<S> complex_row(const Mat8<S>& binv, int k) {
  const cplx i(0.0, 1.0);
  return Vec8<S>(binv.row(4 + 2 * k).transpose() + binv.row(5 + 2 * k).transpose() * i);
}

/// a ⊕ b as an 8×8 block-diagonal matrix.
template <class S>
Mat8<S> block_diag(const Mat4<S>& a, const Mat4<S>& b) {
  Mat8<S> m = Mat8<S>::Zero();
  m.template block<4, 4>(0, 0) = a;
  m.template block<4, 4>(4, 4) = b;
  return m;
}

template <class S = cplx>
Mat4<S> fiber_complex_structure() {
  Mat4<S> j = Mat4<S>::Zero();
  j(0, 1) = S(-1.0);
  j(1, 0) = S(1.0);
  j(2, 3) = S(-1.0);
  j(3, 2) = S(1.0);
  return j;
}

/// Structures on the total space of S′∖{0} over a charted base.  Without a
/// defining function the Levi-Civita lift of `base` is used and Λ multiplies
/// the horizontal terms.  With a defining function r (ambient mode) the base
/// is the compactified metric ḡ₊ = r²g₊ and τ̃, ω̃, g̃ become τ̃_r, ω̃_r, g̃[r].
class TotalSpace {
 public:
  TotalSpace(Geometry4 base, double lambda) : base_(std::move(base)), lambda_(lambda) {}
  TotalSpace(Geometry4 compact, double lambda, ScalarField<4> r)
      : base_(std::move(compact)), lambda_(lambda), r_(std::move(r)) {}

  /// Checks the ASD-Einstein precondition at the chart center and reads Λ there.
  static TotalSpace over(const Geometry4& base, double tol = 1e-6);
  /// Ambient family for a compactification, with defining function `r` (default: its own).
  static TotalSpace ambient(const Compactification& c);
  static TotalSpace ambient(const Compactification& c, const ScalarField<4>& r, const Geometry4& compact);

  const Geometry4& base() const { return base_; }
  double lambda() const { return lambda_; }
  bool is_ambient() const { return r_.has_value(); }
  const ScalarField<4>& defining_function() const { return *r_; }

  template <class S>
  struct Local {
    FrameData<S> fd;
    Vec2<S> pi;
    Mat8<S> basis;  // columns: horizontal lifts of e_a, then ∂/∂(Re π⁰'), …
    Mat8<S> cobasis;
  };

  template <class S>
  Local<S> local(const Vec8<S>& y) const {
    Local<S> L;
    Vec4<S> x = y.template head<4>();
    L.fd = frame_data<S>(base_, x);
    L.pi = fiber_spinor(y);
    require_nonzero(real0(norm_squared(L.pi)));
    Mat4<S> V;
    for (int a = 0; a < 4; ++a) {
      Vec2<S> v = -(L.fd.gp[a].transpose() * L.pi);
      for (int b = 0; b < 2; ++b) {
        V(2 * b, a) = re(v(b));
        V(2 * b + 1, a) = im(v(b));
      }
    }
    L.basis.setZero();
    L.basis.template block<4, 4>(0, 0) = L.fd.frame;
    L.basis.template block<4, 4>(4, 0) = V;
    L.basis.template block<4, 4>(4, 4).setIdentity();
    L.cobasis.setZero();
    L.cobasis.template block<4, 4>(0, 0) = L.fd.theta;
    L.cobasis.template block<4, 4>(4, 0) = -(V * L.fd.theta);
    L.cobasis.template block<4, 4>(4, 4).setIdentity();
    return L;
  }

  template <class S>
  Mat8<S> structure_I(const Vec8<S>& y) const {
    Local<S> L = local(y);
    Mat8<S> d = block_diag<S>(frame_action(endo_I(L.pi)), fiber_complex_structure<S>());
    return L.basis * d * L.cobasis;
  }

  template <class S>
  Mat8<S> structure_J(const Vec8<S>& y) const {
    Local<S> L = local(y);
    Mat8<S> d = block_diag<S>(frame_action(endo_J(L.pi)), sigma_real<S>());
    return L.basis * d * L.cobasis;
  }

  template <class S>
  Mat8<S> structure_K(const Vec8<S>& y) const {
    return Mat8<S>(structure_I(y) * structure_J(y));
  }

  /// τ̃ = π_{B'}δπ^{B'}, or τ̃_r in ambient mode.
  template <class S>
  Vec8<S> tau(const Vec8<S>& y) const {
    Local<S> L = local(y);
    Vec2<S> pl = lower(L.pi);
    Vec8<S> t = complex_row(L.cobasis, 0) * pl(0) + complex_row(L.cobasis, 1) * pl(1);
    if (!r_) return t;
    Vec4<S> x = y.template head<4>();
    S r = (*r_)(x);
    Vec4<S> dr;
    for (int k = 0; k < 4; ++k) dr(k) = derivs((*r_)(seed(x, k)));
    Mat2<S> rs = covector_to_spinor(Vec4<S>(L.fd.frame.transpose() * dr));  // r_{EC'}
    Vec2<S> k = rs * L.pi;                                                   // r_{EC'}π^{C'}
    const auto& G = soldering<S>();
    Vec8<S> out = t * r;
    for (int e = 0; e < 4; ++e) {
      S c(0.0);
      for (int E = 0; E < 2; ++E)
        for (int Ep = 0; Ep < 2; ++Ep) c -= G[e](E, Ep) * pl(Ep) * k(E);
      out.template head<4>() += c * L.fd.theta.row(e).transpose();
    }
    return out;
  }

  /// ω̃ = ε_{A'B'}δπ^{A'}∧δπ^{B'} + Λε_{AB}π_{A'}π_{B'}θ^a∧θ^b (non-ambient only).
  template <class S>
  Mat8<S> omega_formula(const Vec8<S>& y) const {
    Local<S> L = local(y);
    Vec8<S> d0 = complex_row(L.cobasis, 0), d1 = complex_row(L.cobasis, 1);
    Vec2<S> pl = lower(L.pi);
    Mat4<S> X = eps_alpha_beta(pl, pl);
    Mat<S, 4, 8> th = L.cobasis.template block<4, 8>(0, 0);
    Mat8<S> w = (d0 * d1.transpose() - d1 * d0.transpose()) * 2.0;
    w += Mat8<S>(th.transpose() * (X - X.transpose()) * th) * lambda_;
    return w;
  }

  /// dτ̃ by forward propagation.
  template <class S>
  Mat8<S> omega_d(const Vec8<S>& y) const {
    return exterior_d1<8>([this](const auto& z) { return tau(z); }, y);
  }

  template <class S>
  Mat8<S> omega(const Vec8<S>& y) const {
    return r_ ? omega_d(y) : omega_formula(y);
  }

  /// ω̃_𝕁(V, W) = (−i/2)(ω̃(V, 𝕁W) − ω̃(W, 𝕁V)).
  template <class S>
  Mat8<S> omega_J(const Vec8<S>& y) const {
    Mat8<S> w = omega(y), j = structure_J(y);
    return Mat8<S>((w * j + j.transpose() * w) * cplx(0.0, -0.5));
  }

  /// i σ_{A'B̄'}δπ^{A'}∧δπ̄^{B'} − iΛ ε_{AB}π_{A'}(σπ)_{B'}θ^a∧θ^b, assembled directly.
  template <class S>
  Mat8<S> omega_J_formula(const Vec8<S>& y) const {
    Local<S> L = local(y);
    const cplx i(0.0, 1.0);
    Mat8<S> w = Mat8<S>::Zero();
    for (int k = 0; k < 2; ++k) {
      Vec8<S> d = complex_row(L.cobasis, k);
      Vec8<S> db = conj(d);
      w += (d * db.transpose() - db * d.transpose()) * i;
    }
    Mat4<S> Y = eps_alpha_beta(lower(L.pi), lower(sigma_apply(L.pi)));
    Mat<S, 4, 8> th = L.cobasis.template block<4, 8>(0, 0);
    w -= Mat8<S>(th.transpose() * (Y - Y.transpose()) * th) * (i * lambda_);
    return w;
  }

  /// g̃(V, W) = ω̃_𝕁(V, 𝕀W).
  template <class S>
  Mat8<S> metric_from_forms(const Vec8<S>& y) const {
    return Mat8<S>(omega_J(y) * structure_I(y));
  }

  /// g̃ = 2σ_{A'B̄'}δπ^{A'}·δπ̄^{B'} + Λ‖π‖²g_{ab}θ^a·θ^b; g̃[r] from the forms in ambient mode.
  template <class S>
  Mat8<S> metric(const Vec8<S>& y) const {
    if (r_) return metric_from_forms(y);
    Local<S> L = local(y);
    Mat8<S> g = Mat8<S>::Zero();
    for (int k = 0; k < 2; ++k) {
      Vec8<S> d = complex_row(L.cobasis, k);
      Vec8<S> db = conj(d);
      g += d * db.transpose() + db * d.transpose();
    }
    Mat<S, 4, 8> th = L.cobasis.template block<4, 8>(0, 0);
    g += Mat8<S>(th.transpose() * th) * (norm_squared(L.pi) * lambda_);
    return g;
  }

  /// ‖π‖², or r̃ = ‖π‖²_r·r in ambient mode.
  template <class S>
  S potential(const Vec8<S>& y) const {
    S n = norm_squared(fiber_spinor(y));
    if (!r_) return n;
    Vec4<S> x = y.template head<4>();
    return n * (*r_)(x);
  }

  /// d^cφ = −½ dφ∘𝕀 as a row of components.
  template <class S, class F>
  Vec8<S> dc(F&& phi, const Vec8<S>& y) const {
    Vec8<S> grad = gradient<8>(phi, y);
    return Vec8<S>(structure_I(y).transpose() * grad * (-0.5));
  }

  /// i∂∂̄φ = dd^cφ with respect to 𝕀.
  template <class S, class F>
  Mat8<S> ddc(F&& phi, const Vec8<S>& y) const {
    return exterior_d1<8>([&](const auto& z) { return dc(phi, z); }, y);
  }

  /// Euler field π^{A'}∂/∂π^{A'} in real coordinate slots.
  template <class S>
  Vec8<S> euler(const Vec8<S>& y) const {
    Vec2<S> p = fiber_spinor(y);
    const cplx i(0.0, 1.0);
    Vec8<S> e = Vec8<S>::Zero();
    for (int k = 0; k < 2; ++k) {
      e(4 + 2 * k) = p(k) * 0.5;
      e(5 + 2 * k) = p(k) * (-0.5 * i);
    }
    return e;
  }

 private:
  Geometry4 base_;
  double lambda_ = 0.0;
  std::optional<ScalarField<4>> r_;
};

/// Real 8×8 view (values are real up to rounding).
inline Mat8d real_part(const Mat8<cplx>& m) { return m.real(); }

/// (positive, negative) eigenvalue counts of a real symmetric matrix.
std::pair<int, int> signature(const Eigen::MatrixXd& g, double zero_tol = 1e-9);

/// Seeded total-space sample points over base samples.
std::vector<TwistorPoint> sample_twistor_points(const Geometry4& geom, int count, std::uint64_t seed,
                                                const ScalarField<4>* r_of = nullptr, double r_min = 0.05);

// ---------------------------------------------------------------------------
// Verification suites on the total space.

VerificationReport integrability_check(const TotalSpace& ts, const std::vector<TwistorPoint>& pts,
                                       double tol_alg = 1e-10, double tol_nij = 1e-5);
VerificationReport kahler_potential_check(const TotalSpace& ts, const std::vector<TwistorPoint>& pts,
                                          double tol = 1e-5, double tol_alg = 1e-10);
VerificationReport hyperkahler_check(const TotalSpace& ts, const std::vector<TwistorPoint>& pts,
                                     double tol = 1e-4);
/// `fd_points` leading points also get a finite-difference cross-check of R̃.
VerificationReport curvature_formula_check(const TotalSpace& ts, const std::vector<TwistorPoint>& pts,
                                           double tol = 1e-4, double rel_tol = 1e-3, int fd_points = 5);

/// Riemann tensor of g̃ in the adapted basis (horizontal lifts, then fiber directions).
Tensor4<8> total_riemann_adapted(const TotalSpace& ts, const TwistorPoint& p, DerivMode mode = DerivMode::Dual);

// ---------------------------------------------------------------------------
// Ambient family and dilations.

/// Values of the ambient family at a point.
struct AmbientValues {
  Mat8d metric;        // g̃[r]
  Mat8d structure_I;   // 𝕀_r
  Mat8d structure_J;   // 𝕁_r
  Vec8<cplx> tau;      // τ̃_r
  double potential = 0.0;  // r̃
};

AmbientValues ambient_family(const TotalSpace& amb, const TwistorPoint& p);

/// δ_s(x, π) = (x, sπ) with s = e^{Υ(x)}, in real coordinates.
template <class S>
Vec8<S> dilate(const ScalarField<4>& ups, const Vec8<S>& y) {
  using std::exp;
  Vec4<S> x = y.template head<4>();
  S s = exp(ups(x));
  Vec8<S> out = y;
  out.template tail<4>() *= s;
  return out;
}

/// Coordinates of the same spinor in the spin frame of e^{2Υ}g: (x, e^{Υ/2}π).
template <class S>
Vec8<S> to_rescaled_frame(const ScalarField<4>& ups, const Vec8<S>& y) {
  using std::exp;
  Vec4<S> x = y.template head<4>();
  S s = exp(ups(x) * 0.5);
  Vec8<S> out = y;
  out.template tail<4>() *= s;
  return out;
}

/// Jacobian of a map of the 8 real coordinates.
template <class F>
Mat8<cplx> jacobian8(F&& f, const Vec8<cplx>& y) {
  Mat8<cplx> j;
  for (int k = 0; k < 8; ++k) j.col(k) = derivs(f(seed(y, k)));
  return j;
}

/// Ambient structures for r̂ = e^Υr expressed in the coordinates of the original spin frame.
struct RescaledAmbient {
  TotalSpace space;  // built on e^{2Υ}ḡ₊ with r̂
  ScalarField<4> ups;

  Mat8<cplx> conversion(const Vec8<cplx>& y) const {
    return jacobian8([this](const auto& z) { return to_rescaled_frame(ups, z); }, y);
  }
  Mat8<cplx> structure_I(const Vec8<cplx>& y) const;
  Mat8<cplx> structure_J(const Vec8<cplx>& y) const;
  Mat8<cplx> metric(const Vec8<cplx>& y) const;
};

RescaledAmbient rescaled_ambient(const Compactification& c, const ScalarField<4>& ups);

/// Ambient-family suite: i∂∂̄r̃ = ω̃_{𝕁_r}, structure identities, the g₊ cross-route,
/// homogeneity, r̃ identity, the shrinking |r| sequence, and constant-Υ isometry.
VerificationReport ambient_family_check(const Compactification& c, const std::vector<TwistorPoint>& pts,
                                        double tol = 1e-5, double tol_alg = 1e-8);

/// Pushforward of the 𝕀_{r̂}, 𝕁_{r̂} eigenspaces through δ_{e^Υ} and the metric pullback.
VerificationReport dilation_pushforward_check(const Compactification& c, const ScalarField<4>& ups,
                                              const std::vector<TwistorPoint>& pts, double tol = 1e-6);

/// The interior metric g₊ = ḡ₊/r² as a geometry on the compact chart.
Geometry4 interior_metric(const Compactification& c);

}  // namespace twistor
