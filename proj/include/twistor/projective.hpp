// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "twistor/total_space.hpp"

namespace twistor {

template <class S> using Mat6 = Mat<S, 6>;
template <class S> using Vec6 = Vec<S, 6>;
using Mat6d = Eigen::Matrix<double, 6, 6>;

/// A point of ℙ(S′) in an affine fiber chart.  Chart 0: z = π¹'/π⁰'; chart 1: z = π⁰'/π¹'.
struct ProjectivePoint {
  Vec4d x = Vec4d::Zero();
  cplx z = 0.0;
  int chart = 0;

  Vec6<cplx> coords() const {
    Vec6<cplx> q;
    q << x(0), x(1), x(2), x(3), z.real(), z.imag();
    return q;
  }
};

/// Lift of (x, z) to S′∖{0} along π = (1, z) or π = (z, 1).
template <class S>
Vec8<S> section(const Vec6<S>& q, int chart) {
  Vec8<S> y;
  for (int k = 0; k < 4; ++k) y(k) = q(k);
  if (chart == 0) {
    y(4) = S(1.0);
    y(5) = S(0.0);
    y(6) = q(4);
    y(7) = q(5);
  } else {
    y(4) = q(4);
    y(5) = q(5);
    y(6) = S(1.0);
    y(7) = S(0.0);
  }
  return y;
}

/// (x, π) ↦ (x, Re z, Im z) in the given chart.
template <class S>
Vec6<S> quotient(const Vec8<S>& y, int chart) {
  const cplx i(0.0, 1.0);
  S p0 = y(4) + y(5) * i, p1 = y(6) + y(7) * i;
  S z = chart == 0 ? S(p1 / p0) : S(p0 / p1);
  Vec6<S> q;
  for (int k = 0; k < 4; ++k) q(k) = y(k);
  q(4) = re(z);
  q(5) = im(z);
  return q;
}

inline Mat<cplx, 8, 6> section_jacobian(int chart) {
  Mat<cplx, 8, 6> s = Mat<cplx, 8, 6>::Zero();
  for (int k = 0; k < 4; ++k) s(k, k) = 1.0;
  s(chart == 0 ? 6 : 4, 4) = 1.0;
  s(chart == 0 ? 7 : 5, 5) = 1.0;
  return s;
}

template <class S>
Mat<S, 6, 8> quotient_jacobian(const Vec8<S>& y, int chart) {
  Mat<S, 6, 8> d;
  for (int k = 0; k < 8; ++k) d.col(k) = derivs(quotient(seed(y, k), chart));
  return d;
}

/// sign · dd^c log|φ| on the total space (φ the potential of `ts`).
template <class S>
Mat8<S> log_potential_form(const TotalSpace& ts, const Vec8<S>& y, double sign) {
  auto lp = [&ts](const auto& z) {
    using std::log;
    auto p = ts.potential(z);
    return decltype(p)(log(p * p) * 0.5);
  };
  return Mat8<S>(ts.ddc(lp, y) * sign);
}

/// The descended Kähler form in section coordinates.
template <class S>
Mat6<S> six_form(const TotalSpace& ts, const Vec6<S>& q, int chart, double sign) {
  const Mat<S, 8, 6> s = section_jacobian(chart).template cast<S>();
  return Mat6<S>(s.transpose() * log_potential_form(ts, section(q, chart), sign) * s);
}

/// Complex structure induced on ℙ(S′) in section coordinates.
template <class S>
Mat6<S> six_structure(const TotalSpace& ts, const Vec6<S>& q, int chart) {
  Vec8<S> y = section(q, chart);
  const Mat<S, 8, 6> s = section_jacobian(chart).template cast<S>();
  return Mat6<S>(quotient_jacobian(y, chart) * ts.structure_I(y) * s);
}

/// Metric of sign · dd^c log|φ|: g(V, W) = ω(V, 𝕀W).
template <class S>
Mat6<S> six_metric(const TotalSpace& ts, const Vec6<S>& q, int chart, double sign) {
  Vec8<S> y = section(q, chart);
  const Mat<S, 8, 6> s = section_jacobian(chart).template cast<S>();
  Mat8<S> g8 = log_potential_form(ts, y, sign) * ts.structure_I(y);
  return Mat6<S>(s.transpose() * g8 * s);
}

/// g_KE from dd^c log‖π‖² (requires the ASD-Einstein precondition; throws NotASDEinstein).
Mat6d ke_metric(const Geometry4& geom, const ProjectivePoint& q);
Mat6d ke_metric(const TotalSpace& ts, const ProjectivePoint& q);

/// g_CY from −dd^c log|r̃| with 𝕀_r; throws BoundaryPoint when |r| < margin.
Mat6d cheng_yau_metric(const Compactification& c, const ProjectivePoint& q, double margin = 0.05);

/// Projective sample points (chart 0) from seeded total-space samples.
std::vector<ProjectivePoint> sample_projective_points(const Geometry4& geom, int count, std::uint64_t seed,
                                                      const ScalarField<4>* r_of = nullptr, double r_min = 0.05);

/// Block structure, fiber Fubini–Study form, chart independence, Einstein constant, signature.
VerificationReport ke_metric_check(const TotalSpace& ts, const std::vector<ProjectivePoint>& pts, double tol = 1e-6,
                                   double tol_fiber = 1e-8, double tol_einstein = 1e-3);

/// ω_g̃⁴ = 4φ⁴ (i dz⁰/z⁰ ∧ dz̄⁰/z̄⁰) ∧ ω_KE³ as Pfaffians, plus the c⁴ scaling.
VerificationReport ma_descent_check(const TotalSpace& ts, const std::vector<TwistorPoint>& pts, double tol = 1e-4);

/// Blocks (−Λg₊) ⊕ (−g_FS), agreement with −dd^c log‖π‖²_{g₊}, r ↦ e^Υr independence, signature.
VerificationReport cheng_yau_check(const Compactification& c, const ScalarField<4>& ups,
                                   const std::vector<ProjectivePoint>& pts, double tol = 1e-6,
                                   double tol_r = 1e-8);

}  // namespace twistor
