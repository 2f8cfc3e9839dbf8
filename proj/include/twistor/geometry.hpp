// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "twistor/calculus.hpp"
#include "twistor/report.hpp"
#include "twistor/spinor.hpp"

#include <memory>
#include <random>
#include <string>
#include <vector>

namespace twistor {

struct Compactification;

/// A single coordinate chart with a metric given in components.
template <int N>
struct ChartedGeometry {
  std::string name;
  Vec<double, N> lo = Vec<double, N>::Constant(-1.0);
  Vec<double, N> hi = Vec<double, N>::Constant(1.0);
  int orientation = 1;
  MatrixField<N> metric;
  /// Conformal compactification data when the chart is a Poincaré–Einstein interior.
  std::shared_ptr<const Compactification> compactification;

  static constexpr int dimension = N;

  template <class S>
  Mat<S, N> g(const Vec<S, N>& x) const { return metric(x); }
};

using Geometry4 = ChartedGeometry<4>;
using Geometry3 = ChartedGeometry<3>;

/// ḡ₊ = r²g₊ on a chart containing the boundary slice {r = 0}.
struct Compactification {
  Geometry4 compact;
  ScalarField<4> r;
  Geometry3 boundary;
  double lambda = 0.0;  // Λ of the interior metric g₊
};

// ---------------------------------------------------------------------------
// Coframes

/// Gram–Schmidt of dx⁰, dx¹, … with respect to g⁻¹; legs 2 and 3 are swapped
/// when the determinant sign disagrees with the orientation.
template <class S, int N>
Mat<S, N> orthonormal_coframe(const Mat<S, N>& g, int orientation) {
  Mat<S, N> ginv = inverse(g);
  Mat<S, N> theta = Mat<S, N>::Zero();
  for (int k = 0; k < N; ++k) {
    Vec<S, N> v = Vec<S, N>::Zero();
    v(k) = S(1.0);
    for (int j = 0; j < k; ++j) {
      Vec<S, N> t = theta.row(j).transpose();
      S c = (v.transpose() * ginv * t)(0, 0);
      v -= c * t;
    }
    S n2 = (v.transpose() * ginv * v)(0, 0);
    if (!(real0(n2) > 1e-12))
      throw Error(ErrorKind::DegenerateMetric, "Gram-Schmidt pivot below 1e-12");
    using std::sqrt;
    theta.row(k) = (v / sqrt(n2)).transpose();
  }
  // The triangular Gram–Schmidt coframe has positive determinant.
  if (orientation < 0 && N >= 4) theta.row(2).swap(theta.row(3));
  return theta;
}

template <class S, int N>
Mat<S, N> orthonormal_coframe(const ChartedGeometry<N>& geom, const Vec<S, N>& x) {
  return orthonormal_coframe<S, N>(geom.g(x), geom.orientation);
}

/// Frame vectors as columns: E = g⁻¹Θᵀ, so θ^a(E_b) = δ^a_b.
template <class S, int N>
Mat<S, N> frame_from_coframe(const Mat<S, N>& theta) {
  return inverse(theta);
}

// ---------------------------------------------------------------------------
// Curvature

/// Frame-component curvature in the convention (∇_a∇_b − ∇_b∇_a)v^c = R_ab^c_d v^d.
struct CurvatureData {
  Tensor4<4> riemann, weyl, weyl_plus, weyl_minus;
  Mat4d ricci, schouten;
  double scalar = 0.0;
  Mat<cplx, 4> coframe, frame;
};

/// Totally symmetric (or pair-symmetric) 4-index spinor, index (A,B,C,D) ↦ 8A+4B+2C+D.
struct Spinor4 {
  std::array<cplx, 16> c{};
  cplx& operator()(int a, int b, int cc, int d) { return c[8 * a + 4 * b + 2 * cc + d]; }
  const cplx& operator()(int a, int b, int cc, int d) const { return c[8 * a + 4 * b + 2 * cc + d]; }
  double max_abs() const {
    double m = 0.0;
    for (const auto& v : c) m = std::max(m, std::abs(v));
    return m;
  }
};

struct CurvatureSpinors {
  Spinor4 psi;        // Ψ_ABCD
  Spinor4 psi_tilde;  // Ψ̃_A'B'C'D'
  Spinor4 phi;        // Φ_ABA'B' stored as (A, B, A', B')
  double lambda = 0.0;
  double reassembly_residual = 0.0;
};

/// The spinor volume form e_abcd = ε_ACε_BDε_A'D'ε_B'C' − ε_ADε_BCε_A'C'ε_B'D' in frame components.
const Tensor4<4>& volume_form();

/// Frame components of a spinor tensor with lowered indices (A A' B B' C C' D D').
Tensor4<4> frame_from_spinor(const std::function<cplx(int, int, int, int, int, int, int, int)>& t);

/// Spinor components T_{AA'BB'CC'DD'} of a frame tensor.
std::vector<cplx> spinor_from_frame(const Tensor4<4>& t);

/// ½ e_cd^pq T_abpq.
Tensor4<4> hodge_right(const Tensor4<4>& t);

template <int N>
auto metric_function(const ChartedGeometry<N>& geom) {
  return [&geom](const auto& x) { return geom.g(x); };
}

CurvatureData curvature(const Geometry4& geom, const Vec4d& x, DerivMode mode = DerivMode::Dual);
CurvatureSpinors curvature_spinors(const Geometry4& geom, const Vec4d& x, DerivMode mode = DerivMode::Dual);
CurvatureSpinors curvature_spinors(const CurvatureData& cd);

/// Frame components of W⁻ = Ψ_ABCD ε_A'B' ε_C'D' and W⁺ = Ψ̃_A'B'C'D' ε_AB ε_CD.
Tensor4<4> weyl_minus_from_spinor(const Spinor4& psi);
Tensor4<4> weyl_plus_from_spinor(const Spinor4& psi_tilde);

/// Coordinate-component curvature, for 3- and 4-dimensional charts.
template <int N>
CoordinateCurvature<N> coordinate_curvature(const ChartedGeometry<N>& geom, const Vec<double, N>& x,
                                             DerivMode mode = DerivMode::Dual) {
  Vec<cplx, N> xc = x.template cast<cplx>();
  return curvature_from_jet<N>(metric_jet<N>(metric_function(geom), xc, mode));
}

double lambda_at(const Geometry4& geom, const Vec4d& x);

// ---------------------------------------------------------------------------
// Sampling

/// Seeded uniform draws in the chart box shrunk by a 10% margin; charts with a
/// compactification parameter `r_of` exclude |r| < r_min.
template <int N>
std::vector<Vec<double, N>> sample_points(const ChartedGeometry<N>& geom, int count, std::uint64_t seed,
                                          const ScalarField<N>* r_of = nullptr, double r_min = 0.05) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Vec<double, N>> pts;
  pts.reserve(count);
  const Vec<double, N> span = geom.hi - geom.lo;
  int guard = 0;
  while (static_cast<int>(pts.size()) < count && guard < 1000 * count + 1000) {
    ++guard;
    Vec<double, N> x;
    for (int i = 0; i < N; ++i) x(i) = geom.lo(i) + span(i) * (0.1 + 0.8 * u(rng));
    if (r_of) {
      Vec<cplx, N> xc = x.template cast<cplx>();
      if (std::abs((*r_of)(xc).real()) < r_min) continue;
    }
    pts.push_back(x);
  }
  return pts;
}

/// Seeded nonzero primed spinors with components uniform in the unit square.
std::vector<Vec2<cplx>> sample_spinors(int count, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Checks

VerificationReport asd_einstein_check(const Geometry4& geom, const std::vector<Vec4d>& samples, double tol,
                                      DerivMode mode = DerivMode::Dual);

/// |dr|²_ḡ = −2Λ and ∇̄dr + rP̄ = 0 at the samples, with Λ the value for the interior metric.
VerificationReport special_defining_check(const Geometry4& compact, const ScalarField<4>& r, double lambda,
                                          const std::vector<Vec4d>& samples, double tol);

// ---------------------------------------------------------------------------
// Catalog

Geometry4 flat_r4();
Geometry4 hyperbolic_half_space();
Geometry4 round_s4(double radius = 1.0);
/// ℂP² affine chart z¹ = x⁰ + ix¹, z² = x² + ix³ with potential log(1 + |z|²).
/// `asd_oriented` selects the orientation for which Ψ̃ = 0.
Geometry4 fubini_study(bool asd_oriented);
inline Geometry4 fubini_study_reversed() { return fubini_study(true); }
Geometry4 perturbed_non_einstein();
Geometry3 flat_r3();
/// Compactified hyperbolic model: ḡ₊ = δ on [−1,1]⁴ with r = x⁰.
std::shared_ptr<const Compactification> compactified_hyperbolic();

/// e^{2Υ}g with the same chart and orientation.
template <int N>
ChartedGeometry<N> conformal_rescale(const ChartedGeometry<N>& geom, const ScalarField<N>& ups,
                                     const std::string& name = "") {
  ChartedGeometry<N> out = geom;
  out.name = name.empty() ? geom.name + "-rescaled" : name;
  out.compactification.reset();
  auto base = geom.metric;
  auto u = ups;
  out.metric = MatrixField<N>([base, u](const auto& x) {
    using std::exp;
    auto e = exp(u(x) * 2.0);
    return Mat<std::decay_t<decltype(e)>, N>(base(x) * e);
  });
  return out;
}

/// Catalog lookup by identifier, including inline `chart:` specs.
Geometry4 geometry_by_name(const std::string& name);
std::vector<std::string> catalog_names();

}  // namespace twistor
