// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "twistor/total_space.hpp"

namespace twistor {

template <class S> using Vec3 = Vec<S, 3>;
template <class S> using Mat3 = Mat<S, 3>;
template <class S> using Vec9 = Vec<S, 9>;
using Vec3d = Eigen::Vector3d;

/// A null covector ζ_i over x ∈ Σ.
struct CRPoint {
  Vec3d x = Vec3d::Zero();
  Vec3<cplx> zeta = Vec3<cplx>(1.0, cplx(0.0, 1.0), 0.0);

  /// Real coordinates (x¹, x², x³, Re ζ₁, Im ζ₁, …, Re ζ₃, Im ζ₃) on CT*Σ.
  Vec9<cplx> coords() const {
    Vec9<cplx> p;
    p << x(0), x(1), x(2), zeta(0).real(), zeta(0).imag(), zeta(1).real(), zeta(1).imag(), zeta(2).real(),
        zeta(2).imag();
    return p;
  }
};

/// Complex tangent vectors of CT*Σ are stored as (u, v, w) for
/// uⁱ∂/∂xⁱ + v_i∂/∂ζ_i + w_i∂/∂ζ̄_i.
template <class S>
Vec9<S> wirtinger_to_real(const Vec9<S>& uvw) {
  const cplx i(0.0, 1.0);
  Vec9<S> r;
  for (int k = 0; k < 3; ++k) {
    r(k) = uvw(k);
    r(3 + 2 * k) = (uvw(3 + k) + uvw(6 + k)) * 0.5;
    r(4 + 2 * k) = (uvw(6 + k) - uvw(3 + k)) * (0.5 * i);
  }
  return r;
}

template <class S>
Vec9<S> real_to_wirtinger(const Vec9<S>& r) {
  const cplx i(0.0, 1.0);
  Vec9<S> uvw;
  for (int k = 0; k < 3; ++k) {
    uvw(k) = r(k);
    uvw(3 + k) = r(3 + 2 * k) + r(4 + 2 * k) * i;
    uvw(6 + k) = r(3 + 2 * k) - r(4 + 2 * k) * i;
  }
  return uvw;
}

/// Complex conjugate vector field: (u, v, w) ↦ (ū, w̄, v̄).
template <class S>
Vec9<S> conj_field(const Vec9<S>& uvw) {
  Vec9<S> out;
  for (int k = 0; k < 3; ++k) {
    out(k) = conj(uvw(k));
    out(3 + k) = conj(uvw(6 + k));
    out(6 + k) = conj(uvw(3 + k));
  }
  return out;
}

/// Metric data of a 3-chart at a point.
template <class S>
struct MetricData3 {
  Mat3<S> h, hinv;
  std::array<Mat3<S>, 3> dh;
  std::array<Mat3<S>, 3> christoffel;  // christoffel[k](i, j) = Γ^k_{ij}
  S sqrt_det;
};

template <class S>
MetricData3<S> metric_data3(const Geometry3& h3, const Vec3<S>& x) {
  using std::sqrt;
  MetricData3<S> m;
  for (int k = 0; k < 3; ++k) {
    Mat3<Dual<S>> hk = h3.g(seed(x, k));
    if (k == 0) m.h = values(hk);
    m.dh[k] = derivs(hk);
  }
  m.hinv = inverse(m.h);
  m.christoffel = christoffel_from<S, 3>(m.hinv, m.dh);
  m.sqrt_det = sqrt(determinant(m.h));
  return m;
}

template <class S>
Vec3<S> zeta_of(const Vec9<S>& p) {
  const cplx i(0.0, 1.0);
  return Vec3<S>(p(3) + p(4) * i, p(5) + p(6) * i, p(7) + p(8) * i);
}

/// ε_{ijk} a^j b^k.
template <class S>
Vec3<S> cross3(const Vec3<S>& a, const Vec3<S>& b) {
  return Vec3<S>(a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2), a(0) * b(1) - a(1) * b(0));
}

/// Vector fields spanning D over CT*Σ, extended off the null cone by the same formulas.
class CRFields {
 public:
  explicit CRFields(Geometry3 h3) : h3_(std::move(h3)) {}
  const Geometry3& metric() const { return h3_; }

  /// ζⁱX_i with X_i the Levi-Civita horizontal lift of ∂/∂xⁱ.
  template <class S>
  Vec9<S> horizontal(const Vec9<S>& p) const {
    Vec3<S> x = p.template head<3>();
    MetricData3<S> m = metric_data3(h3_, x);
    Vec3<S> z = zeta_of(p), zb = conj(z);
    Vec3<S> zu = m.hinv * z;
    Vec9<S> out = Vec9<S>::Zero();
    out.template head<3>() = zu;
    for (int j = 0; j < 3; ++j) {
      S v(0.0), w(0.0);
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) {
          v += zu(i) * m.christoffel[k](i, j) * z(k);
          w += zu(i) * m.christoffel[k](i, j) * zb(k);
        }
      out(3 + j) = v;
      out(6 + j) = w;
    }
    return out;
  }

  /// ζ̄_i∂/∂ζ̄_i.
  template <class S>
  Vec9<S> anti_euler(const Vec9<S>& p) const {
    Vec9<S> out = Vec9<S>::Zero();
    out.template tail<3>() = conj(zeta_of(p));
    return out;
  }

  /// w_i∂/∂ζ̄_i with w_i = √det h ε_{ijk} ζ̄ʲζᵏ, so ζ̄ⁱw_i = 0.
  template <class S>
  Vec9<S> transverse(const Vec9<S>& p) const {
    Vec3<S> x = p.template head<3>();
    MetricData3<S> m = metric_data3(h3_, x);
    Vec3<S> z = zeta_of(p);
    Vec3<S> zu = m.hinv * z, zbu = m.hinv * conj(z);
    Vec9<S> out = Vec9<S>::Zero();
    out.template tail<3>() = cross3(zbu, zu) * m.sqrt_det;
    return out;
  }

  /// ζ_i∂/∂ζ_i.
  template <class S>
  Vec9<S> euler(const Vec9<S>& p) const {
    Vec9<S> out = Vec9<S>::Zero();
    out.template segment<3>(3) = zeta_of(p);
    return out;
  }

  /// Real contact form θ = i√det h ε_{ijk}ζʲζ̄ᵏ dxⁱ annihilating the horizontal parts of D and D̄.
  template <class S>
  Vec3<S> contact(const Vec9<S>& p) const {
    const cplx i(0.0, 1.0);
    Vec3<S> x = p.template head<3>();
    MetricData3<S> m = metric_data3(h3_, x);
    Vec3<S> z = zeta_of(p);
    return Vec3<S>(cross3(Vec3<S>(m.hinv * z), Vec3<S>(m.hinv * conj(z))) * (m.sqrt_det * i));
  }

 private:
  Geometry3 h3_;
};

/// h(ζ, ζ) = h^{ij}ζ_iζ_j.
cplx null_defect(const Geometry3& h3, const CRPoint& p);

/// Basis {ζⁱX_i, ζ̄_i∂/∂ζ̄_i, w∂/∂ζ̄} of D in (u, v, w) form; throws NotNull.
Mat<cplx, 9, 3> cr_distribution(const Geometry3& h3, const CRPoint& p);

/// max over the basis of ‖V⌟ω − (a dF + b dF̄)‖ minimized over a, b (F = h(ζ, ζ)).
double isotropy_residual(const Geometry3& h3, const CRPoint& p, const Mat<cplx, 9, 3>& basis);

/// Levi form iθ([Z_a, Z̄_b]) on the T^{1,0} representatives {conj(ζⁱX_i), conj(w∂/∂ζ̄)}; throws NotNull.
Mat2<cplx> levi_form(const Geometry3& h3, const CRPoint& p);

/// Relative least-squares residual of v against the column span of `span`.
double span_residual(const Eigen::MatrixXcd& span, const Eigen::VectorXcd& v);

/// Seeded null covectors ζ = θᵀ(u + iv), u ⊥ v unit in an h-orthonormal coframe.
std::vector<CRPoint> sample_cr_points(const Geometry3& h3, int count, std::uint64_t seed);

/// ξ with r_{AA'}ξ^Aπ^{A'} = 0, unit norm, first nonzero component real positive.
Vec2<cplx> tangential_spinor(const Compactification& c, const Vec4d& x, const Vec2<cplx>& pi);

/// Unnormalized ξ = (k₁, −k₀), k_A = r_{AA'}π^{A'}; holomorphic in π.
template <class S>
Vec2<S> tangential_spinor_raw(const Compactification& c, const Vec4<S>& x, const Vec2<S>& pi) {
  FrameData<S> fd = frame_data<S>(c.compact, x);
  Vec4<S> dr;
  for (int k = 0; k < 4; ++k) dr(k) = derivs(c.r(seed(x, k)));
  Mat2<S> rs = covector_to_spinor(Vec4<S>(fd.frame.transpose() * dr));
  Vec2<S> k = rs * pi;
  return Vec2<S>(k(1), -k(0));
}

/// Coordinate components of ζ = ξ^Aπ^{A'}∂/∂x^a.
template <class S>
Vec4<S> tangential_vector(const Compactification& c, const Vec4<S>& x, const Vec2<S>& pi) {
  FrameData<S> fd = frame_data<S>(c.compact, x);
  Vec2<S> xi = tangential_spinor_raw(c, x, pi);
  Mat2<S> y = xi * pi.transpose();
  return Vec4<S>(fd.frame * from_spinor(y));
}

/// f̃ on the slice x⁰ = 0 in real coordinates (x¹, x², x³, Re π⁰', Im π⁰', Re π¹', Im π¹')
/// to CT*Σ real coordinates, lowering with the boundary metric h.
template <class S>
Vec9<S> ftilde(const Compactification& c, const Vec<S, 7>& s) {
  Vec4<S> x;
  x << S(0.0), s(0), s(1), s(2);
  const cplx i(0.0, 1.0);
  Vec2<S> pi(s(3) + s(4) * i, s(5) + s(6) * i);
  Vec4<S> zeta = tangential_vector(c, x, pi);
  Vec3<S> xs = s.template head<3>();
  Mat3<S> h = c.boundary.g(xs);
  Vec3<S> low = h * Vec3<S>(zeta.template tail<3>());
  Vec9<S> out;
  for (int k = 0; k < 3; ++k) {
    out(k) = s(k);
    out(3 + 2 * k) = re(low(k));
    out(4 + 2 * k) = im(low(k));
  }
  return out;
}

/// D-structure, Levi form, and conformal/scaling invariance on (Σ, h).
VerificationReport twistor_cr_check(const Geometry3& h3, const std::vector<CRPoint>& pts, double tol_iso = 1e-10,
                                    double tol_bracket = 1e-6);

/// Tangential spinor and CR embedding checks for a compactification with r = x⁰.
VerificationReport embedding_check(const Compactification& c, const std::vector<TwistorPoint>& pts,
                                   double tol = 1e-6);

}  // namespace twistor
