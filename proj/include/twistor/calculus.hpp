// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "twistor/types.hpp"

#include <array>
#include <vector>

namespace twistor {

// ---------------------------------------------------------------------------
// Derivatives by forward propagation.  A function argument `f` must be a
// generic callable accepting Vec<T, N> for every T the call chain needs.

template <int N, class S, class F>
auto partial(F&& f, const Vec<S, N>& x, int k) {
  return derivs(f(seed(x, k)));
}

/// Gradient of a scalar function.
template <int N, class S, class F>
Vec<S, N> gradient(F&& f, const Vec<S, N>& x) {
  Vec<S, N> g;
  for (int k = 0; k < N; ++k) g(k) = partial<N>(f, x, k);
  return g;
}

/// Exterior derivative of a 1-form field: (dα)_{ij} = ∂_iα_j − ∂_jα_i.
template <int N, class S, class F>
Mat<S, N> exterior_d1(F&& alpha, const Vec<S, N>& x) {
  Mat<S, N> m;
  for (int k = 0; k < N; ++k) m.row(k) = partial<N>(alpha, x, k).transpose();
  return m - m.transpose();
}

/// Totally antisymmetric 3-tensor stored densely.
template <class S, int N>
struct Tensor3 {
  std::vector<S> data = std::vector<S>(N * N * N, S(0.0));
  S& operator()(int i, int j, int k) { return data[(i * N + j) * N + k]; }
  const S& operator()(int i, int j, int k) const { return data[(i * N + j) * N + k]; }
};

/// Exterior derivative of a 2-form field: ∂_iΩ_{jk} + ∂_jΩ_{ki} + ∂_kΩ_{ij}.
template <int N, class S, class F>
Tensor3<S, N> exterior_d2(F&& omega, const Vec<S, N>& x) {
  std::array<Mat<S, N>, N> d;
  for (int k = 0; k < N; ++k) d[k] = partial<N>(omega, x, k);
  Tensor3<S, N> t;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k) t(i, j, k) = d[i](j, k) + d[j](k, i) + d[k](i, j);
  return t;
}

/// Nijenhuis tensor of an endomorphism field J (J(k, l) = J^k_l), as
/// N^k_{ij} = J^l_i∂_lJ^k_j − J^l_j∂_lJ^k_i − J^k_l(∂_iJ^l_j − ∂_jJ^l_i).
template <int N, class S, class F>
Tensor3<S, N> nijenhuis(F&& jfield, const Vec<S, N>& x) {
  Mat<S, N> j = jfield(x);
  std::array<Mat<S, N>, N> d;
  for (int k = 0; k < N; ++k) d[k] = partial<N>(jfield, x, k);
  Tensor3<S, N> t;
  for (int k = 0; k < N; ++k)
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) {
        S s(0.0);
        for (int l = 0; l < N; ++l) {
          s += j(l, a) * d[l](k, b) - j(l, b) * d[l](k, a);
          s -= j(k, l) * (d[a](l, b) - d[b](l, a));
        }
        t(k, a, b) = s;
      }
  return t;
}

template <class S, int N>
double max_abs(const Tensor3<S, N>& t) {
  double m = 0.0;
  for (const auto& v : t.data) m = std::max(m, std::abs(value0(v)));
  return m;
}

template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  double r = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r = std::max(r, std::abs(value0(m(i, j))));
  return r;
}

/// Coordinate Hessian of a scalar function by nested forward propagation.
template <int N, class F>
Mat<cplx, N> hessian(F&& f, const Vec<cplx, N>& x) {
  Mat<cplx, N> h;
  for (int k = 0; k < N; ++k)
    for (int l = k; l < N; ++l) {
      Vec<D2, N> q;
      for (int i = 0; i < N; ++i)
        q(i) = D2(D1(x(i), cplx(i == k ? 1.0 : 0.0)), D1(cplx(i == l ? 1.0 : 0.0), cplx(0.0)));
      h(k, l) = h(l, k) = f(q).d.d;
    }
  return h;
}

// ---------------------------------------------------------------------------
// Generic small-matrix inverse by Gauss–Jordan with partial pivoting on |value|.
// Works for every scalar of the dual family.

template <class S, int N>
Mat<S, N> inverse(const Mat<S, N>& m) {
  Mat<S, N> a = m;
  Mat<S, N> inv = Mat<S, N>::Identity();
  for (int c = 0; c < N; ++c) {
    int p = c;
    double best = std::abs(value0(a(c, c)));
    for (int r = c + 1; r < N; ++r) {
      double v = std::abs(value0(a(r, c)));
      if (v > best) { best = v; p = r; }
    }
    if (best < 1e-300) throw Error(ErrorKind::DegenerateMetric, "singular matrix in inverse");
    if (p != c) { a.row(p).swap(a.row(c)); inv.row(p).swap(inv.row(c)); }
    S piv = S(1.0) / a(c, c);
    a.row(c) *= piv;
    inv.row(c) *= piv;
    for (int r = 0; r < N; ++r) {
      if (r == c) continue;
      S f = a(r, c);
      a.row(r) -= f * a.row(c);
      inv.row(r) -= f * inv.row(c);
    }
  }
  return inv;
}

template <class S, int N>
S determinant(const Mat<S, N>& m) {
  Mat<S, N> a = m;
  S det(1.0);
  for (int c = 0; c < N; ++c) {
    int p = c;
    double best = std::abs(value0(a(c, c)));
    for (int r = c + 1; r < N; ++r) {
      double v = std::abs(value0(a(r, c)));
      if (v > best) { best = v; p = r; }
    }
    if (best == 0.0) return S(0.0);
    if (p != c) { a.row(p).swap(a.row(c)); det = -det; }
    det *= a(c, c);
    for (int r = c + 1; r < N; ++r) {
      S f = a(r, c) / a(c, c);
      a.row(r) -= f * a.row(c);
    }
  }
  return det;
}

/// Pfaffian of an antisymmetric matrix by expansion along the first row.
template <class S>
S pfaffian(const Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& a) {
  const Eigen::Index n = a.rows();
  if (n == 0) return S(1.0);
  if (n % 2 == 1) return S(0.0);
  S total(0.0);
  for (Eigen::Index j = 1; j < n; ++j) {
    Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> minor(n - 2, n - 2);
    Eigen::Index rr = 0;
    for (Eigen::Index r = 1; r < n; ++r) {
      if (r == j) continue;
      Eigen::Index cc = 0;
      for (Eigen::Index c = 1; c < n; ++c) {
        if (c == j) continue;
        minor(rr, cc++) = a(r, c);
      }
      ++rr;
    }
    S term = a(0, j) * pfaffian<S>(minor);
    total += (j % 2 == 1) ? term : S(-term);
  }
  return total;
}

/// Ω(V, W) = VᵀΩW for the 2-form α∧β.
template <class S, int N>
Mat<S, N> wedge(const Vec<S, N>& a, const Vec<S, N>& b) {
  return a * b.transpose() - b * a.transpose();
}

/// Symmetric product a·b = ½(a⊗b + b⊗a).
template <class S, int N>
Mat<S, N> sym_product(const Vec<S, N>& a, const Vec<S, N>& b) {
  return (a * b.transpose() + b * a.transpose()) * 0.5;
}

// ---------------------------------------------------------------------------
// Metric jets and Riemannian curvature in coordinates.

enum class DerivMode { Dual, FiniteDifference };

template <int N>
struct MetricJet {
  Mat<cplx, N> g;
  std::array<Mat<cplx, N>, N> dg;                 // dg[k] = ∂_k g
  std::array<std::array<Mat<cplx, N>, N>, N> ddg;  // ddg[k][l] = ∂_k∂_l g
};

/// Seed coordinate k in the inner dual level and l in the outer one.
template <int N>
Vec<D2, N> seed_pair(const Vec<cplx, N>& x, int k, int l) {
  Vec<D2, N> q;
  for (int i = 0; i < N; ++i) {
    D1 v(x(i), cplx(i == k ? 1.0 : 0.0));
    D1 d(cplx(i == l ? 1.0 : 0.0), cplx(0.0));
    q(i) = D2(v, d);
  }
  return q;
}

/// Jet by nested dual numbers: exact to rounding for closed-form fields.
template <int N, class F>
MetricJet<N> metric_jet_dual(F&& G, const Vec<cplx, N>& x) {
  MetricJet<N> jet;
  for (int k = 0; k < N; ++k) {
    for (int l = k; l < N; ++l) {
      Mat<D2, N> m = G(seed_pair<N>(x, k, l));
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
          const D2& z = m(i, j);
          if (k == 0 && l == 0) jet.g(i, j) = z.v.v;
          jet.dg[k](i, j) = z.v.d;
          jet.dg[l](i, j) = z.d.v;
          jet.ddg[k][l](i, j) = z.d.d;
          jet.ddg[l][k](i, j) = z.d.d;
        }
    }
  }
  return jet;
}

/// Jet by central differences with one Richardson level.
/// First derivatives use step h1, second derivatives step h2.
template <int N, class F>
MetricJet<N> metric_jet_fd(F&& G, const Vec<cplx, N>& x, double h1 = 1e-5, double h2 = 1e-3) {
  MetricJet<N> jet;
  jet.g = G(x);
  auto shifted = [&](int k, double s, int l, double t) {
    Vec<cplx, N> y = x;
    y(k) += s;
    y(l) += t;
    return Mat<cplx, N>(G(y));
  };
  auto d1 = [&](int k, double h) {
    return Mat<cplx, N>((shifted(k, h, k, 0.0) - shifted(k, -h, k, 0.0)) / (2.0 * h));
  };
  for (int k = 0; k < N; ++k) jet.dg[k] = (4.0 * d1(k, h1 / 2.0) - d1(k, h1)) / 3.0;
  auto d2 = [&](int k, int l, double h) -> Mat<cplx, N> {
    if (k == l) {
      return (shifted(k, h, k, 0.0) - 2.0 * jet.g + shifted(k, -h, k, 0.0)) / (h * h);
    }
    return (shifted(k, h, l, h) - shifted(k, h, l, -h) - shifted(k, -h, l, h) + shifted(k, -h, l, -h)) /
           (4.0 * h * h);
  };
  for (int k = 0; k < N; ++k)
    for (int l = k; l < N; ++l) {
      Mat<cplx, N> m = (4.0 * d2(k, l, h2 / 2.0) - d2(k, l, h2)) / 3.0;
      jet.ddg[k][l] = m;
      jet.ddg[l][k] = m;
    }
  return jet;
}

template <int N, class F>
MetricJet<N> metric_jet(F&& G, const Vec<cplx, N>& x, DerivMode mode) {
  return mode == DerivMode::Dual ? metric_jet_dual<N>(G, x) : metric_jet_fd<N>(G, x);
}

/// Dense 4-index tensor.
template <int N>
struct Tensor4 {
  std::vector<cplx> data = std::vector<cplx>(N * N * N * N, cplx(0.0));
  cplx& operator()(int a, int b, int c, int d) { return data[((a * N + b) * N + c) * N + d]; }
  const cplx& operator()(int a, int b, int c, int d) const { return data[((a * N + b) * N + c) * N + d]; }
  double max_abs() const {
    double m = 0.0;
    for (const auto& v : data) m = std::max(m, std::abs(v));
    return m;
  }
};

/// Levi-Civita data in coordinates.
template <int N>
struct CoordinateCurvature {
  Mat<cplx, N> g, ginv;
  std::array<Mat<cplx, N>, N> christoffel;  // christoffel[i](j, k) = Γ^i_{jk}
  Tensor4<N> riemann_low;                   // g(R(∂_k, ∂_l)∂_j, ∂_i) at (i, j, k, l)
  Mat<cplx, N> ricci;                       // Ric_{jl} = R^i_{jil}
};

template <class S, int N>
std::array<Mat<S, N>, N> christoffel_from(const Mat<S, N>& ginv, const std::array<Mat<S, N>, N>& dg) {
  std::array<Mat<S, N>, N> gam;
  for (int i = 0; i < N; ++i) {
    gam[i].setZero();
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k) {
        S s(0.0);
        for (int m = 0; m < N; ++m) s += ginv(i, m) * (dg[j](m, k) + dg[k](m, j) - dg[m](j, k));
        gam[i](j, k) = s * 0.5;
      }
  }
  return gam;
}

template <int N>
CoordinateCurvature<N> curvature_from_jet(const MetricJet<N>& jet) {
  CoordinateCurvature<N> c;
  c.g = jet.g;
  c.ginv = jet.g.inverse();
  c.christoffel = christoffel_from<cplx, N>(c.ginv, jet.dg);
  // ∂_l Γ^i_{jk}
  std::array<std::array<Mat<cplx, N>, N>, N> dgam;  // dgam[l][i](j,k)
  for (int l = 0; l < N; ++l) {
    Mat<cplx, N> dginv = -c.ginv * jet.dg[l] * c.ginv;
    for (int i = 0; i < N; ++i) {
      dgam[l][i].setZero();
      for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k) {
          cplx s = 0.0;
          for (int m = 0; m < N; ++m) {
            s += dginv(i, m) * (jet.dg[j](m, k) + jet.dg[k](m, j) - jet.dg[m](j, k));
            s += c.ginv(i, m) * (jet.ddg[l][j](m, k) + jet.ddg[l][k](m, j) - jet.ddg[l][m](j, k));
          }
          dgam[l][i](j, k) = 0.5 * s;
        }
    }
  }
  // R^i_{jkl} = ∂_kΓ^i_{lj} − ∂_lΓ^i_{kj} + Γ^i_{km}Γ^m_{lj} − Γ^i_{lm}Γ^m_{kj}
  Tensor4<N> up;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k)
        for (int l = 0; l < N; ++l) {
          cplx s = dgam[k][i](l, j) - dgam[l][i](k, j);
          for (int m = 0; m < N; ++m)
            s += c.christoffel[i](k, m) * c.christoffel[m](l, j) - c.christoffel[i](l, m) * c.christoffel[m](k, j);
          up(i, j, k, l) = s;
        }
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k)
        for (int l = 0; l < N; ++l) {
          cplx s = 0.0;
          for (int m = 0; m < N; ++m) s += c.g(i, m) * up(m, j, k, l);
          c.riemann_low(i, j, k, l) = s;
        }
  c.ricci.setZero();
  for (int j = 0; j < N; ++j)
    for (int l = 0; l < N; ++l)
      for (int i = 0; i < N; ++i) c.ricci(j, l) += up(i, j, i, l);
  return c;
}

/// out(p,q,r,s) = Σ M(p,a)M(q,b)M(r,c)M(s,d) t(a,b,c,d).
template <int N>
Tensor4<N> transform4(const Tensor4<N>& t, const Mat<cplx, N>& M) {
  Tensor4<N> cur = t, nxt;
  for (int pass = 0; pass < 4; ++pass) {
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b)
        for (int c = 0; c < N; ++c)
          for (int d = 0; d < N; ++d) {
            int idx[4] = {a, b, c, d};
            const int out = idx[pass];
            cplx s = 0.0;
            for (int m = 0; m < N; ++m) {
              idx[pass] = m;
              s += M(out, m) * cur(idx[0], idx[1], idx[2], idx[3]);
            }
            nxt(a, b, c, d) = s;
          }
    cur = nxt;
  }
  return cur;
}

/// Components R_{abcd} = g(R(e_a, e_b)e_d, e_c) in the basis given by the columns of B.
template <int N>
Tensor4<N> riemann_in_basis(const Tensor4<N>& low, const Mat<cplx, N>& B) {
  Tensor4<N> t = transform4<N>(low, B.transpose());
  Tensor4<N> r;
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c)
        for (int d = 0; d < N; ++d) r(a, b, c, d) = t(c, d, a, b);
  return r;
}

}  // namespace twistor
