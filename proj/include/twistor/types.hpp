// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "twistor/dual.hpp"

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <string>
#include <tuple>

namespace twistor {

template <class S, int R, int C = R>
using Mat = Eigen::Matrix<S, R, C>;
template <class S, int N>
using Vec = Eigen::Matrix<S, N, 1>;

template <class S> using Mat2 = Mat<S, 2>;
template <class S> using Mat4 = Mat<S, 4>;
template <class S> using Mat8 = Mat<S, 8>;
template <class S> using Vec2 = Vec<S, 2>;
template <class S> using Vec4 = Vec<S, 4>;
template <class S> using Vec8 = Vec<S, 8>;

using Mat4d = Eigen::Matrix4d;
using Vec4d = Eigen::Vector4d;

enum class ErrorKind {
  ZeroSpinor,
  DegenerateMetric,
  NotASDEinstein,
  ZeroLambda,
  NotNull,
  DegenerateDefiningFunction,
  BoundaryPoint,
  UnknownSuite,
  UnknownGeometry,
  InvalidConfig,
  IoFailure,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Lift a point of the scalar family one dual level up with zero derivative.
template <class S, int R, int C>
Mat<Dual<S>, R, C> lift(const Mat<S, R, C>& m) {
  return m.unaryExpr([](const S& s) { return Dual<S>(s, S(0.0)); });
}

/// Lift and seed coordinate k with unit derivative.
template <class S, int N>
Vec<Dual<S>, N> seed(const Vec<S, N>& p, int k) {
  Vec<Dual<S>, N> q = lift(p);
  q(k).d = S(1.0);
  return q;
}

template <class S, int R, int C>
Mat<S, R, C> values(const Mat<Dual<S>, R, C>& m) {
  return m.unaryExpr([](const Dual<S>& z) { return z.v; });
}
template <class S, int R, int C>
Mat<S, R, C> derivs(const Mat<Dual<S>, R, C>& m) {
  return m.unaryExpr([](const Dual<S>& z) { return z.d; });
}
template <class S>
S values(const Dual<S>& z) { return z.v; }
template <class S>
S derivs(const Dual<S>& z) { return z.d; }

template <class S, int R, int C>
Eigen::Matrix<double, R, C> real0(const Mat<S, R, C>& m) {
  return m.unaryExpr([](const S& z) { return real0(z); });
}
template <class S, int R, int C>
Eigen::Matrix<cplx, R, C> value0(const Mat<S, R, C>& m) {
  return m.unaryExpr([](const S& z) { return value0(z); });
}
template <class S, int R, int C>
Mat<S, R, C> conj(const Mat<S, R, C>& m) {
  return m.unaryExpr([](const S& z) { return conj(z); });
}
template <class S, int R, int C>
Mat<S, R, C> re(const Mat<S, R, C>& m) {
  return m.unaryExpr([](const S& z) { return re(z); });
}
template <class S, int R, int C>
Mat<S, R, C> im(const Mat<S, R, C>& m) {
  return m.unaryExpr([](const S& z) { return im(z); });
}
template <class S, int R, int C>
Mat<S, R, C> from_real(const Eigen::Matrix<double, R, C>& m) {
  return m.unaryExpr([](double z) { return S(z); });
}

/// Type-erased function defined simultaneously for every scalar of the family
/// (complex, and one to four nested dual levels).
template <template <class> class Sig>
class FamilyFunction {
 public:
  FamilyFunction() = default;
  template <class F>
  explicit FamilyFunction(F f)
      : fs_(std::function<Sig<cplx>>(f), std::function<Sig<D1>>(f), std::function<Sig<D2>>(f),
            std::function<Sig<D3>>(f), std::function<Sig<D4>>(f)) {}

  template <class S>
  const std::function<Sig<S>>& get() const {
    return std::get<std::function<Sig<S>>>(fs_);
  }
  explicit operator bool() const { return static_cast<bool>(std::get<0>(fs_)); }

 private:
  std::tuple<std::function<Sig<cplx>>, std::function<Sig<D1>>, std::function<Sig<D2>>,
             std::function<Sig<D3>>, std::function<Sig<D4>>>
      fs_;
};

template <int N>
struct ScalarSig {
  template <class S>
  using type = S(const Vec<S, N>&);
};
template <int N>
struct MatrixSig {
  template <class S>
  using type = Mat<S, N>(const Vec<S, N>&);
};

/// Scalar function on an N-dimensional chart.
template <int N>
class ScalarField {
 public:
  ScalarField() = default;
  template <class F>
  explicit ScalarField(F f) : fn_(f) {}
  template <class S>
  S operator()(const Vec<S, N>& x) const { return fn_.template get<S>()(x); }
  explicit operator bool() const { return static_cast<bool>(fn_); }

 private:
  FamilyFunction<ScalarSig<N>::template type> fn_;
};

/// Symmetric matrix function on an N-dimensional chart (metric components).
template <int N>
class MatrixField {
 public:
  MatrixField() = default;
  template <class F>
  explicit MatrixField(F f) : fn_(f) {}
  template <class S>
  Mat<S, N> operator()(const Vec<S, N>& x) const { return fn_.template get<S>()(x); }
  explicit operator bool() const { return static_cast<bool>(fn_); }

 private:
  FamilyFunction<MatrixSig<N>::template type> fn_;
};

}  // namespace twistor
