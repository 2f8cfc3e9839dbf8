// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <type_traits>

namespace twistor {

using cplx = std::complex<double>;

/// Forward-mode dual number a + b·ε with ε² = 0.  Nesting Dual<Dual<...>>
/// propagates mixed higher partials; the innermost type is std::complex<double>.
template <class T>
struct Dual;

template <class T>
struct dual_depth : std::integral_constant<int, 0> {};
template <class T>
struct dual_depth<Dual<T>> : std::integral_constant<int, 1 + dual_depth<T>::value> {};
template <class T>
inline constexpr int dual_depth_v = dual_depth<T>::value;

template <class U>
concept Constant = std::is_same_v<U, double> || std::is_same_v<U, cplx>;

template <class U>
concept Literal = std::is_arithmetic_v<U> || std::is_same_v<U, cplx>;

template <class U, class T>
concept Shallower = (dual_depth_v<U> >= 1) && (dual_depth_v<U> < dual_depth_v<T>);

template <class T>
struct Dual {
  T v{};
  T d{};

  Dual() : v(0.0), d(0.0) {}
  Dual(const T& value, const T& deriv) : v(value), d(deriv) {}
  template <Literal U>
  Dual(U c) : v(static_cast<std::conditional_t<std::is_arithmetic_v<U>, double, cplx>>(c)), d(0.0) {}
  template <Shallower<Dual<T>> U>
  Dual(const U& u) : v(u), d(0.0) {}

  Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
  Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
  Dual& operator*=(const Dual& o) { *this = *this * o; return *this; }
  Dual& operator/=(const Dual& o) { *this = *this / o; return *this; }

  friend Dual operator-(const Dual& a) { return {-a.v, -a.d}; }
  friend Dual operator+(const Dual& a) { return a; }
  friend Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.d + b.d}; }
  friend Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.d - b.d}; }
  friend Dual operator*(const Dual& a, const Dual& b) { return {a.v * b.v, a.v * b.d + a.d * b.v}; }
  friend Dual operator/(const Dual& a, const Dual& b) {
    T inv = T(1.0) / b.v;
    T q = a.v * inv;
    return {q, (a.d - q * b.d) * inv};
  }

  template <Constant U>
  friend Dual operator+(const Dual& a, U c) { return {a.v + c, a.d}; }
  template <Constant U>
  friend Dual operator+(U c, const Dual& a) { return {a.v + c, a.d}; }
  template <Constant U>
  friend Dual operator-(const Dual& a, U c) { return {a.v - c, a.d}; }
  template <Constant U>
  friend Dual operator-(U c, const Dual& a) { return {c - a.v, -a.d}; }
  template <Constant U>
  friend Dual operator*(const Dual& a, U c) { return {a.v * c, a.d * c}; }
  template <Constant U>
  friend Dual operator*(U c, const Dual& a) { return {a.v * c, a.d * c}; }
  template <Constant U>
  friend Dual operator/(const Dual& a, U c) { return {a.v / c, a.d / c}; }
  template <Constant U>
  friend Dual operator/(U c, const Dual& a) { return Dual(c) / a; }

  friend bool operator==(const Dual& a, const Dual& b) { return a.v == b.v && a.d == b.d; }
  friend bool operator!=(const Dual& a, const Dual& b) { return !(a == b); }
};

// ---- elementary functions; each one is the chain rule applied to the base ----

inline cplx conj(const cplx& z) { return std::conj(z); }
inline cplx re(const cplx& z) { return {z.real(), 0.0}; }
inline cplx im(const cplx& z) { return {z.imag(), 0.0}; }
inline double real0(const cplx& z) { return z.real(); }
inline cplx value0(const cplx& z) { return z; }

template <class T>
Dual<T> conj(const Dual<T>& a) { return {conj(a.v), conj(a.d)}; }
template <class T>
Dual<T> re(const Dual<T>& a) { return {re(a.v), re(a.d)}; }
template <class T>
Dual<T> im(const Dual<T>& a) { return {im(a.v), im(a.d)}; }
template <class T>
double real0(const Dual<T>& a) { return real0(a.v); }
template <class T>
cplx value0(const Dual<T>& a) { return value0(a.v); }

template <class T>
Dual<T> sqrt(const Dual<T>& a) {
  using std::sqrt;
  T s = sqrt(a.v);
  return {s, a.d / (s * 2.0)};
}
template <class T>
Dual<T> exp(const Dual<T>& a) {
  using std::exp;
  T e = exp(a.v);
  return {e, a.d * e};
}
template <class T>
Dual<T> log(const Dual<T>& a) {
  using std::log;
  return {log(a.v), a.d / a.v};
}
template <class T>
Dual<T> sin(const Dual<T>& a) {
  using std::cos;
  using std::sin;
  return {sin(a.v), a.d * cos(a.v)};
}
template <class T>
Dual<T> cos(const Dual<T>& a) {
  using std::cos;
  using std::sin;
  return {cos(a.v), -(a.d * sin(a.v))};
}
template <class T>
Dual<T> tan(const Dual<T>& a) {
  using std::cos;
  using std::tan;
  T c = cos(a.v);
  return {tan(a.v), a.d / (c * c)};
}
template <class T>
Dual<T> sinh(const Dual<T>& a) {
  using std::cosh;
  using std::sinh;
  return {sinh(a.v), a.d * cosh(a.v)};
}
template <class T>
Dual<T> cosh(const Dual<T>& a) {
  using std::cosh;
  using std::sinh;
  return {cosh(a.v), a.d * sinh(a.v)};
}
template <class T>
Dual<T> tanh(const Dual<T>& a) {
  using std::tanh;
  T t = tanh(a.v);
  return {t, a.d * (1.0 - t * t)};
}
template <class T>
Dual<T> pow(const Dual<T>& a, double p) {
  using std::pow;
  return {pow(a.v, p), a.d * (pow(a.v, p - 1.0) * p)};
}
template <class T>
Dual<T> pow(const Dual<T>& a, const Dual<T>& b) {
  return exp(b * log(a));
}

using D1 = Dual<cplx>;
using D2 = Dual<D1>;
using D3 = Dual<D2>;
using D4 = Dual<D3>;

/// Strip one dual level: value part / derivative part.
template <class T>
const T& value_part(const Dual<T>& a) { return a.v; }
template <class T>
const T& deriv_part(const Dual<T>& a) { return a.d; }

}  // namespace twistor

namespace Eigen {

template <class T>
struct NumTraits<twistor::Dual<T>> : GenericNumTraits<twistor::Dual<T>> {
  using Real = twistor::Dual<T>;
  using NonInteger = twistor::Dual<T>;
  using Nested = twistor::Dual<T>;
  using Literal = twistor::Dual<T>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2 * NumTraits<T>::ReadCost,
    AddCost = 2 * NumTraits<T>::AddCost,
    MulCost = 3 * NumTraits<T>::MulCost + NumTraits<T>::AddCost
  };
  static Real epsilon() { return Real(1e-16); }
  static Real dummy_precision() { return Real(1e-12); }
  static Real highest() { return Real(1e300); }
  static Real lowest() { return Real(-1e300); }
  static int digits10() { return 15; }
};

template <class T, class BinaryOp>
struct ScalarBinaryOpTraits<twistor::Dual<T>, double, BinaryOp> {
  using ReturnType = twistor::Dual<T>;
};
template <class T, class BinaryOp>
struct ScalarBinaryOpTraits<double, twistor::Dual<T>, BinaryOp> {
  using ReturnType = twistor::Dual<T>;
};
template <class T, class BinaryOp>
struct ScalarBinaryOpTraits<twistor::Dual<T>, twistor::cplx, BinaryOp> {
  using ReturnType = twistor::Dual<T>;
};
template <class T, class BinaryOp>
struct ScalarBinaryOpTraits<twistor::cplx, twistor::Dual<T>, BinaryOp> {
  using ReturnType = twistor::Dual<T>;
};

}  // namespace Eigen
