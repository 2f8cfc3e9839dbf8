// SPDX-License-Identifier: Apache-2.0
#include "twistor/flat_oracle.hpp"

#include <Eigen/LU>

namespace twistor {
namespace {

const cplx kI(0.0, 1.0);
using Mat8d = Eigen::Matrix<double, 8, 8>;

Mat8<cplx> flat_jacobian(const Vec8<cplx>& y) {
  Mat8<cplx> d;
  for (int k = 0; k < 8; ++k) d.col(k) = derivs(flat_map_real(seed(y, k)));
  return d;
}

/// dd^c of r̃ for the standard structure, by forward propagation.
Mat8<cplx> flat_ddc(const Vec8<cplx>& r) {
  const Mat8<cplx> J = standard_J().cast<cplx>();
  auto dc = [&J](const auto& z) {
    using V = std::decay_t<decltype(z)>;
    auto grad = gradient<8>([](const auto& q) { return flat_potential_real(q); }, z);
    return V(J.transpose() * grad * (-0.5));
  };
  return exterior_d1<8>(dc, r);
}

}  // namespace

WPoint flat_map(const Vec4d& x, const Vec2<cplx>& pi) {
  require_nonzero(norm_squared(pi).real());
  return flat_map_F<cplx>(x.cast<cplx>(), pi);
}

TwistorPoint flat_map_inverse(const WPoint& w) {
  Vec2<cplx> pl(w(2), w(3));
  require_nonzero(norm_squared(pl).real());
  Eigen::Matrix4d A;
  Eigen::Vector4d b;
  for (int a = 0; a < 4; ++a) {
    Vec2<cplx> col = soldering<cplx>()[a] * pl;
    A(0, a) = col(0).real();
    A(1, a) = col(0).imag();
    A(2, a) = col(1).real();
    A(3, a) = col(1).imag();
  }
  b << w(0).real(), w(0).imag(), w(1).real(), w(1).imag();
  TwistorPoint p;
  p.x = A.partialPivLu().solve(b);
  p.pi = raise(pl);
  return p;
}

Mat8d flat_J() {
  // w'⁰ = w̄¹: (a, b) ↦ (a₁, −b₁); w'¹ = −w̄⁰: (−a₀, b₀); likewise for (2, 3).
  Mat8d j = Mat8d::Zero();
  for (int k = 0; k < 4; k += 2) {
    const int p = 2 * k, q = 2 * (k + 1);
    j(p, q) = 1.0;
    j(p + 1, q + 1) = -1.0;
    j(q, p) = -1.0;
    j(q + 1, p + 1) = 1.0;
  }
  return j;
}

Mat8d standard_J() {
  Mat8d j = Mat8d::Zero();
  for (int k = 0; k < 4; ++k) {
    j(2 * k + 1, 2 * k) = 1.0;
    j(2 * k, 2 * k + 1) = -1.0;
  }
  return j;
}

Mat8d flat_ambient_metric() {
  Mat8d g = Mat8d::Zero();
  const double s = std::sqrt(2.0);
  for (auto [a, b] : {std::pair{0, 4}, std::pair{1, 5}, std::pair{2, 6}, std::pair{3, 7}}) {
    g(a, b) = s;
    g(b, a) = s;
  }
  return g;
}

Mat8d flat_kahler_form() { return Mat8d(-flat_ambient_metric() * standard_J()); }

double flat_potential(const WPoint& w) { return flat_potential_real<cplx>(w_to_real<cplx>(w)).real(); }

Vec8<cplx> flat_tau(const WPoint& w) {
  Vec4<cplx> c;  // coefficients of dW⁰ … dW³
  c << -w(3), w(2), -w(1), w(0);
  c /= std::sqrt(2.0);
  Vec8<cplx> t;
  for (int k = 0; k < 4; ++k) {
    t(2 * k) = c(k);
    t(2 * k + 1) = c(k) * kI;
  }
  return t;
}

VerificationReport flat_oracle_check(const Compactification& c, const std::vector<TwistorPoint>& pts,
                                     double tol_metric, double tol_structure) {
  VerificationReport rep;
  rep.suite = "flat-oracle";
  rep.geometry = c.compact.name;
  TotalSpace amb = TotalSpace::ambient(c);
  const Mat8<cplx> G = flat_ambient_metric().cast<cplx>();
  const Mat8<cplx> Jf = flat_J().cast<cplx>();
  const Mat8<cplx> Js = standard_J().cast<cplx>();
  const Mat8<cplx> Om = flat_kahler_form().cast<cplx>();
  Residual metric, jres, hol, pot, pot_formula, tau, trip, slice, kahler, kahler_pull, jsq;
  for (const auto& p : pts) {
    Vec8<cplx> y = p.coords();
    Vec8<cplx> wr = flat_map_real(y);
    WPoint w;
    for (int k = 0; k < 4; ++k) w(k) = cplx(wr(2 * k).real(), wr(2 * k + 1).real());
    Mat8<cplx> D = flat_jacobian(y);
    metric.add(max_abs(D.transpose() * G * D - amb.metric(y)));
    jres.add(max_abs(D * amb.structure_J(y) - Jf * D));
    Mat8<cplx> I = amb.structure_I(y);
    Mat8<cplx> P0 = (Mat8<cplx>::Identity() + kI * I) * 0.5;  // projector onto the −i eigenspace of 𝕀
    hol.add(max_abs((Js + kI * Mat8<cplx>::Identity()) * D * P0));
    const double rt = flat_potential(w);
    pot.add(std::abs(rt - amb.potential(y).real()));
    pot_formula.add(std::abs(rt - norm_squared(p.pi).real() * p.x(0)));
    tau.add(max_abs(D.transpose() * flat_tau(w) - amb.tau(y)));
    TwistorPoint back = flat_map_inverse(w);
    trip.add(std::max((back.x - p.x).norm(), (back.pi - p.pi).norm()));
    TwistorPoint s = p;
    s.x(0) = 0.0;
    slice.add(std::abs(flat_potential(flat_map(s.x, s.pi))));
    kahler.add(max_abs(flat_ddc(wr) - Om));
    kahler_pull.add(max_abs(D.transpose() * Om * D - amb.omega_J(y)));
  }
  jsq.add(max_abs(Jf * Jf + Mat8<cplx>::Identity()));
  rep.checks.push_back(metric.record("metric-pullback", "Thm main-theorem", tol_metric));
  rep.checks.push_back(jres.record("J-pushforward", "Prop J-flat", tol_structure));
  rep.checks.push_back(jsq.record("J-squared", "Prop J-flat", 1e-15));
  rep.checks.push_back(hol.record("F-holomorphic", "Sec flat-case", tol_structure));
  rep.checks.push_back(pot.record("potential-pullback", "Eq potential-r", tol_structure));
  rep.checks.push_back(pot_formula.record("potential-x0", "Eq potential-r", tol_structure));
  rep.checks.push_back(tau.record("tau-pullback", "Eq tau", tol_structure));
  rep.checks.push_back(trip.record("round-trip", "Eq A-property", 1e-12));
  rep.checks.push_back(slice.record("slice-hyperquadric", "Sec flat-case", 1e-12));
  rep.checks.push_back(kahler.record("kahler-form", "Eq omega-J-flat", 1e-12));
  rep.checks.push_back(kahler_pull.record("kahler-form-pullback", "Eq omega-J-flat", tol_metric));
  CheckRecord sig;
  auto sg = signature(Eigen::MatrixXd(flat_ambient_metric()));
  sig.id = "signature";
  sig.anchor = "Thm main-theorem";
  sig.samples = 1;
  sig.pass = sg == std::pair{4, 4};
  sig.max_residual = sig.pass ? 0.0 : 1.0;
  sig.tolerance = 0.5;
  sig.note = "(" + std::to_string(sg.first) + "," + std::to_string(sg.second) + ")";
  rep.checks.push_back(sig);
  return rep;
}

}  // namespace twistor
