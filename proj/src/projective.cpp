// SPDX-License-Identifier: Apache-2.0
#include "twistor/projective.hpp"

#include <Eigen/Eigenvalues>

namespace twistor {
namespace {

const cplx kI(0.0, 1.0);

CheckRecord signature_record6(const Mat6d& g, std::pair<int, int> want, const std::string& anchor) {
  auto sig = signature(Eigen::MatrixXd(g));
  CheckRecord c;
  c.id = "signature";
  c.anchor = anchor;
  c.samples = 1;
  c.pass = sig == want;
  c.max_residual = c.pass ? 0.0 : 1.0;
  c.tolerance = 0.5;
  c.note = "(" + std::to_string(sig.first) + "," + std::to_string(sig.second) + ")";
  return c;
}

/// Basis of T ℙ(S′) at q: projected horizontal lifts, then ∂/∂Re z, ∂/∂Im z.
Mat6<cplx> adapted_basis6(const TotalSpace& ts, const Vec6<cplx>& q, int chart) {
  Vec8<cplx> y = section(q, chart);
  auto L = ts.local(y);
  Mat<cplx, 6, 8> dq = quotient_jacobian(y, chart);
  Mat6<cplx> b = Mat6<cplx>::Zero();
  b.leftCols<4>() = dq * L.basis.leftCols<4>();
  b(4, 4) = 1.0;
  b(5, 5) = 1.0;
  return b;
}

/// (x, z) ↦ (x, 1/z).
template <class S>
Vec6<S> chart_transition(const Vec6<S>& q) {
  Vec6<S> out = q;
  S z = q(4) + q(5) * kI;
  S w = S(1.0) / z;
  out(4) = re(w);
  out(5) = im(w);
  return out;
}

double fs_coefficient(cplx z) { return 1.0 / std::pow(1.0 + std::norm(z), 2); }

struct BlockResiduals {
  double horizontal = 0.0, fiber = 0.0, offblock = 0.0;
};

BlockResiduals blocks(const Mat6<cplx>& gb, cplx z, double h_scale, double f_sign) {
  BlockResiduals r;
  r.horizontal = max_abs(gb.block<4, 4>(0, 0) - h_scale * Mat4<cplx>::Identity());
  r.fiber = max_abs(gb.block<2, 2>(4, 4) - f_sign * 2.0 * fs_coefficient(z) * Mat2<cplx>::Identity());
  r.offblock = max_abs(gb.block<4, 2>(0, 4));
  return r;
}

}  // namespace

Mat6d ke_metric(const TotalSpace& ts, const ProjectivePoint& q) {
  return six_metric(ts, q.coords(), q.chart, 1.0).real();
}

Mat6d ke_metric(const Geometry4& geom, const ProjectivePoint& q) { return ke_metric(TotalSpace::over(geom), q); }

Mat6d cheng_yau_metric(const Compactification& c, const ProjectivePoint& q, double margin) {
  Vec4<cplx> xc = q.x.cast<cplx>();
  if (std::abs(c.r(xc).real()) < margin)
    throw Error(ErrorKind::BoundaryPoint, "Cheng-Yau metric requested within the boundary margin");
  TotalSpace amb = TotalSpace::ambient(c);
  return six_metric(amb, q.coords(), q.chart, -1.0).real();
}

std::vector<ProjectivePoint> sample_projective_points(const Geometry4& geom, int count, std::uint64_t seed,
                                                      const ScalarField<4>* r_of, double r_min) {
  std::vector<ProjectivePoint> out;
  for (const auto& p : sample_twistor_points(geom, count, seed, r_of, r_min)) {
    ProjectivePoint q;
    q.x = p.x;
    q.z = p.pi(1) / p.pi(0);
    out.push_back(q);
  }
  return out;
}

VerificationReport ke_metric_check(const TotalSpace& ts, const std::vector<ProjectivePoint>& pts, double tol,
                                   double tol_fiber, double tol_einstein) {
  VerificationReport rep;
  rep.suite = "ke-metric";
  rep.geometry = ts.base().name;
  Residual hor, fib, off, form, chart, sym, einstein, cross;
  auto g6 = [&ts](const auto& q) { return six_metric(ts, q, 0, 1.0); };
  Mat6d last = Mat6d::Identity();
  for (const auto& p : pts) {
    Vec6<cplx> q = p.coords();
    Mat6<cplx> G = g6(q);
    last = G.real();
    sym.add(max_abs(G - G.transpose()));
    Mat6<cplx> B = adapted_basis6(ts, q, 0);
    BlockResiduals br = blocks(B.transpose() * G * B, p.z, ts.lambda(), 1.0);
    hor.add(br.horizontal);
    fib.add(br.fiber);
    off.add(br.offblock);
    Mat6<cplx> W = six_form(ts, q, 0, 1.0);
    Mat2<cplx> fs;
    const double c = 2.0 * fs_coefficient(p.z);
    fs << 0.0, c, -c, 0.0;
    form.add(max_abs(W.block<2, 2>(4, 4) - fs));
    if (std::abs(p.z) > 1e-3) {
      Vec6<cplx> q1 = chart_transition(q);
      Mat6<cplx> T;
      for (int k = 0; k < 6; ++k) T.col(k) = derivs(chart_transition(seed(q, k)));
      Mat6<cplx> G1 = six_metric(ts, q1, 1, 1.0);
      chart.add(max_abs(T.transpose() * G1 * T - G));
    }
    CoordinateCurvature<6> cc = curvature_from_jet<6>(metric_jet_dual<6>(g6, q));
    const Mat6<cplx> ric_kahler = -cc.ricci;  // i∂∂̄ log|det| sign: the negative of the Riemannian Ricci
    einstein.add(max_abs(ric_kahler + 4.0 * G));
    if (cross.count() < 2) {
      CoordinateCurvature<6> cf = curvature_from_jet<6>(metric_jet_fd<6>(g6, q));
      cross.add(max_abs(cf.ricci - cc.ricci));
    }
  }
  rep.checks.push_back(sym.record("metric-symmetric", "Thm Kahler-Einstein", tol_fiber));
  rep.checks.push_back(hor.record("horizontal-block", "Thm Kahler-Einstein", tol));
  rep.checks.push_back(off.record("off-block", "Thm Kahler-Einstein", tol));
  rep.checks.push_back(fib.record("fiber-block", "Thm Kahler-Einstein", tol_fiber));
  rep.checks.push_back(form.record("fiber-fs-form", "Thm Kahler-Einstein", tol_fiber));
  rep.checks.push_back(chart.record("chart-independence", "Thm Kahler-Einstein", tol_fiber));
  CheckRecord e = einstein.record("einstein-constant", "Eq MA-descend", tol_einstein);
  e.note = "Ric taken with the i∂∂̄log|det g| sign";
  rep.checks.push_back(e);
  rep.checks.push_back(cross.record("ricci-fd-crosscheck", "Eq MA-descend", tol_einstein));
  rep.checks.push_back(signature_record6(last, ts.lambda() > 0 ? std::pair{6, 0} : std::pair{2, 4},
                                         "Thm Kahler-Einstein"));
  return rep;
}

VerificationReport ma_descent_check(const TotalSpace& ts, const std::vector<TwistorPoint>& pts, double tol) {
  VerificationReport rep;
  rep.suite = "ma-descent";
  rep.geometry = ts.base().name;
  Residual ma, scale;
  auto phi = [&ts](const auto& z) { return ts.potential(z); };
  const double c = 1.7;
  auto cphi = [&ts, c](const auto& z) { return decltype(ts.potential(z))(ts.potential(z) * c); };
  for (const auto& p : pts) {
    Vec8<cplx> y = p.coords();
    Mat8<cplx> wg = ts.ddc(phi, y);
    Mat8<cplx> wke = log_potential_form(ts, y, 1.0);
    cplx p0 = p.pi(0);
    Vec8<cplx> dz = Vec8<cplx>::Zero();
    dz(4) = 1.0;
    dz(5) = kI;
    Vec8<cplx> dzb = conj(dz);
    Mat8<cplx> A = (dz * dzb.transpose() - dzb * dz.transpose()) * (kI / std::norm(p0));
    Eigen::Matrix<D1, Eigen::Dynamic, Eigen::Dynamic> M(8, 8);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) M(i, j) = D1(wke(i, j), A(i, j));
    const cplx lhs = 24.0 * pfaffian<cplx>(Eigen::MatrixXcd(wg));
    const cplx n2 = norm_squared(p.pi);
    const cplx rhs = 4.0 * std::pow(n2, 4) * 6.0 * pfaffian<D1>(M).d;
    ma.add(std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300));
    const cplx lc = 24.0 * pfaffian<cplx>(Eigen::MatrixXcd(ts.ddc(cphi, y)));
    scale.add(std::abs(lc - std::pow(c, 4) * lhs) / std::max(std::abs(lhs), 1e-300));
  }
  rep.checks.push_back(ma.record("ma-descent-relative", "Eq MA-descend", tol));
  rep.checks.push_back(scale.record("potential-scaling", "Eq MA-descend", 1e-10));
  return rep;
}

VerificationReport cheng_yau_check(const Compactification& c, const ScalarField<4>& ups,
                                   const std::vector<ProjectivePoint>& pts, double tol, double tol_r) {
  TotalSpace amb = TotalSpace::ambient(c);
  TotalSpace inner(interior_metric(c), c.lambda);
  RescaledAmbient hat = rescaled_ambient(c, ups);
  VerificationReport rep;
  rep.suite = "cheng-yau";
  rep.geometry = c.compact.name;
  Residual hor, fib, off, same, rind, sym;
  Mat6d last = Mat6d::Identity();
  for (const auto& p : pts) {
    Vec4<cplx> xc = p.x.cast<cplx>();
    if (std::abs(c.r(xc).real()) < 0.05)
      throw Error(ErrorKind::BoundaryPoint, "Cheng-Yau sample within the boundary margin");
    Vec6<cplx> q = p.coords();
    Mat6<cplx> G = six_metric(amb, q, p.chart, -1.0);
    last = G.real();
    sym.add(max_abs(G - G.transpose()));
    Mat6<cplx> Gi = six_metric(inner, q, p.chart, -1.0);
    same.add(max_abs(G - Gi));
    Mat6<cplx> B = adapted_basis6(inner, q, p.chart);
    BlockResiduals br = blocks(B.transpose() * Gi * B, p.z, -c.lambda, -1.0);
    hor.add(br.horizontal);
    fib.add(br.fiber);
    off.add(br.offblock);
    rind.add(max_abs(six_metric(hat.space, q, p.chart, -1.0) - G));
  }
  rep.checks.push_back(sym.record("metric-symmetric", "Thm cheng-yau", tol_r));
  rep.checks.push_back(same.record("log-rtilde-vs-log-pi", "Thm cheng-yau", tol_r));
  rep.checks.push_back(hor.record("horizontal-block", "Thm cheng-yau", tol));
  rep.checks.push_back(off.record("off-block", "Thm cheng-yau", tol));
  rep.checks.push_back(fib.record("fiber-block", "Thm cheng-yau", tol));
  rep.checks.push_back(rind.record("r-independence", "Thm cheng-yau", tol_r));
  CheckRecord s = signature_record6(last, {4, 2}, "Thm cheng-yau");
  s.note += " real; Hermitian (2,1)";
  rep.checks.push_back(s);
  return rep;
}

}  // namespace twistor
