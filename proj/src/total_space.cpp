// SPDX-License-Identifier: Apache-2.0
#include "twistor/total_space.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace twistor {
namespace {

const cplx kI(0.0, 1.0);

Mat8<cplx> identity8() { return Mat8<cplx>::Identity(); }

/// Projector onto the −i eigenspace of a complex structure (its (0,1) part).
Mat8<cplx> proj01(const Mat8<cplx>& j) { return (identity8() + kI * j) * 0.5; }
Mat8<cplx> proj10(const Mat8<cplx>& j) { return (identity8() - kI * j) * 0.5; }

/// (α∧β)(a,b,c) for a 1-form α and a 2-form β.
double wedge12_diff(const Vec8<cplx>& a1, const Mat8<cplx>& b1, double s1, const Vec8<cplx>& a2,
                    const Mat8<cplx>& b2, double s2) {
  double m = 0.0;
  for (int a = 0; a < 8; ++a)
    for (int b = a + 1; b < 8; ++b)
      for (int c = b + 1; c < 8; ++c) {
        cplx u = a1(a) * b1(b, c) - a1(b) * b1(a, c) + a1(c) * b1(a, b);
        cplx v = a2(a) * b2(b, c) - a2(b) * b2(a, c) + a2(c) * b2(a, b);
        m = std::max(m, std::abs(s1 * u - s2 * v));
      }
  return m;
}

double wedge12_max(const Vec8<cplx>& a1, const Mat8<cplx>& b1) {
  return wedge12_diff(a1, b1, 1.0, a1, b1, 0.0);
}

CheckRecord signature_record(const Mat8<cplx>& g, double lambda, const std::string& anchor) {
  auto [p, q] = signature(real_part(g));
  const bool want_definite = lambda > 0.0;
  const bool ok = want_definite ? (p == 8 && q == 0) : (p == 4 && q == 4);
  CheckRecord c;
  c.id = "signature";
  c.anchor = anchor;
  c.samples = 1;
  c.max_residual = ok ? 0.0 : 1.0;
  c.tolerance = 0.5;
  c.pass = ok;
  c.note = "(" + std::to_string(p) + "," + std::to_string(q) + ")";
  return c;
}

VerificationReport new_report(const std::string& suite, const TotalSpace& ts) {
  VerificationReport rep;
  rep.suite = suite;
  rep.geometry = ts.base().name;
  return rep;
}

/// Moves x along x⁰ by Newton steps until r(x) = target.
Vec4d solve_r(const ScalarField<4>& r, Vec4d x, double target) {
  for (int it = 0; it < 50; ++it) {
    Vec4<cplx> xc = x.cast<cplx>();
    double v = r(xc).real() - target;
    if (std::abs(v) < 1e-15) break;
    double d = derivs(r(seed(xc, 0))).real();
    if (std::abs(d) < 1e-14) break;
    x(0) -= v / d;
  }
  return x;
}

}  // namespace

std::pair<int, int> signature(const Eigen::MatrixXd& g, double zero_tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (g + g.transpose()));
  const Eigen::VectorXd ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  int p = 0, q = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > zero_tol * scale) ++p;
    else if (ev(i) < -zero_tol * scale) ++q;
  }
  return {p, q};
}

std::vector<TwistorPoint> sample_twistor_points(const Geometry4& geom, int count, std::uint64_t seed,
                                                const ScalarField<4>* r_of, double r_min) {
  auto xs = sample_points(geom, count, seed, r_of, r_min);
  auto ps = sample_spinors(count, seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<TwistorPoint> out;
  for (std::size_t i = 0; i < xs.size(); ++i) out.push_back({xs[i], ps[i]});
  return out;
}

TotalSpace TotalSpace::over(const Geometry4& base, double tol) {
  Vec4d center = 0.5 * (base.lo + base.hi);
  CurvatureSpinors cs = curvature_spinors(base, center);
  if (cs.psi_tilde.max_abs() > tol || cs.phi.max_abs() > tol)
    throw Error(ErrorKind::NotASDEinstein, base.name + " fails the ASD-Einstein precondition");
  if (std::abs(cs.lambda) < 1e-12) throw Error(ErrorKind::ZeroLambda, base.name + " has Λ = 0");
  return TotalSpace(base, cs.lambda);
}

TotalSpace TotalSpace::ambient(const Compactification& c) { return TotalSpace(c.compact, c.lambda, c.r); }

TotalSpace TotalSpace::ambient(const Compactification& c, const ScalarField<4>& r, const Geometry4& compact) {
  return TotalSpace(compact, c.lambda, r);
}

// ---------------------------------------------------------------------------

VerificationReport integrability_check(const TotalSpace& ts, const std::vector<TwistorPoint>& pts,
                                       double tol_alg, double tol_nij) {
  VerificationReport rep = new_report("integrability", ts);
  Residual i2, j2, k2, ij, alpha, fiber01, hor, coframe, nI, nJ;
  auto fI = [&ts](const auto& z) { return ts.structure_I(z); };
  auto fJ = [&ts](const auto& z) { return ts.structure_J(z); };
  for (const auto& p : pts) {
    Vec8<cplx> y = p.coords();
    Mat8<cplx> I = ts.structure_I(y), J = ts.structure_J(y), K = I * J;
    i2.add(max_abs(I * I + identity8()));
    j2.add(max_abs(J * J + identity8()));
    k2.add(max_abs(K * K + identity8()));
    ij.add(max_abs(I * J + J * I));
    auto L = ts.local(y);
    Mat<cplx, 4, 2> ap = alpha_plane(p.pi);
    double ra = 0.0;
    for (int k = 0; k < 2; ++k) {
      Vec8<cplx> w = L.basis.leftCols<4>() * ap.col(k);
      ra = std::max(ra, max_abs(I * w + kI * w));
    }
    alpha.add(ra);
    double rf = 0.0;
    for (int k = 0; k < 2; ++k) {
      Vec8<cplx> w = Vec8<cplx>::Zero();
      w(4 + 2 * k) = 1.0;
      w(5 + 2 * k) = kI;
      rf = std::max(rf, max_abs(I * w + kI * w));
    }
    fiber01.add(rf);
    Mat8<cplx> dp = delta_pi_coframe(L.fd, p.pi);
    hor.add(max_abs(dp.block<4, 8>(4, 0) * L.basis.leftCols<4>()));
    double rc = 0.0;
    for (int k = 0; k < 2; ++k) rc = std::max(rc, max_abs(dp.row(4 + k).transpose() - complex_row(L.cobasis, k)));
    coframe.add(rc);
    nI.add(max_abs(nijenhuis<8>(fI, y)));
    nJ.add(max_abs(nijenhuis<8>(fJ, y)));
  }
  rep.checks.push_back(i2.record("I-squared", "Sec def-I", tol_alg));
  rep.checks.push_back(j2.record("J-squared", "Sec def-J", tol_alg));
  rep.checks.push_back(k2.record("K-squared", "Thm J-parallel", tol_alg));
  rep.checks.push_back(ij.record("IJ-anticommute", "Eq I-J", tol_alg));
  rep.checks.push_back(alpha.record("alpha-lift-01", "Sec def-I", tol_alg));
  rep.checks.push_back(fiber01.record("fiber-01", "Sec def-I", tol_alg));
  rep.checks.push_back(hor.record("delta-pi-horizontal", "Eq d-delta", tol_alg));
  rep.checks.push_back(coframe.record("delta-pi-coframe", "Eq d-delta", tol_alg));
  rep.checks.push_back(nI.record("nijenhuis-I", "Thm I-integrable", tol_nij));
  rep.checks.push_back(nJ.record("nijenhuis-J", "Thm J-integrable", tol_nij));
  return rep;
}

VerificationReport kahler_potential_check(const TotalSpace& ts, const std::vector<TwistorPoint>& pts, double tol,
                                          double tol_alg) {
  VerificationReport rep = new_report("kahler-potential", ts);
  Residual dtau, wjf, pot, wjreal, wjinv, dwj, tauE, euler, w20, nondeg, nonvan, sym, compI, compJ, forms, vert,
      horiz, orth;
  auto phi = [&ts](const auto& z) { return ts.potential(z); };
  auto fwj = [&ts](const auto& z) { return ts.omega_J(z); };
  Mat8<cplx> last_g = Mat8<cplx>::Identity();
  for (const auto& p : pts) {
    Vec8<cplx> y = p.coords();
    Mat8<cplx> I = ts.structure_I(y), J = ts.structure_J(y);
    Mat8<cplx> W = ts.omega(y), Wd = ts.omega_d(y), WJ = ts.omega_J(y);
    if (!ts.is_ambient()) {
      dtau.add(max_abs(Wd - W));
      wjf.add(max_abs(WJ - ts.omega_J_formula(y)));
    }
    pot.add(max_abs(ts.ddc(phi, y) - WJ));
    wjreal.add(WJ.imag().cwiseAbs().maxCoeff());
    wjinv.add(max_abs(I.transpose() * WJ * I - WJ));
    dwj.add(max_abs(exterior_d2<8>(fwj, y)));
    Vec8<cplx> tau = ts.tau(y), E = ts.euler(y);
    tauE.add(std::abs(tau.dot(E)));
    Vec8<cplx> Ew = Wd.transpose() * E;  // (E⌟ω̃)_a = Σ_d E^d ω̃_{da}
    euler.add(wedge12_diff(Ew, Wd, 2.0, tau, Wd, 4.0));
    double tw = wedge12_max(tau, Wd);
    nonvan.add(tw > 0.0 ? 1.0 / tw : std::numeric_limits<double>::infinity());
    w20.add(max_abs(proj01(I).transpose() * W));
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd{Eigen::MatrixXcd(W)};
    auto sv = svd.singularValues();
    nondeg.add(sv(3) > 0.0 ? sv(0) / sv(3) : std::numeric_limits<double>::infinity());
    Mat8<cplx> G = ts.metric(y);
    last_g = G;
    sym.add(max_abs(G - G.transpose()));
    compI.add(max_abs(I.transpose() * G * I - G));
    compJ.add(max_abs(J.transpose() * G * J - G));
    if (!ts.is_ambient()) {
      forms.add(max_abs(ts.metric_from_forms(y) - G));
      auto L = ts.local(y);
      Mat8<cplx> Gb = L.basis.transpose() * G * L.basis;
      vert.add(max_abs(Gb.block<4, 4>(4, 4) - 2.0 * Mat4<cplx>::Identity()));
      horiz.add(max_abs(Gb.block<4, 4>(0, 0) - ts.lambda() * norm_squared(p.pi) * Mat4<cplx>::Identity()));
      orth.add(max_abs(Gb.block<4, 4>(0, 4)));
    }
  }
  if (!ts.is_ambient()) {
    rep.checks.push_back(dtau.record("d-tau-omega", "Eq omega", 1e-6));
    rep.checks.push_back(wjf.record("omegaJ-formula", "Eq omega-J", tol_alg));
  }
  rep.checks.push_back(pot.record("potential", "Thm thm-potential", tol));
  rep.checks.push_back(wjreal.record("omegaJ-real", "Thm thm-potential", tol_alg));
  rep.checks.push_back(wjinv.record("omegaJ-I-invariant", "Thm thm-potential", tol_alg));
  rep.checks.push_back(dwj.record("d-omegaJ", "Thm thm-potential", tol));
  rep.checks.push_back(tauE.record("tau-euler", "Prop canonical-bundle", tol_alg));
  rep.checks.push_back(euler.record("euler-identity", "Prop canonical-bundle", 1e-6));
  CheckRecord nv = nonvan.record("tau-dtau-nonvanishing", "Prop canonical-bundle", 1e6);
  nv.note = "residual = 1/max|τ̃∧dτ̃|";
  rep.checks.push_back(nv);
  rep.checks.push_back(w20.record("omega-2-0", "Eq omega", 1e-8));
  CheckRecord nd = nondeg.record("omega-nondegenerate", "Thm J-parallel", 1e8);
  nd.note = "residual = σ₁/σ₄ of ω̃";
  rep.checks.push_back(nd);
  rep.checks.push_back(sym.record("metric-symmetric", "Eq wt-g", tol_alg));
  rep.checks.push_back(compI.record("metric-I-compatible", "Eq wt-g", tol_alg));
  rep.checks.push_back(compJ.record("metric-J-compatible", "Eq wt-g", tol_alg));
  if (!ts.is_ambient()) {
    rep.checks.push_back(forms.record("metric-from-forms", "Eq wt-g", tol_alg));
    rep.checks.push_back(vert.record("vertical-block", "Eq wt-g", tol_alg));
    rep.checks.push_back(horiz.record("horizontal-block", "Eq wt-g", tol_alg));
    rep.checks.push_back(orth.record("block-orthogonal", "Eq wt-g", tol_alg));
  }
  rep.checks.push_back(signature_record(last_g, ts.lambda(), "Eq wt-g"));
  return rep;
}

VerificationReport hyperkahler_check(const TotalSpace& ts, const std::vector<TwistorPoint>& pts, double tol) {
  VerificationReport rep = new_report("hyperkahler", ts);
  Residual nJ, nI, nW, ric, hh, hm;
  auto fg = [&ts](const auto& z) { return ts.metric(z); };
  auto fI = [&ts](const auto& z) { return ts.structure_I(z); };
  auto fJ = [&ts](const auto& z) { return ts.structure_J(z); };
  auto fW = [&ts](const auto& z) { return ts.omega(z); };
  auto phi = [&ts](const auto& z) { return ts.potential(z); };
  Mat8<cplx> last_g = Mat8<cplx>::Identity();
  for (const auto& p : pts) {
    Vec8<cplx> y = p.coords();
    CoordinateCurvature<8> cc = curvature_from_jet<8>(metric_jet_dual<8>(fg, y));
    const auto& Gam = cc.christoffel;
    last_g = cc.g;
    auto nabla_endo = [&](auto&& f) {
      Mat8<cplx> J = f(y);
      double m = 0.0;
      for (int k = 0; k < 8; ++k) {
        Mat8<cplx> dJ = partial<8>(f, y, k);
        Mat8<cplx> gk;
        for (int i = 0; i < 8; ++i)
          for (int l = 0; l < 8; ++l) gk(i, l) = Gam[i](k, l);  // Γ^i_{kl}
        Mat8<cplx> n = dJ + gk * J - J * gk;
        m = std::max(m, max_abs(n));
      }
      return m;
    };
    nJ.add(nabla_endo(fJ));
    nI.add(nabla_endo(fI));
    {
      Mat8<cplx> W = ts.omega(y);
      double m = 0.0;
      for (int k = 0; k < 8; ++k) {
        Mat8<cplx> dW = partial<8>(fW, y, k);
        Mat8<cplx> gk;
        for (int l = 0; l < 8; ++l)
          for (int i = 0; i < 8; ++i) gk(l, i) = Gam[l](k, i);  // Γ^l_{ki}
        m = std::max(m, max_abs(dW - gk.transpose() * W - W * gk));
      }
      nW.add(m);
    }
    ric.add(max_abs(cc.ricci));
    Vec8<cplx> dphi = gradient<8>(phi, y);
    Mat8<cplx> H = hessian<8>(phi, y);
    for (int k = 0; k < 8; ++k) H -= Gam[k] * dphi(k);
    auto L = ts.local(y);
    Mat4<cplx> Hh = L.basis.leftCols<4>().transpose() * H * L.basis.leftCols<4>();
    double n2 = norm_squared(p.pi).real();
    double scale = std::abs(ts.lambda()) * n2;
    if (ts.is_ambient()) {
      Vec4<cplx> xc = p.x.cast<cplx>();
      scale *= std::abs(ts.defining_function()(xc).real());
    }
    if (!ts.is_ambient()) hh.add(max_abs(Hh - ts.lambda() * n2 * Mat4<cplx>::Identity()));
    Mat8<cplx> I = ts.structure_I(y);
    hm.add(max_abs(proj10(I).transpose() * (H - cc.g) * proj01(I)));
    (void)scale;
  }
  rep.checks.push_back(nJ.record("nabla-J", "Thm J-parallel", tol));
  rep.checks.push_back(nI.record("nabla-I", "Thm J-parallel", tol));
  rep.checks.push_back(nW.record("nabla-omega", "Thm J-parallel", tol));
  rep.checks.push_back(ric.record("ricci-flat", "Thm J-parallel", tol));
  if (!ts.is_ambient()) rep.checks.push_back(hh.record("hessian-horizontal", "Lemma hessian1", tol));
  rep.checks.push_back(hm.record("hessian-mixed", "Lemma hessian2", tol));
  rep.checks.push_back(signature_record(last_g, ts.lambda(), "Eq wt-g"));
  return rep;
}

Tensor4<8> total_riemann_adapted(const TotalSpace& ts, const TwistorPoint& p, DerivMode mode) {
  auto fg = [&ts](const auto& z) { return ts.metric(z); };
  Vec8<cplx> y = p.coords();
  CoordinateCurvature<8> cc = curvature_from_jet<8>(metric_jet<8>(fg, y, mode));
  return riemann_in_basis<8>(cc.riemann_low, ts.local(y).basis);
}

VerificationReport curvature_formula_check(const TotalSpace& ts, const std::vector<TwistorPoint>& pts, double tol,
                                           double rel_tol, int fd_points) {
  VerificationReport rep = new_report("curvature-formula", ts);
  Residual nonhor, hor, horrel, full, fd, scaling;
  auto fg = [&ts](const auto& z) { return ts.metric(z); };
  int idx = 0;
  for (const auto& p : pts) {
    Vec8<cplx> y = p.coords();
    CoordinateCurvature<8> cc = curvature_from_jet<8>(metric_jet_dual<8>(fg, y));
    auto L = ts.local(y);
    Tensor4<8> R = riemann_in_basis<8>(cc.riemann_low, L.basis);
    Tensor4<4> wm = weyl_minus_from_spinor(curvature_spinors(ts.base(), p.x).psi);
    const double n2 = norm_squared(p.pi).real();
    double mn = 0.0, mh = 0.0, me = 0.0;
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 8; ++b)
        for (int c = 0; c < 8; ++c)
          for (int d = 0; d < 8; ++d) {
            if (a < 4 && b < 4 && c < 4 && d < 4) {
              cplx e = ts.lambda() * n2 * wm(a, b, c, d);
              me = std::max(me, std::abs(e));
              mh = std::max(mh, std::abs(R(a, b, c, d) - e));
            } else {
              mn = std::max(mn, std::abs(R(a, b, c, d)));
            }
          }
    nonhor.add(mn);
    hor.add(mh);
    if (me > 1e-6) horrel.add(mh / me);
    else full.add(std::max(mn, R.max_abs()));
    if (idx < fd_points) {
      CoordinateCurvature<8> cf = curvature_from_jet<8>(metric_jet_fd<8>(fg, y));
      double m = 0.0;
      for (std::size_t i = 0; i < cf.riemann_low.data.size(); ++i)
        m = std::max(m, std::abs(cf.riemann_low.data[i] - cc.riemann_low.data[i]));
      fd.add(m);
      TwistorPoint q = p;
      q.pi *= std::sqrt(2.0);
      Tensor4<8> R2 = total_riemann_adapted(ts, q);
      double ms = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          for (int c = 0; c < 4; ++c)
            for (int d = 0; d < 4; ++d) ms = std::max(ms, std::abs(R2(a, b, c, d) - 2.0 * R(a, b, c, d)));
      scaling.add(ms);
    }
    ++idx;
  }
  rep.checks.push_back(nonhor.record("nonhorizontal-zero", "Thm curvature-wt-g", tol));
  rep.checks.push_back(hor.record("horizontal-formula", "Thm curvature-wt-g", tol));
  if (horrel.count() > 0) rep.checks.push_back(horrel.record("horizontal-relative", "Thm curvature-wt-g", rel_tol));
  if (full.count() > 0) rep.checks.push_back(full.record("flat-total", "Thm curvature-wt-g", tol));
  rep.checks.push_back(fd.record("fd-crosscheck", "Thm curvature-wt-g", tol));
  rep.checks.push_back(scaling.record("fiber-scaling", "Thm curvature-wt-g", tol));
  return rep;
}

// ---------------------------------------------------------------------------

AmbientValues ambient_family(const TotalSpace& amb, const TwistorPoint& p) {
  if (!amb.is_ambient()) throw Error(ErrorKind::InvalidConfig, "ambient_family needs a defining function");
  Vec8<cplx> y = p.coords();
  AmbientValues v;
  v.metric = real_part(amb.metric(y));
  v.structure_I = real_part(amb.structure_I(y));
  v.structure_J = real_part(amb.structure_J(y));
  v.tau = amb.tau(y);
  v.potential = amb.potential(y).real();
  return v;
}

Geometry4 interior_metric(const Compactification& c) {
  ScalarField<4> r = c.r;
  ScalarField<4> ups([r](const auto& x) {
    using std::log;
    auto v = r(x);
    return decltype(v)(log(v * v) * (-0.5));
  });
  Geometry4 g = conformal_rescale(c.compact, ups, c.compact.name + "-interior");
  return g;
}

Mat8<cplx> RescaledAmbient::structure_I(const Vec8<cplx>& y) const {
  Mat8<cplx> C = conversion(y);
  return inverse(C) * space.structure_I(to_rescaled_frame(ups, y)) * C;
}
Mat8<cplx> RescaledAmbient::structure_J(const Vec8<cplx>& y) const {
  Mat8<cplx> C = conversion(y);
  return inverse(C) * space.structure_J(to_rescaled_frame(ups, y)) * C;
}
Mat8<cplx> RescaledAmbient::metric(const Vec8<cplx>& y) const {
  Mat8<cplx> C = conversion(y);
  return C.transpose() * space.metric(to_rescaled_frame(ups, y)) * C;
}

RescaledAmbient rescaled_ambient(const Compactification& c, const ScalarField<4>& ups) {
  Geometry4 compact = conformal_rescale(c.compact, ups, c.compact.name + "-rescaled");
  ScalarField<4> r = c.r, u = ups;
  ScalarField<4> rhat([r, u](const auto& x) {
    using std::exp;
    auto v = r(x);
    return decltype(v)(exp(u(x)) * v);
  });
  return RescaledAmbient{TotalSpace::ambient(c, rhat, compact), ups};
}

VerificationReport ambient_family_check(const Compactification& c, const std::vector<TwistorPoint>& pts, double tol,
                                        double tol_alg) {
  TotalSpace amb = TotalSpace::ambient(c);
  TotalSpace inner(interior_metric(c), c.lambda);
  VerificationReport rep = new_report("ambient-family", amb);
  Residual pot, hol, alg, comp, cross_g, cross_i, cross_j, rt, homog, iso, shrink, ric;
  auto phi = [&amb](const auto& z) { return amb.potential(z); };
  auto fg = [&amb](const auto& z) { return amb.metric(z); };
  const ScalarField<4>& r = c.r;
  int idx = 0;
  for (const auto& p : pts) {
    Vec8<cplx> y = p.coords();
    Vec4<cplx> xc = p.x.cast<cplx>();
    const double rv = r(xc).real();
    Mat8<cplx> I = amb.structure_I(y), J = amb.structure_J(y), G = amb.metric(y);
    pot.add(max_abs(amb.ddc(phi, y) - amb.omega_J(y)));
    hol.add(max_abs(proj01(I).transpose() * amb.tau(y)));
    alg.add(std::max({max_abs(I * I + identity8()), max_abs(J * J + identity8()), max_abs(I * J + J * I)}));
    comp.add(std::max(max_abs(I.transpose() * G * I - G), max_abs(J.transpose() * G * J - G)));
    if (std::abs(rv) >= 0.05) {
      ScalarField<4> rr = r;
      auto psi = [rr](const auto& z) {
        using std::sqrt;
        Vec4<std::decay_t<decltype(z(0))>> x = z.template head<4>();
        auto v = rr(x);
        auto s = sqrt(sqrt(v * v));
        auto out = z;
        out.template tail<4>() *= s;
        return out;
      };
      Mat8<cplx> D = jacobian8(psi, y);
      Vec8<cplx> yi = psi(y);
      const double sg = rv > 0 ? 1.0 : -1.0;
      cross_g.add(max_abs(sg * D.transpose() * inner.metric(yi) * D - G));
      cross_i.add(max_abs(D * I - inner.structure_I(yi) * D));
      cross_j.add(max_abs(D * J - inner.structure_J(yi) * D));
      rt.add(std::abs(sg * inner.potential(yi) - amb.potential(y)));
    }
    {
      TwistorPoint q = p;
      const cplx lam(0.7, -0.4);
      q.pi *= lam;
      homog.add(std::abs(amb.potential(q.coords()) - std::norm(lam) * amb.potential(y)));
      const double s = 1.3;
      ScalarField<4> cst([s](const auto& x) { return decltype(x(0))(std::log(s)); });
      Mat8<cplx> D = jacobian8([&cst](const auto& z) { return dilate(cst, z); }, y);
      iso.add(max_abs(D.transpose() * amb.metric(dilate(cst, y)) * D - s * s * G));
    }
    if (idx < 3) {
      CoordinateCurvature<8> cc = curvature_from_jet<8>(metric_jet_dual<8>(fg, y));
      ric.add(max_abs(cc.ricci));
    }
    if (idx == 0) {
      for (int k = 0; k <= 4; ++k)
        for (double sg : {1.0, -1.0}) {
          TwistorPoint q = p;
          q.x = solve_r(r, p.x, sg * 0.05 * std::pow(2.0, -k));
          Vec8<cplx> yq = q.coords();
          shrink.add(max_abs(amb.ddc(phi, yq) - amb.omega_J(yq)));
        }
    }
    ++idx;
  }
  rep.checks.push_back(pot.record("potential-r", "Eq potential-r", tol));
  rep.checks.push_back(hol.record("tau-r-holomorphic", "Eq tau", tol_alg));
  rep.checks.push_back(alg.record("quaternion-relations", "Thm main-theorem", tol_alg));
  rep.checks.push_back(comp.record("metric-compatible", "Thm main-theorem", tol_alg));
  rep.checks.push_back(cross_g.record("interior-metric-crossroute", "Thm main-theorem", 1e-6));
  rep.checks.push_back(cross_i.record("interior-I-crossroute", "Thm main-theorem", 1e-6));
  rep.checks.push_back(cross_j.record("interior-J-crossroute", "Thm main-theorem", 1e-6));
  rep.checks.push_back(rt.record("rtilde-dilation-identity", "Eq norm-r", 1e-12));
  rep.checks.push_back(homog.record("rtilde-homogeneity", "Thm main-theorem", 1e-12));
  rep.checks.push_back(iso.record("constant-dilation-homothety", "Prop dilation", 1e-6));
  rep.checks.push_back(shrink.record("boundary-approach", "Thm main-theorem", tol));
  rep.checks.push_back(ric.record("ricci-flat", "Thm main-theorem", 1e-4));
  return rep;
}

VerificationReport dilation_pushforward_check(const Compactification& c, const ScalarField<4>& ups,
                                              const std::vector<TwistorPoint>& pts, double tol) {
  TotalSpace amb = TotalSpace::ambient(c);
  RescaledAmbient hat = rescaled_ambient(c, ups);
  VerificationReport rep = new_report("dilation", amb);
  Residual pi, pj, pg;
  for (const auto& p : pts) {
    Vec8<cplx> y = p.coords();
    Mat8<cplx> D = jacobian8([&ups](const auto& z) { return dilate(ups, z); }, y);
    Vec8<cplx> yd = dilate(ups, y);
    Mat8<cplx> Ih = hat.structure_I(y), Jh = hat.structure_J(y);
    Mat8<cplx> I = amb.structure_I(yd), J = amb.structure_J(yd);
    pi.add(max_abs((I + kI * identity8()) * D * proj01(Ih)));
    pj.add(max_abs((J + kI * identity8()) * D * proj01(Jh)));
    pg.add(max_abs(D.transpose() * amb.metric(yd) * D - hat.metric(y)));
  }
  rep.checks.push_back(pi.record("I-eigenspace-pushforward", "Prop dilation", tol));
  rep.checks.push_back(pj.record("J-eigenspace-pushforward", "Prop dilation", tol));
  rep.checks.push_back(pg.record("metric-pullback", "Thm main-theorem", tol));
  return rep;
}

}  // namespace twistor
