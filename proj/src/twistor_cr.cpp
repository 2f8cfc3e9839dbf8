// SPDX-License-Identifier: Apache-2.0
#include "twistor/twistor_cr.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <random>

namespace twistor {
namespace {

const cplx kI(0.0, 1.0);
constexpr double kNullTol = 1e-12;

/// dF and dF̄ for F = h(ζ, ζ), as covectors on (u, v, w).
std::pair<Vec9<cplx>, Vec9<cplx>> cone_covectors(const Geometry3& h3, const CRPoint& p) {
  Vec3<cplx> x = p.x.cast<cplx>();
  MetricData3<cplx> m = metric_data3(h3, x);
  Vec3<cplx> z = p.zeta, zb = p.zeta.conjugate();
  Vec9<cplx> dF = Vec9<cplx>::Zero(), dFb = Vec9<cplx>::Zero();
  for (int k = 0; k < 3; ++k) {
    Mat3<cplx> dhinv = -(m.hinv * m.dh[k] * m.hinv);
    dF(k) = (z.transpose() * dhinv * z)(0);
    dFb(k) = (zb.transpose() * dhinv * zb)(0);
  }
  dF.segment<3>(3) = 2.0 * m.hinv * z;
  dFb.segment<3>(6) = 2.0 * m.hinv * zb;
  return {dF, dFb};
}

void require_null(const Geometry3& h3, const CRPoint& p) {
  if (std::abs(null_defect(h3, p)) > kNullTol) throw Error(ErrorKind::NotNull, "ζ is not null for h");
  if (p.zeta.norm() == 0.0) throw Error(ErrorKind::NotNull, "ζ vanishes");
}

/// [F, G] in (u, v, w) form from real-coordinate Jacobians.
template <class FF, class GG>
Vec9<cplx> bracket(FF&& f, GG&& g, const Vec9<cplx>& p) {
  auto fr = [&](const auto& q) { return wirtinger_to_real(f(q)); };
  auto gr = [&](const auto& q) { return wirtinger_to_real(g(q)); };
  Vec9<cplx> a = fr(p), b = gr(p);
  Vec9<cplx> out = Vec9<cplx>::Zero();
  for (int k = 0; k < 9; ++k) out += a(k) * partial<9>(gr, p, k) - b(k) * partial<9>(fr, p, k);
  return real_to_wirtinger(out);
}

int count_opposite(const Mat2<cplx>& L) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(Eigen::Matrix2cd(0.5 * (L + L.adjoint())));
  auto ev = es.eigenvalues();
  return (ev(0) < 0.0 && ev(1) > 0.0) ? 1 : 0;
}

}  // namespace

cplx null_defect(const Geometry3& h3, const CRPoint& p) {
  Vec3<cplx> x = p.x.cast<cplx>();
  Mat3<cplx> hinv = inverse(Mat3<cplx>(h3.g(x)));
  return (p.zeta.transpose() * hinv * p.zeta)(0);
}

Mat<cplx, 9, 3> cr_distribution(const Geometry3& h3, const CRPoint& p) {
  require_null(h3, p);
  CRFields f(h3);
  Vec9<cplx> q = p.coords();
  Mat<cplx, 9, 3> b;
  b.col(0) = f.horizontal(q);
  b.col(1) = f.anti_euler(q);
  b.col(2) = f.transverse(q);
  return b;
}

double isotropy_residual(const Geometry3& h3, const CRPoint& p, const Mat<cplx, 9, 3>& basis) {
  auto [dF, dFb] = cone_covectors(h3, p);
  Eigen::MatrixXcd span(9, 2);
  span.col(0) = dF;
  span.col(1) = dFb;
  double worst = 0.0;
  for (int c = 0; c < basis.cols(); ++c) {
    Vec9<cplx> V = basis.col(c);
    Vec9<cplx> a = Vec9<cplx>::Zero();  // V⌟ω = v_i dxⁱ − uⁱ dζ_i
    a.head<3>() = V.segment<3>(3);
    a.segment<3>(3) = -V.head<3>();
    Eigen::VectorXcd coef = span.colPivHouseholderQr().solve(Eigen::VectorXcd(a));
    worst = std::max(worst, (span * coef - Eigen::VectorXcd(a)).norm());
  }
  return worst;
}

Mat2<cplx> levi_form(const Geometry3& h3, const CRPoint& p) {
  require_null(h3, p);
  CRFields f(h3);
  Vec9<cplx> q = p.coords();
  auto z0 = [&f](const auto& s) { return conj_field(f.horizontal(s)); };
  auto z1 = [&f](const auto& s) { return conj_field(f.transverse(s)); };
  auto w0 = [&f](const auto& s) { return f.horizontal(s); };
  auto w1 = [&f](const auto& s) { return f.transverse(s); };
  Vec3<cplx> th = f.contact(q);
  auto theta = [&th](const Vec9<cplx>& v) { return (th.transpose() * v.head<3>())(0); };
  Mat2<cplx> L;
  L(0, 0) = kI * theta(bracket(z0, w0, q));
  L(0, 1) = kI * theta(bracket(z0, w1, q));
  L(1, 0) = kI * theta(bracket(z1, w0, q));
  L(1, 1) = kI * theta(bracket(z1, w1, q));
  return L;
}

double span_residual(const Eigen::MatrixXcd& span, const Eigen::VectorXcd& v) {
  const double n = v.norm();
  if (n == 0.0) return 0.0;
  Eigen::VectorXcd c = span.colPivHouseholderQr().solve(v);
  return (span * c - v).norm() / n;
}

std::vector<CRPoint> sample_cr_points(const Geometry3& h3, int count, std::uint64_t seed) {
  auto xs = sample_points(h3, count, seed);
  std::mt19937_64 rng(seed ^ 0x5bd1e995ULL);
  std::normal_distribution<double> nd(0.0, 1.0);
  std::vector<CRPoint> out;
  for (const auto& x : xs) {
    Vec3d u(nd(rng), nd(rng), nd(rng));
    u.normalize();
    Vec3d v(nd(rng), nd(rng), nd(rng));
    v -= v.dot(u) * u;
    v.normalize();
    Vec3<cplx> xc = x.cast<cplx>();
    Mat3<cplx> th = orthonormal_coframe<cplx, 3>(Mat3<cplx>(h3.g(xc)), h3.orientation);
    Vec3<cplx> c = u.cast<cplx>() + kI * v.cast<cplx>();
    CRPoint p;
    p.x = x;
    p.zeta = th.transpose() * c;
    out.push_back(p);
  }
  return out;
}

Vec2<cplx> tangential_spinor(const Compactification& c, const Vec4d& x, const Vec2<cplx>& pi) {
  require_nonzero(norm_squared(pi).real());
  Vec4<cplx> xc = x.cast<cplx>();
  Vec4<cplx> dr;
  for (int k = 0; k < 4; ++k) dr(k) = derivs(c.r(seed(xc, k)));
  if (dr.norm() < 1e-10) throw Error(ErrorKind::DegenerateDefiningFunction, "dr vanishes");
  Vec2<cplx> xi = tangential_spinor_raw(c, xc, pi);
  xi /= xi.norm();
  int k = std::abs(xi(0)) > 1e-14 ? 0 : 1;
  xi *= std::conj(xi(k)) / std::abs(xi(k));
  return xi;
}

VerificationReport twistor_cr_check(const Geometry3& h3, const std::vector<CRPoint>& pts, double tol_iso,
                                    double tol_bracket) {
  VerificationReport rep;
  rep.suite = "twistor-cr";
  rep.geometry = h3.name;
  Residual tangent, iso, invol, vert, herm, sig, sig_scale, sig_conf, notnull;
  CRFields f(h3);
  ScalarField<3> ups([](const auto& x) {
    using std::sin;
    using S = std::decay_t<decltype(x(0))>;
    return S(sin(x(0)) * 0.3 + x(1) * x(2) * 0.2);
  });
  Geometry3 h3c = conformal_rescale(h3, ups);
  for (const auto& p : pts) {
    Vec9<cplx> q = p.coords();
    Mat<cplx, 9, 3> B = cr_distribution(h3, p);
    auto [dF, dFb] = cone_covectors(h3, p);
    double t = 0.0;
    for (int c = 0; c < 3; ++c)
      t = std::max({t, std::abs((dF.transpose() * B.col(c))(0)), std::abs((dFb.transpose() * B.col(c))(0))});
    tangent.add(t);
    iso.add(isotropy_residual(h3, p, B));
    Eigen::MatrixXcd span(9, 4);
    span.leftCols<3>() = B;
    span.col(3) = f.euler(q);
    auto h = [&f](const auto& s) { return f.horizontal(s); };
    auto a = [&f](const auto& s) { return f.anti_euler(s); };
    auto w = [&f](const auto& s) { return f.transverse(s); };
    auto miss = [&span](const Vec9<cplx>& v) {
      Eigen::VectorXcd b = v;
      return (span * span.colPivHouseholderQr().solve(b) - b).norm();
    };
    invol.add(std::max({miss(bracket(h, a, q)), miss(bracket(h, w, q)), miss(bracket(a, w, q))}));
    Vec9<cplx> E = f.euler(q);
    vert.add(std::abs((dF.transpose() * E)(0)) + std::abs((dFb.transpose() * E)(0)));
    Mat2<cplx> L = levi_form(h3, p);
    herm.add(max_abs(L - L.adjoint()));
    sig.add(1.0 - count_opposite(L));
    CRPoint ps = p;
    ps.zeta *= cplx(0.6, -1.3);
    sig_scale.add(1.0 - count_opposite(levi_form(h3, ps)));
    sig_conf.add(1.0 - count_opposite(levi_form(h3c, p)));
    CRPoint bad = p;
    bad.zeta = bad.zeta.real().cast<cplx>();
    bool thrown = false;
    try {
      cr_distribution(h3, bad);
    } catch (const Error& e) {
      thrown = e.kind() == ErrorKind::NotNull;
    }
    notnull.add(thrown ? 0.0 : 1.0);
  }
  rep.checks.push_back(tangent.record("tangent-to-cone", "Prop twistor-CR-local", tol_iso));
  rep.checks.push_back(iso.record("omega-isotropy", "Prop twistor-CR-local", tol_iso));
  rep.checks.push_back(invol.record("involutivity", "Prop twistor-CR-local", tol_bracket));
  rep.checks.push_back(vert.record("euler-tangent", "Prop twistor-CR-local", tol_iso));
  rep.checks.push_back(herm.record("levi-hermitian", "Prop twistor-CR-local", tol_iso));
  CheckRecord s = sig.record("levi-signature", "Prop twistor-CR-local", 0.5);
  s.note = "residual = count of points without signature (1,1)";
  rep.checks.push_back(s);
  rep.checks.push_back(sig_scale.record("levi-scaling-invariance", "Prop twistor-CR-local", 0.5));
  rep.checks.push_back(sig_conf.record("levi-conformal-invariance", "Prop twistor-CR-local", 0.5));
  rep.checks.push_back(notnull.record("notnull-error", "Prop twistor-CR-local", 0.5));
  return rep;
}

VerificationReport embedding_check(const Compactification& c, const std::vector<TwistorPoint>& pts, double tol) {
  VerificationReport rep;
  rep.suite = "cr-embedding";
  rep.geometry = c.compact.name;
  TotalSpace amb = TotalSpace::ambient(c);
  CRFields f(c.boundary);
  Residual tang, drz, nullres, proj, smooth, emb, fib;
  for (const auto& p0 : pts) {
    TwistorPoint p = p0;
    p.x(0) = 0.0;
    Vec4<cplx> xc = p.x.cast<cplx>();
    Vec2<cplx> xi = tangential_spinor(c, p.x, p.pi);
    FrameData<cplx> fd = frame_data<cplx>(c.compact, xc);
    Vec4<cplx> dr;
    for (int k = 0; k < 4; ++k) dr(k) = derivs(c.r(seed(xc, k)));
    Mat2<cplx> rs = covector_to_spinor(Vec4<cplx>(fd.frame.transpose() * dr));
    tang.add(std::abs((xi.transpose() * rs * p.pi)(0)));
    Vec4<cplx> zeta = tangential_vector(c, xc, p.pi);
    drz.add(std::abs(dr.dot(zeta.conjugate())));
    Mat3<cplx> h = c.boundary.g(Vec3<cplx>(xc.tail<3>()));
    nullres.add(std::abs((zeta.tail<3>().transpose() * h * zeta.tail<3>())(0)));
    Vec2<cplx> xs = tangential_spinor(c, p.x, p.pi * cplx(-0.8, 0.45));
    proj.add((xs - xi).norm());
    Vec4d xd = p.x;
    xd(1) += 1e-7;
    smooth.add((tangential_spinor(c, xd, p.pi) - xi).norm());

    Vec<cplx, 7> s;
    s << xc(1), xc(2), xc(3), p.pi(0).real(), p.pi(0).imag(), p.pi(1).real(), p.pi(1).imag();
    Mat<cplx, 9, 7> Df;
    for (int k = 0; k < 7; ++k) Df.col(k) = derivs(ftilde(c, seed(s, k)));
    Vec9<cplx> target = ftilde(c, s);
    Eigen::MatrixXcd span(9, 4);
    span.col(0) = f.horizontal(target);
    span.col(1) = f.anti_euler(target);
    span.col(2) = f.transverse(target);
    span.col(3) = f.euler(target);

    Vec8<cplx> y = p.coords();
    Mat8<cplx> I = amb.structure_I(y);
    Mat8<cplx> P0 = (Mat8<cplx>::Identity() + kI * I) * 0.5;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Eigen::MatrixXcd(P0), Eigen::ComputeFullU);
    Eigen::MatrixXcd U4 = svd.matrixU().leftCols(4);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd0(Eigen::MatrixXcd(U4.row(0)), Eigen::ComputeFullV);
    Eigen::MatrixXcd V = U4 * svd0.matrixV().rightCols(3);  // −i eigenvectors with dr = 0
    double e = 0.0;
    for (int k = 0; k < 3; ++k) {
      Eigen::VectorXcd v7 = V.col(k).tail(7) / V.col(k).norm();
      Vec<cplx, 7> vv = v7;
      Vec9<cplx> push = real_to_wirtinger(Vec9<cplx>(Df * vv));
      e = std::max(e, span_residual(span, push));
    }
    emb.add(e);
    double fr = 0.0;
    Eigen::MatrixXcd dspan = span.leftCols(3);
    for (int A = 0; A < 2; ++A) {
      Vec<cplx, 7> v = Vec<cplx, 7>::Zero();
      v(3 + 2 * A) = 0.5;
      v(4 + 2 * A) = 0.5 * kI;
      Vec9<cplx> push = real_to_wirtinger(Vec9<cplx>(Df * v));
      fr = std::max(fr, span_residual(dspan, push));
    }
    fib.add(fr);
  }
  rep.checks.push_back(tang.record("tangential-equation", "Lemma def-xi", 1e-12));
  rep.checks.push_back(drz.record("zeta-tangent-to-slice", "Eq tangential", 1e-12));
  rep.checks.push_back(nullres.record("image-null", "Eq tangential", 1e-12));
  rep.checks.push_back(proj.record("xi-projective", "Lemma def-xi", 1e-12));
  rep.checks.push_back(smooth.record("xi-continuity", "Lemma def-xi", 1e-5));
  rep.checks.push_back(emb.record("embedding-cr", "Thm CR-isom", tol));
  rep.checks.push_back(fib.record("fiber-into-D", "Thm CR-isom", 1e-8));
  return rep;
}

}  // namespace twistor
