// SPDX-License-Identifier: Apache-2.0
#include "twistor/geometry.hpp"

#include "twistor/expression.hpp"

#include <sstream>

namespace twistor {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::ZeroSpinor: return "ZeroSpinor";
    case ErrorKind::DegenerateMetric: return "DegenerateMetric";
    case ErrorKind::NotASDEinstein: return "NotASDEinstein";
    case ErrorKind::ZeroLambda: return "ZeroLambda";
    case ErrorKind::NotNull: return "NotNull";
    case ErrorKind::DegenerateDefiningFunction: return "DegenerateDefiningFunction";
    case ErrorKind::BoundaryPoint: return "BoundaryPoint";
    case ErrorKind::UnknownSuite: return "UnknownSuite";
    case ErrorKind::UnknownGeometry: return "UnknownGeometry";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::IoFailure: return "IoFailure";
  }
  return "Error";
}

namespace {

/// M(2A + A', a) = γ^a_{AA'}: frame covector index → spinor pair index.
Mat<cplx, 4> to_spinor_pairs() {
  const auto& gi = soldering_inverse<cplx>();
  Mat<cplx, 4> m;
  for (int a = 0; a < 4; ++a)
    for (int A = 0; A < 2; ++A)
      for (int X = 0; X < 2; ++X) m(2 * A + X, a) = gi[a](A, X);
  return m;
}

/// M(a, 2A + A') = γ_a^{AA'}: spinor pair index → frame covector index.
Mat<cplx, 4> from_spinor_pairs() {
  const auto& g = soldering<cplx>();
  Mat<cplx, 4> m;
  for (int a = 0; a < 4; ++a)
    for (int A = 0; A < 2; ++A)
      for (int X = 0; X < 2; ++X) m(a, 2 * A + X) = g[a](A, X);
  return m;
}

const double kEps[2][2] = {{0.0, 1.0}, {-1.0, 0.0}};

}  // namespace

Tensor4<4> frame_from_spinor(const std::function<cplx(int, int, int, int, int, int, int, int)>& t) {
  Tensor4<4> s;
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q)
      for (int r = 0; r < 4; ++r)
        for (int u = 0; u < 4; ++u)
          s(p, q, r, u) = t(p / 2, p % 2, q / 2, q % 2, r / 2, r % 2, u / 2, u % 2);
  return transform4<4>(s, from_spinor_pairs());
}

std::vector<cplx> spinor_from_frame(const Tensor4<4>& t) { return transform4<4>(t, to_spinor_pairs()).data; }

const Tensor4<4>& volume_form() {
  static const Tensor4<4> e = frame_from_spinor([](int A, int X, int B, int Y, int C, int Z, int D, int W) {
    return cplx(kEps[A][C] * kEps[B][D] * kEps[X][W] * kEps[Y][Z] - kEps[A][D] * kEps[B][C] * kEps[X][Z] * kEps[Y][W]);
  });
  return e;
}

Tensor4<4> hodge_right(const Tensor4<4>& t) {
  const Tensor4<4>& e = volume_form();
  Tensor4<4> out;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          cplx s = 0.0;
          for (int p = 0; p < 4; ++p)
            for (int q = 0; q < 4; ++q) s += e(c, d, p, q) * t(a, b, p, q);
          out(a, b, c, d) = 0.5 * s;
        }
  return out;
}

CurvatureData curvature(const Geometry4& geom, const Vec4d& x, DerivMode mode) {
  CoordinateCurvature<4> cc = coordinate_curvature<4>(geom, x, mode);
  CurvatureData cd;
  cd.coframe = orthonormal_coframe<cplx, 4>(cc.g, geom.orientation);
  cd.frame = cd.coframe.inverse();
  cd.riemann = riemann_in_basis<4>(cc.riemann_low, cd.frame);
  Mat<cplx, 4> ric = cd.frame.transpose() * cc.ricci * cd.frame;
  cd.ricci = ric.real();
  cd.scalar = cd.ricci.trace();
  cd.schouten = 0.5 * cd.ricci - (cd.scalar / 12.0) * Mat4d::Identity();
  const Mat4d& P = cd.schouten;
  auto d = [](int i, int j) { return i == j ? 1.0 : 0.0; };
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int e = 0; e < 4; ++e) {
          double corr = P(c, a) * d(b, e) - P(c, b) * d(a, e) - P(e, a) * d(b, c) + P(e, b) * d(a, c);
          cd.weyl(a, b, c, e) = cd.riemann(a, b, c, e) - corr;
        }
  Tensor4<4> star = hodge_right(cd.weyl);
  for (std::size_t i = 0; i < star.data.size(); ++i) {
    cd.weyl_plus.data[i] = 0.5 * (cd.weyl.data[i] + star.data[i]);
    cd.weyl_minus.data[i] = 0.5 * (cd.weyl.data[i] - star.data[i]);
  }
  return cd;
}

CurvatureSpinors curvature_spinors(const CurvatureData& cd) {
  CurvatureSpinors cs;
  std::vector<cplx> rs = spinor_from_frame(cd.riemann);
  auto R = [&](int A, int X, int B, int Y, int C, int Z, int D, int W) {
    int p = 2 * A + X, q = 2 * B + Y, r = 2 * C + Z, u = 2 * D + W;
    return rs[((p * 4 + q) * 4 + r) * 4 + u];
  };
  Spinor4 c1, c2;
  for (int A = 0; A < 2; ++A)
    for (int B = 0; B < 2; ++B)
      for (int C = 0; C < 2; ++C)
        for (int D = 0; D < 2; ++D) {
          cplx s1 = 0.0, s2 = 0.0;
          for (int X = 0; X < 2; ++X)
            for (int Y = 0; Y < 2; ++Y)
              for (int Z = 0; Z < 2; ++Z)
                for (int W = 0; W < 2; ++W) {
                  double w = kEps[X][Y] * kEps[Z][W];
                  if (w == 0.0) continue;
                  s1 += w * R(A, X, B, Y, C, Z, D, W);
                  s2 += w * R(X, A, Y, B, Z, C, W, D);
                }
          c1(A, B, C, D) = 0.25 * s1;
          c2(A, B, C, D) = 0.25 * s2;
        }
  // Symmetrize over all 24 permutations.
  auto sym = [](const Spinor4& t) {
    Spinor4 o;
    int perm[4] = {0, 1, 2, 3};
    int count = 0;
    std::array<cplx, 16> acc{};
    do {
      ++count;
      for (int i = 0; i < 16; ++i) {
        int idx[4] = {(i >> 3) & 1, (i >> 2) & 1, (i >> 1) & 1, i & 1};
        acc[i] += t(idx[perm[0]], idx[perm[1]], idx[perm[2]], idx[perm[3]]);
      }
    } while (std::next_permutation(perm, perm + 4));
    for (int i = 0; i < 16; ++i) o.c[i] = acc[i] / static_cast<double>(count);
    return o;
  };
  cs.psi = sym(c1);
  cs.psi_tilde = sym(c2);
  cs.lambda = cd.scalar / 24.0;
  // Φ_ABA'B' = −½ (R_ab − ¼R g_ab) in spinor form.
  Mat4d ric0 = cd.ricci - 0.25 * cd.scalar * Mat4d::Identity();
  const auto& gi = soldering_inverse<cplx>();
  for (int A = 0; A < 2; ++A)
    for (int B = 0; B < 2; ++B)
      for (int X = 0; X < 2; ++X)
        for (int Y = 0; Y < 2; ++Y) {
          cplx s = 0.0;
          for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) s += gi[a](A, X) * gi[b](B, Y) * ric0(a, b);
          cs.phi(A, B, X, Y) = -0.5 * s;
        }
  // Reassemble R_abcd from the decomposition.
  const double L = cs.lambda;
  Tensor4<4> rebuilt = frame_from_spinor([&](int A, int X, int B, int Y, int C, int Z, int D, int W) {
    cplx v = cs.psi(A, B, C, D) * kEps[X][Y] * kEps[Z][W] + cs.psi_tilde(X, Y, Z, W) * kEps[A][B] * kEps[C][D] +
             cs.phi(A, B, Z, W) * kEps[X][Y] * kEps[C][D] + cs.phi(C, D, X, Y) * kEps[A][B] * kEps[Z][W];
    v += L * (kEps[A][C] * kEps[B][D] * kEps[X][Y] * kEps[Z][W] + kEps[A][D] * kEps[B][C] * kEps[X][Y] * kEps[Z][W] +
              kEps[X][Z] * kEps[Y][W] * kEps[A][B] * kEps[C][D] + kEps[X][W] * kEps[Y][Z] * kEps[A][B] * kEps[C][D]);
    return v;
  });
  double res = 0.0;
  for (std::size_t i = 0; i < rebuilt.data.size(); ++i)
    res = std::max(res, std::abs(rebuilt.data[i] - cd.riemann.data[i]));
  cs.reassembly_residual = res;
  return cs;
}

CurvatureSpinors curvature_spinors(const Geometry4& geom, const Vec4d& x, DerivMode mode) {
  return curvature_spinors(curvature(geom, x, mode));
}

Tensor4<4> weyl_minus_from_spinor(const Spinor4& psi) {
  return frame_from_spinor([&](int A, int X, int B, int Y, int C, int Z, int D, int W) {
    return psi(A, B, C, D) * kEps[X][Y] * kEps[Z][W];
  });
}

Tensor4<4> weyl_plus_from_spinor(const Spinor4& pt) {
  return frame_from_spinor([&](int A, int X, int B, int Y, int C, int Z, int D, int W) {
    return pt(X, Y, Z, W) * kEps[A][B] * kEps[C][D];
  });
}

double lambda_at(const Geometry4& geom, const Vec4d& x) { return curvature(geom, x).scalar / 24.0; }

std::vector<Vec2<cplx>> sample_spinors(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Vec2<cplx>> out;
  while (static_cast<int>(out.size()) < count) {
    Vec2<cplx> p(cplx(u(rng), u(rng)), cplx(u(rng), u(rng)));
    if (norm_squared(p).real() > 0.05) out.push_back(p);
  }
  return out;
}

VerificationReport asd_einstein_check(const Geometry4& geom, const std::vector<Vec4d>& samples, double tol,
                                      DerivMode mode) {
  VerificationReport rep;
  rep.suite = "asd-einstein";
  rep.geometry = geom.name;
  Residual psit, phi, dlam, reas;
  double lam0 = 0.0;
  bool first = true;
  for (const auto& x : samples) {
    CurvatureSpinors cs = curvature_spinors(geom, x, mode);
    psit.add(cs.psi_tilde.max_abs());
    phi.add(cs.phi.max_abs());
    reas.add(cs.reassembly_residual);
    if (first) {
      lam0 = cs.lambda;
      first = false;
    }
    dlam.add(std::abs(cs.lambda - lam0));
  }
  rep.checks.push_back(psit.record("psi-tilde-zero", "Thm swann", tol));
  rep.checks.push_back(phi.record("phi-zero", "Thm swann", tol));
  rep.checks.push_back(dlam.record("lambda-constant", "Thm swann", tol));
  rep.checks.push_back(reas.record("spinor-reassembly", "Sec spinor-calculus", tol));
  return rep;
}

VerificationReport special_defining_check(const Geometry4& compact, const ScalarField<4>& r, double lambda,
                                          const std::vector<Vec4d>& samples, double tol) {
  VerificationReport rep;
  rep.suite = "special-defining";
  rep.geometry = compact.name;
  Residual norm, hess;
  auto rf = [&r](const auto& x) { return r(x); };
  for (const auto& x : samples) {
    Vec<cplx, 4> xc = x.cast<cplx>();
    CoordinateCurvature<4> cc = coordinate_curvature<4>(compact, x);
    Vec<cplx, 4> dr = gradient<4>(rf, xc);
    cplx n2 = (dr.transpose() * cc.ginv * dr)(0, 0);
    norm.add(std::abs(n2 + 2.0 * lambda));
    Mat<cplx, 4> H;
    for (int k = 0; k < 4; ++k)
      for (int l = 0; l < 4; ++l) H(k, l) = rf(seed_pair<4>(xc, k, l)).d.d;
    cplx scal = (cc.ginv * cc.ricci).trace();
    Mat<cplx, 4> P = 0.5 * cc.ricci - (scal / 12.0) * cc.g;
    cplx rv = r(xc);
    Mat<cplx, 4> res = H + rv * P;
    for (int k = 0; k < 4; ++k) res -= cc.christoffel[k] * dr(k);
    hess.add(max_abs(res));
  }
  rep.checks.push_back(norm.record("dr-norm", "Prop totally", tol));
  rep.checks.push_back(hess.record("totally-geodesic", "Prop totally", tol));
  return rep;
}

// ---------------------------------------------------------------------------
// Catalog

Geometry4 flat_r4() {
  Geometry4 g;
  g.name = "flat_r4";
  g.metric = MatrixField<4>([](const auto& x) {
    using S = typename std::decay_t<decltype(x)>::Scalar;
    return Mat4<S>(Mat4<S>::Identity());
  });
  return g;
}

std::shared_ptr<const Compactification> compactified_hyperbolic() {
  static const std::shared_ptr<const Compactification> c = [] {
    auto cp = std::make_shared<Compactification>();
    cp->compact = flat_r4();
    cp->compact.name = "hyperbolic-compactified";
    cp->r = ScalarField<4>([](const auto& x) { return x(0); });
    cp->boundary = flat_r3();
    cp->lambda = -0.5;
    return std::shared_ptr<const Compactification>(cp);
  }();
  return c;
}

Geometry4 hyperbolic_half_space() {
  Geometry4 g;
  g.name = "hyperbolic";
  g.lo << 0.5, -1.0, -1.0, -1.0;
  g.hi << 2.0, 1.0, 1.0, 1.0;
  g.metric = MatrixField<4>([](const auto& x) {
    using S = typename std::decay_t<decltype(x)>::Scalar;
    S f = S(1.0) / (x(0) * x(0));
    return Mat4<S>(Mat4<S>::Identity() * f);
  });
  g.compactification = compactified_hyperbolic();
  return g;
}

Geometry4 round_s4(double radius) {
  Geometry4 g;
  g.name = radius == 1.0 ? "round_s4" : "round_s4(" + std::to_string(radius) + ")";
  const double R2 = radius * radius;
  g.metric = MatrixField<4>([R2](const auto& x) {
    using S = typename std::decay_t<decltype(x)>::Scalar;
    S q = x(0) * x(0) + x(1) * x(1) + x(2) * x(2) + x(3) * x(3) + R2;
    S f = (4.0 * R2 * R2) / (q * q);
    return Mat4<S>(Mat4<S>::Identity() * f);
  });
  return g;
}

Geometry4 fubini_study(bool asd_oriented) {
  Geometry4 g;
  g.name = asd_oriented ? "fubini_study_reversed" : "fubini_study_wrong_orientation";
  // Ψ̃ vanishes for the complex orientation of the chart in the frame convention
  // of orthonormal_coframe; the opposite orientation is the negative control.
  g.orientation = asd_oriented ? 1 : -1;
  g.metric = MatrixField<4>([](const auto& x) {
    using S = typename std::decay_t<decltype(x)>::Scalar;
    const cplx i(0.0, 1.0);
    S z1 = x(0) + i * x(1);
    S z2 = x(2) + i * x(3);
    S q = S(1.0) + z1 * conj(z1) + z2 * conj(z2);
    S inv = S(1.0) / (q * q);
    Mat2<S> h;
    h(0, 0) = (q - conj(z1) * z1) * inv;
    h(0, 1) = -(conj(z1) * z2) * inv;
    h(1, 0) = -(conj(z2) * z1) * inv;
    h(1, 1) = (q - conj(z2) * z2) * inv;
    // dz^j(∂_μ)
    Mat<cplx, 2, 4> V = Mat<cplx, 2, 4>::Zero();
    V(0, 0) = 1.0;
    V(0, 1) = i;
    V(1, 2) = 1.0;
    V(1, 3) = i;
    Mat4<S> G;
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n) {
        S s(0.0);
        for (int j = 0; j < 2; ++j)
          for (int k = 0; k < 2; ++k) s += h(j, k) * V(j, m) * std::conj(V(k, n));
        G(m, n) = re(s) * 2.0;
      }
    return G;
  });
  return g;
}

Geometry4 perturbed_non_einstein() {
  Geometry4 g = hyperbolic_half_space();
  g.name = "perturbed-noneinstein";
  g.compactification.reset();
  auto base = g.metric;
  g.metric = MatrixField<4>([base](const auto& x) {
    auto m = base(x);
    m(1, 1) += 0.1;
    return m;
  });
  return g;
}

Geometry3 flat_r3() {
  Geometry3 g;
  g.name = "flat_r3";
  g.metric = MatrixField<3>([](const auto& x) {
    using S = typename std::decay_t<decltype(x)>::Scalar;
    return Mat<S, 3>(Mat<S, 3>::Identity());
  });
  return g;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

/// chart:g00=...;g11=...;g01=...;lo=a,b,c,d;hi=a,b,c,d;orientation=±1
Geometry4 parse_chart(const std::string& text) {
  Geometry4 g;
  g.name = text;
  std::array<std::array<ExprPtr, 4>, 4> comp{};
  for (const std::string& raw : split(text.substr(6), ';')) {
    std::string item = trim(raw);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::InvalidConfig, "chart entry without '=': " + item);
    std::string key = trim(item.substr(0, eq));
    std::string val = trim(item.substr(eq + 1));
    if (key.size() == 3 && key[0] == 'g' && std::isdigit(key[1]) && std::isdigit(key[2])) {
      int i = key[1] - '0', j = key[2] - '0';
      if (i > 3 || j > 3) throw Error(ErrorKind::InvalidConfig, "metric index out of range: " + key);
      ExprPtr e = parse_expression(val, 4);
      comp[i][j] = e;
      comp[j][i] = e;
    } else if (key == "lo" || key == "hi") {
      auto parts = split(val, ',');
      if (parts.size() != 4) throw Error(ErrorKind::InvalidConfig, key + " needs 4 values");
      for (int k = 0; k < 4; ++k) (key == "lo" ? g.lo : g.hi)(k) = std::stod(parts[k]);
    } else if (key == "orientation") {
      g.orientation = std::stoi(val) < 0 ? -1 : 1;
    } else {
      throw Error(ErrorKind::InvalidConfig, "unknown chart key: " + key);
    }
  }
  for (int i = 0; i < 4; ++i)
    if (!comp[i][i]) throw Error(ErrorKind::InvalidConfig, "chart is missing diagonal component g" +
                                                              std::to_string(i) + std::to_string(i));
  g.metric = MatrixField<4>([comp](const auto& x) {
    using S = typename std::decay_t<decltype(x)>::Scalar;
    Mat4<S> m = Mat4<S>::Zero();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (comp[i][j]) m(i, j) = eval_expression<S>(*comp[i][j], x.data());
    return m;
  });
  return g;
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"flat_r4", "hyperbolic", "round_s4", "fubini_study_reversed", "fubini_study_wrong_orientation",
          "perturbed-noneinstein"};
}

Geometry4 geometry_by_name(const std::string& name) {
  if (name == "flat_r4") return flat_r4();
  if (name == "hyperbolic" || name == "hyperbolic_half_space") return hyperbolic_half_space();
  if (name == "round_s4") return round_s4(1.0);
  if (name == "fubini_study_reversed" || name == "cp2") return fubini_study(true);
  if (name == "fubini_study_wrong_orientation") return fubini_study(false);
  if (name == "perturbed-noneinstein") return perturbed_non_einstein();
  if (name.rfind("chart:", 0) == 0) return parse_chart(name);
  throw Error(ErrorKind::UnknownGeometry, "no catalog geometry named '" + name + "'");
}

}  // namespace twistor
