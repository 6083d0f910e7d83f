#include <gtest/gtest.h>

#include <cmath>

#include "hodgebench/boundary/boundary.hpp"
#include "hodgebench/calculus/random.hpp"
#include "hodgebench/error.hpp"

using namespace hb::bnd;
using hb::calc::parse_expr;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

namespace {

std::string sphere_expr(std::size_t n, double radius_sq = 1.0) {
  std::string s;
  for (std::size_t a = 1; a <= n; ++a) s += "z" + std::to_string(a) + "*zb" + std::to_string(a) + " + ";
  return s + "-" + std::to_string(radius_sq);
}

BoundaryContext ball(std::size_t n, double scale = 1.0) {
  auto a = hb::alg::make_antiholomorphic(n);
  auto r = parse_expr(std::to_string(scale) + "*(" + sphere_expr(n) + ")", a.chart);
  return BoundaryContext(a, {r, {}});
}

BoundaryContext poisson(std::size_t k) {
  std::size_t n = 2 * k + 2;
  auto a = hb::alg::make_holomorphic_poisson(n, hb::alg::poisson_example_sigma(k));
  return BoundaryContext(a, {parse_expr(sphere_expr(n), a.chart), {}});
}

// d/dzbar coefficients of real-component vectors on C^n
MatrixXcd to_t01(const MatrixXcd& V) {
  MatrixXcd U(V.rows() / 2, V.cols());
  for (Eigen::Index a = 0; a < U.rows(); ++a) U.row(a) = V.row(2 * a) - cplx(0, 1) * V.row(2 * a + 1);
  return U;
}

Point locus_point(std::size_t n, double theta) {
  Point x(2 * n, 0.0);
  x[2] = std::cos(theta);
  x[3] = std::sin(theta);
  return x;
}

}  // namespace

TEST(Sampler, PointsOnSphere) {
  for (std::size_t m : {3u, 4u, 6u, 8u}) {
    auto pts = sphere_lattice(m, 200, 0.5);
    ASSERT_EQ(pts.size(), 200u);
    for (const auto& p : pts) {
      double s = 0;
      for (double v : p) s += v * v;
      EXPECT_NEAR(std::sqrt(s), 0.5, 1e-12);
    }
    EXPECT_EQ(sphere_lattice(m, 10), sphere_lattice(m, 10));
  }
}

TEST(Classify, TangentSphereElliptic) {
  hb::calc::Chart c(3);
  BoundaryContext ctx(hb::alg::make_tangent(c), {parse_expr("x1^2 + x2^2 + x3^2 - 1", c), {}});
  for (const auto& x : sphere_lattice(3, 50)) {
    auto cl = classify_point(ctx, x);
    EXPECT_TRUE(cl.elliptic());
    EXPECT_NEAR(cl.margin, 1.0, 1e-10);
  }
  // transverse section agrees with grad r / |grad r|^2 modulo the tangent space
  Point x = sphere_lattice(3, 7)[3];
  auto jet = adapted_jet(ctx, x);
  Eigen::VectorXd g = ctx.grad_at(x);
  VectorXcd diff = jet.transverse - (g / g.squaredNorm()).cast<cplx>();
  EXPECT_LT(std::abs((g.cast<cplx>().transpose() * diff)(0)), 1e-12);
  EXPECT_THROW(classify_point(ctx, {0.5, 0, 0}), hb::DomainError);
}

TEST(Classify, BallNonElliptic) {
  auto ctx = ball(2);
  for (const auto& x : sphere_lattice(4, 50)) EXPECT_FALSE(classify_point(ctx, x).elliptic());
}

TEST(Classify, PoissonLocus) {
  auto ctx = poisson(1);
  EXPECT_FALSE(classify_point(ctx, {0, 0, 1, 0, 0, 0, 0, 0}).elliptic());
  EXPECT_TRUE(classify_point(ctx, {1, 0, 0, 0, 0, 0, 0, 0}).elliptic());
}

TEST(AdaptedFrame, TangencyIsExact) {
  auto ctx = poisson(1);
  Point x{0.3, 0.1, 0.5, -0.2, 0.4, 0.1, 0.2, 0.0};
  double s = 0;
  for (double v : x) s += v * v;
  for (double& v : x) v /= std::sqrt(s);
  auto fr = adapted_frame(ctx, x);
  auto fields = adapted_fields(ctx, fr);
  for (const auto& f : fields) EXPECT_TRUE(f.apply(ctx.boundary().r).is_zero());
  // dr(rho(w~_l))(x) = 1
  VectorXcd vl = VectorXcd::Zero(8);
  for (std::size_t j = 0; j < 8; ++j)
    if (!fr.table[7][j].is_zero()) vl += fr.table[7][j].eval(x) * ctx.anchors_at(x).col(j);
  EXPECT_NEAR(std::abs((ctx.grad_at(x).cast<cplx>().transpose() * vl)(0) - cplx(1)), 0.0, 1e-12);
}

TEST(Levi, BallIdentity) {
  auto ctx = ball(2);
  auto rep = levi_form_generic(ctx, {1, 0, 0, 0});
  ASSERT_EQ(rep.levi.rows(), 1);
  EXPECT_NEAR(std::abs(rep.levi(0, 0) - cplx(1)), 0.0, 1e-12);
  EXPECT_EQ(rep.signature, (Signature{1, 0, 0}));
  // identity in an orthonormal CR basis at generic points
  for (const auto& x : sphere_lattice(6, 20)) {
    auto ctx3 = ball(3);
    auto r3 = levi_form_generic(ctx3, x);
    MatrixXcd U = to_t01(r3.cr_values);
    MatrixXcd G = (U.adjoint() * U).transpose();
    EXPECT_LT((r3.levi - G).norm(), 1e-10);
    EXPECT_LT(r3.hermitian_defect, 1e-10);
    MatrixXcd H = levi_form_complex_hessian(ctx3, x, U);
    EXPECT_LT((H - r3.levi).norm(), 1e-10);
  }
}

TEST(Levi, FlatBoundaryHessianVanishes) {
  auto a = hb::alg::make_antiholomorphic(2);
  BoundaryContext ctx(a, {parse_expr("x3", a.chart), {}});
  MatrixXcd U(2, 1);
  U << 1, 0;
  EXPECT_LT(levi_form_complex_hessian(ctx, {0.2, 0.3, 0, 0.1}, U).norm(), 1e-14);
  MatrixXcd bad(2, 1);
  bad << 0, 1;
  EXPECT_THROW(levi_form_complex_hessian(ctx, {0.2, 0.3, 0, 0.1}, bad), hb::DomainError);
}

TEST(Levi, ConformalInvariance) {
  auto c1 = ball(3), c3 = ball(3, 3.0);
  for (const auto& x : sphere_lattice(6, 10)) {
    auto a = levi_form_generic(c1, x), b = levi_form_generic(c3, x);
    EXPECT_EQ(a.signature, b.signature);
    EXPECT_LT((a.levi_unit - b.levi_unit).norm(), 1e-12);
    EXPECT_LT((3.0 * a.levi - b.levi).norm(), 1e-12);
  }
}

TEST(Levi, PoissonExampleSignature) {
  auto ctx = poisson(1);
  Point x = locus_point(4, 0.0);
  auto rep = levi_form_generic(ctx, x);
  EXPECT_EQ(rep.signature, (Signature{5, 1, 1}));
  MatrixXcd P = levi_form_poisson(ctx, x);
  EXPECT_LT((P - rep.levi).norm(), 1e-10) << "generic\n" << rep.levi << "\npoisson\n" << P;
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(P);
  auto ev = es.eigenvalues();
  EXPECT_NEAR(ev(0), (1 - std::sqrt(5.0)) / 2, 1e-12);
  EXPECT_NEAR(ev(6), (1 + std::sqrt(5.0)) / 2, 1e-12);
  // explicit entry L(dx, d/dxbar) = conj(y)
  Point x2 = locus_point(4, 0.7);
  MatrixXcd P2 = levi_form_poisson(ctx, x2);
  EXPECT_NEAR(std::abs(P2(3, 0) - cplx(std::cos(0.7), -std::sin(0.7))), 0.0, 1e-12);
  EXPECT_LT((P2 - levi_form_generic(ctx, x2).levi).norm(), 1e-10);
}

TEST(Levi, PoissonK2Signature) {
  auto ctx = poisson(2);
  auto rep = levi_form_generic(ctx, locus_point(6, 1.1));
  EXPECT_EQ(rep.signature, (Signature{9, 1, 1}));
  EXPECT_EQ(eigen_signature(levi_form_poisson(ctx, locus_point(6, 1.1)), 1e-8), (Signature{9, 1, 1}));
}

TEST(Levi, ProjectionIndependence) {
  auto ctx = poisson(1);
  Point x = locus_point(4, 0.3);
  auto base = levi_form_generic(ctx, x);
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  Eigen::VectorXd gr = ctx.grad_at(x);
  for (int t = 0; t < 10; ++t) {
    VectorXcd c(8);
    for (int i = 0; i < 8; ++i) c(i) = cplx(g(rng), g(rng));
    c -= gr.cast<cplx>() * (gr.cast<cplx>().dot(c)) / gr.squaredNorm();  // keep it in ker dr
    auto rep = levi_form_generic(ctx, x, std::nullopt, c);
    EXPECT_LT((rep.levi - base.levi).norm(), 1e-10);
  }
}

TEST(Levi, ExtensionIndependence) {
  auto ctx = poisson(1);
  Point x = locus_point(4, 0.3);
  auto base = levi_form_generic(ctx, x);
  auto fr = adapted_frame(ctx, x);
  auto fields = adapted_fields(ctx, fr);
  auto jet0 = adapted_jet(ctx, x);
  std::mt19937_64 rng(23);
  ScalarExpr r2 = ctx.boundary().r.pow(2);
  for (int t = 0; t < 3; ++t) {
    auto perturbed = fields;
    for (auto& f : perturbed)
      for (std::size_t k = 0; k < ctx.rank(); ++k)
        f = f + (r2 * hb::calc::random_polynomial(8, 1, rng)) * ctx.algebroid().anchor[k];
    auto rep = levi_form_generic(ctx, x, jet_from_fields(perturbed, jet0.transverse, x));
    EXPECT_LT((rep.levi - base.levi).norm(), 1e-8);
  }
}

TEST(Signature, Basics) {
  EXPECT_EQ(eigen_signature(MatrixXcd::Identity(3, 3), 1e-8), (Signature{3, 0, 0}));
  MatrixXcd D = MatrixXcd::Zero(3, 3);
  D(0, 0) = 1;
  D(1, 1) = -1;
  EXPECT_EQ(eigen_signature(D, 1e-8), (Signature{1, 1, 1}));
  // positive definite point: passes every q >= 1, fails q = 0
  for (int q = 0; q <= 4; ++q) EXPECT_EQ(q_passes({3, 0, 0}, 4, q), q >= 1);
}

TEST(Convexity, Ball) {
  for (std::size_t n : {2u, 3u}) {
    auto ctx = ball(n);
    auto v = q_convex_set(ctx, sphere_lattice(2 * n, 40));
    std::vector<int> expect;
    for (int q = 1; q <= static_cast<int>(n); ++q) expect.push_back(q);
    EXPECT_EQ(v.q_set, expect);
    EXPECT_TRUE(v.witness.count(0));
  }
}

TEST(Convexity, Annulus) {
  auto a = hb::alg::make_antiholomorphic(3);
  auto r = parse_expr("(" + sphere_expr(3) + ")*(" + sphere_expr(3, 0.25) + ")", a.chart);
  BoundaryContext ctx(a, {r, {}});
  auto v = q_convex_set(ctx, multi_sphere_lattice(6, 30, {1.0, 0.5}));
  EXPECT_EQ(v.q_set, (std::vector<int>{1, 3}));
  EXPECT_EQ(v.reports[0].signature, (Signature{2, 0, 0}));
  EXPECT_EQ(v.reports[40].signature, (Signature{0, 2, 0}));
}

TEST(Convexity, PoissonWitnesses) {
  auto ctx = poisson(1);
  auto pts = sphere_lattice(8, 30);
  for (int t = 0; t < 5; ++t) pts.push_back(locus_point(4, 0.5 * t));
  auto v = q_convex_set(ctx, pts);
  EXPECT_EQ(v.q_set, (std::vector<int>{0, 3, 4, 5, 6, 7, 8}));
  EXPECT_EQ(v.witness.at(1), 30u);
  EXPECT_EQ(v.witness.at(2), 30u);
  EXPECT_EQ(v.non_elliptic, 5u);
}

TEST(GC, Classification) {
  hb::calc::Chart c(4);
  hb::calc::FormExpr w(4, 2);
  w.set({0, 1}, ScalarExpr(1));
  w.set({2, 3}, ScalarExpr(1));
  BoundaryContext sym(hb::alg::make_graph_two_form(c, w, true), {parse_expr("x1^2+x2^2+x3^2+x4^2-1", c), {}});
  for (const auto& x : sphere_lattice(4, 30)) {
    EXPECT_TRUE(gc_ellipticity_via_bivector(sym, x).elliptic());
    EXPECT_TRUE(classify_point(sym, x).elliptic());
  }
  auto b = ball(2);
  EXPECT_FALSE(gc_ellipticity_via_bivector(b, {1, 0, 0, 0}).elliptic());
  auto p = poisson(1);
  auto pts = sphere_lattice(8, 40);
  for (int t = 0; t < 10; ++t) pts.push_back(locus_point(4, 0.6 * t));
  for (const auto& x : pts)
    EXPECT_EQ(gc_ellipticity_via_bivector(p, x).elliptic(), classify_point(p, x).elliptic());
  hb::calc::Chart c3(3);
  BoundaryContext tan(hb::alg::make_tangent(c3), {parse_expr("x1^2+x2^2+x3^2-1", c3), {}});
  EXPECT_THROW(gc_ellipticity_via_bivector(tan, {1, 0, 0}), hb::DomainError);
}
