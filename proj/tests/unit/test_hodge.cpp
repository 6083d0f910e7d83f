#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "hodgebench/error.hpp"
#include "hodgebench/hodge/hodge.hpp"

using namespace hb::hodge;

namespace {

constexpr double kPi = std::numbers::pi;

const NeumannProblem& standard() {
  static const NeumannProblem p(AnnulusGrid{});
  return p;
}

double bump(double r, double th) {
  double x = r * std::cos(th) - 0.75, y = r * std::sin(th);
  return std::exp(-(x * x + y * y) / 0.05);
}

}  // namespace

TEST(Assemble, GridValidation) {
  EXPECT_THROW(NeumannProblem(AnnulusGrid{0.05, 8, 32}), hb::DomainError);
  EXPECT_THROW(NeumannProblem(AnnulusGrid{0.5, 8, 8}), hb::DomainError);
  EXPECT_THROW(NeumannProblem(AnnulusGrid{0.5, 7, 32}), hb::DomainError);
}

TEST(Assemble, SelfAdjointAndNonnegative) {
  const auto& p = standard();
  EXPECT_LE(p.hermitian_defect(), 1e-10);
  for (std::size_t b = 0; b < p.grid().ntheta; ++b) {
    EXPECT_GE(p.block(b).lam0.minCoeff(), -1e-10 * p.lambda_max(0));
    EXPECT_GE(p.block(b).lam1.minCoeff(), -1e-10 * p.lambda_max(1));
  }
}

TEST(Assemble, POfZbarIsExact) {
  AnnulusGrid g{0.5, 8, 32};
  NeumannProblem p(g);
  auto zbar = DiscreteForm::mode(g, 0, -1, [](double r) { return cplx(r); });
  auto Pz = p.apply_P(zbar);
  for (std::size_t b = 0; b < g.ntheta; ++b)
    for (Eigen::Index j = 0; j < Pz.blocks[b].size(); ++j)
      EXPECT_NEAR(std::abs(Pz.blocks[b](j) - cplx(b == g.block_of_mode0(-1) ? 1.0 : 0.0)), 0.0, 1e-12);
}

TEST(Assemble, POfHolomorphicIsSecondOrder) {
  auto res = [](int k, std::size_t nr) {
    AnnulusGrid g{0.5, 8, nr};
    NeumannProblem p(g);
    auto zk = DiscreteForm::mode(g, 0, k, [k](double r) { return cplx(std::pow(r, k)); });
    return p.norm(p.apply_P(zk)) / p.norm(zk);
  };
  // the midpoint average is exact on z itself
  EXPECT_LE(res(1, 64), 1e-13);
  for (int k : {2, 3, -2}) EXPECT_NEAR(std::log2(res(k, 64) / res(k, 127)), 2.0, 0.15) << k;
}

TEST(Assemble, IntegrationByPartsSecondOrder) {
  auto phi = [](double r) { return cplx(std::cos(3 * r), r * r); };
  auto psi = [](double r) { return cplx(std::exp(r), -std::sin(2 * r)); };
  for (int n : {-3, 0, 2}) {
    double a = ibp_defect(AnnulusGrid{0.5, 8, 33}, n, phi, psi);
    double b = ibp_defect(AnnulusGrid{0.5, 8, 65}, n, phi, psi);
    EXPECT_NEAR(std::log2(a / b), 2.0, 0.3) << n;
  }
}

TEST(Spectrum, HarmonicDimensions) {
  const auto& p = standard();
  EXPECT_EQ(p.harmonic_dim(1), 0u);
  // degree-0 kernel: each vector is a discrete holomorphic function
  for (std::size_t b = 0; b < p.grid().ntheta; ++b) {
    const Block& B = p.block(b);
    for (Eigen::Index i = 0; i < B.lam0.size(); ++i) {
      if (B.lam0(i) > p.threshold(0)) continue;
      EXPECT_LE((B.Pt * B.V0.col(i)).norm(), 1e-3);
    }
  }
}

TEST(Spectrum, KernelShadowsPowers) {
  AnnulusGrid g{0.5, 8, 128};
  NeumannProblem p(g);
  for (int n : {-2, 0, 1, 3}) {
    const Block& B = p.block(g.block_of_mode0(n));
    Eigen::VectorXcd v = B.V0.col(0).cwiseQuotient(B.w0.cwiseSqrt().cast<cplx>());
    Eigen::VectorXcd ref(v.size());
    for (Eigen::Index j = 0; j < v.size(); ++j) ref(j) = std::pow(g.node(static_cast<std::size_t>(j)), n);
    cplx c = (ref.adjoint() * B.w0.asDiagonal() * v)(0) / (ref.adjoint() * B.w0.asDiagonal() * ref)(0);
    double rel = std::sqrt(((v - c * ref).array().abs2() * B.w0.array()).sum() / ((v.array().abs2()) * B.w0.array()).sum());
    EXPECT_LE(rel, 1e-3) << n;
  }
}

TEST(Spectrum, SmallestEigenvalueRefinementStable) {
  NeumannProblem a(AnnulusGrid{0.5, 16, 64}), b(AnnulusGrid{0.5, 16, 128});
  for (int d : {0, 1}) {
    double la = a.smallest_nonzero(d), lb = b.smallest_nonzero(d);
    EXPECT_LE(std::abs(la - lb) / lb, 0.1) << d;
  }
  EXPECT_DOUBLE_EQ(a.neumann_norm(1), 1.0 / a.smallest_nonzero(1));
}

TEST(Neumann, Identities) {
  const auto& p = standard();
  EXPECT_LE(p.n_pi_defect(), 1e-10);
  for (std::uint64_t s = 0; s < 6; ++s)
    for (int d : {0, 1}) {
      auto phi = DiscreteForm::random(p.grid(), d, s);
      double n = p.norm(phi);
      EXPECT_LE(p.norm(p.apply_box(p.apply_N(phi)) + p.apply_pi(phi) - phi), 1e-8 * n);
      EXPECT_LE(p.norm(p.apply_N(p.apply_box(phi)) + p.apply_pi(phi) - phi), 1e-8 * n);
      auto h = p.apply_pi(phi);
      EXPECT_LE(p.norm(p.apply_N(h)), 1e-10 * n);
    }
  auto phi = DiscreteForm::random(p.grid(), 1, 99);
  // spectral calculus: ||N phi|| <= ||phi|| / lambda_min
  EXPECT_LE(p.norm(p.apply_N(phi)), p.neumann_norm(1) * p.norm(phi) * (1 + 1e-12));
}

TEST(Solve, MatchesMinimalNormOracle) {
  const auto& p = standard();
  auto f = DiscreteForm::mode(p.grid(), 1, -1, [](double r) { return cplx(r); });
  auto u = solve_dbar(p, f), o = min_norm_oracle(p, f);
  EXPECT_LE(p.norm(u - o), 1e-8 * p.norm(o));
  EXPECT_LE(p.norm(p.apply_P(u) - f), 1e-8 * p.norm(f));
  auto z = solve_dbar(p, DiscreteForm::zero(p.grid(), 1));
  EXPECT_EQ(p.norm(z), 0.0);
  // f = P g: primitive orthogonal to the kernel and no longer than g minus its kernel part
  auto g = DiscreteForm::random(p.grid(), 0, 5);
  auto ug = solve_dbar(p, p.apply_P(g));
  EXPECT_LE(p.norm(p.apply_P(ug) - p.apply_P(g)), 1e-8 * p.norm(p.apply_P(g)));
  EXPECT_LE(p.norm(ug), p.norm(g - p.apply_pi(g)) * (1 + 1e-8));
  EXPECT_LE(std::abs(p.inner(ug, p.apply_pi(ug))), 1e-8 * p.norm(ug) * p.norm(ug));
}

TEST(Solve, SecondOrderConvergence) {
  auto rep = dbar_convergence(0.5, 8, {32, 64, 128, 256});
  EXPECT_GE(rep.slope, 1.6);
  EXPECT_LE(rep.slope, 2.4);
  for (std::size_t i = 1; i < rep.error.size(); ++i) EXPECT_LT(rep.error[i], rep.error[i - 1]);
}

TEST(Split, OrthogonalAndComplete) {
  const auto& p = standard();
  for (int d : {0, 1}) {
    auto phi = DiscreteForm::random(p.grid(), d, 11);
    auto s = hodge_split(p, phi);
    double n2 = p.norm(phi) * p.norm(phi);
    EXPECT_LE(std::abs(p.inner(s.harmonic, s.imP)), 1e-8 * n2);
    EXPECT_LE(std::abs(p.inner(s.harmonic, s.imPstar)), 1e-8 * n2);
    EXPECT_LE(std::abs(p.inner(s.imP, s.imPstar)), 1e-8 * n2);
    EXPECT_LE(p.norm(s.harmonic + s.imP + s.imPstar - phi), 1e-8 * std::sqrt(n2));
  }
  auto g = DiscreteForm::random(p.grid(), 0, 12);
  auto Pg = p.apply_P(g);
  EXPECT_LE(p.norm(hodge_split(p, Pg).imP - Pg), 1e-8 * p.norm(Pg));
  // a kernel vector splits as itself
  auto h = p.apply_pi(g);
  auto sh = hodge_split(p, h);
  EXPECT_LE(p.norm(sh.harmonic - h), 1e-8 * p.norm(h));
}

TEST(BasicEstimate, SingleModeOracle) {
  using Q = boost::math::quadrature::gauss<double, 30>;
  const double r0 = 0.5;
  AnnulusGrid g{r0, 16, 2049};
  for (int m : {-3, 0, 2}) {
    auto f = [r0](double r) { return (r - r0) * (1 - r); };
    auto fp = [r0](double r) { return 1 + r0 - 2 * r; };
    double l2 = 2 * kPi * Q::integrate([&](double r) { return f(r) * f(r) * r; }, r0, 1.0);
    double ps = 2 * kPi * Q::integrate([&](double r) { double v = 0.5 * (fp(r) + m * f(r) / r); return v * v * r; }, r0, 1.0);
    double gr = 2 * kPi * Q::integrate([&](double r) { double v = 0.5 * (fp(r) - m * f(r) / r); return v * v * r; }, r0, 1.0);
    auto phi = DiscreteForm::mode(g, 1, m, [&](double r) { return cplx(f(r)); });
    double ratio = e_squared(g, phi) / q_form(g, phi);
    EXPECT_NEAR(ratio / ((gr + l2) / (ps + l2)), 1.0, 1e-6) << m;
  }
}

TEST(BasicEstimate, FiniteAndRefinementStable) {
  NeumannProblem a(AnnulusGrid{0.5, 16, 64}), b(AnnulusGrid{0.5, 16, 128});
  auto ra = basic_estimate_report(a, 12, 3), rb = basic_estimate_report(b, 12, 3);
  for (double v : ra.e_over_q) EXPECT_TRUE(std::isfinite(v));
  EXPECT_LE(std::abs(ra.c_e_vs_q - rb.c_e_vs_q) / rb.c_e_vs_q, 0.2);
  EXPECT_LE(std::abs(ra.c_d_vs_e - rb.c_d_vs_e) / rb.c_d_vs_e, 0.2);
  EXPECT_THROW(basic_estimate_report(a, 0, 3), hb::DomainError);
}

TEST(Regularity, RefinementStable) {
  NeumannProblem a(AnnulusGrid{0.5, 16, 64}), b(AnnulusGrid{0.5, 16, 128});
  for (int d : {0, 1}) {
    double ca = regularity_constant(a, d, 3, 4), cb = regularity_constant(b, d, 3, 4);
    EXPECT_TRUE(std::isfinite(ca));
    EXPECT_LE(std::abs(ca - cb) / cb, 0.2) << d;
  }
}

TEST(Family, RescalingOracle) {
  AnnulusGrid g{0.5, 8, 32};
  NeumannProblem p(g);
  auto one = [](double, double) { return 1.0; };
  auto N0 = family_neumann(g, one, 0.0);
  double nrm0 = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(N0, Eigen::EigenvaluesOnly).eigenvalues().cwiseAbs().maxCoeff();
  EXPECT_NEAR(nrm0, p.neumann_norm(1), 1e-8 * nrm0);
  auto rep = family_continuity(g, one, {0.0, 0.1, 0.01});
  EXPECT_EQ(rep.diff[0], 0.0);
  for (std::size_t i = 1; i < rep.eps.size(); ++i) {
    double e = rep.eps[i];
    EXPECT_NEAR(rep.diff[i], (1 - 1 / ((1 + e) * (1 + e))) * nrm0, 1e-8 * nrm0);
  }
  EXPECT_GT(rep.min_eig, 0.0);
}

TEST(Family, BumpIsLinear) {
  std::vector<double> eps{1e-1, 1e-2, 1e-3};
  auto a = family_continuity(AnnulusGrid{0.5, 16, 32}, bump, eps);
  auto b = family_continuity(AnnulusGrid{0.5, 16, 64}, bump, eps);
  EXPECT_GE(a.slope, 0.8);
  EXPECT_LE(a.slope, 1.2);
  EXPECT_GE(b.slope, 0.8);
  EXPECT_LE(b.slope, 1.2);
  EXPECT_LE(std::abs(a.constant - b.constant) / b.constant, 0.2);
  EXPECT_GT(b.min_eig, 0.0);
  EXPECT_THROW(family_neumann(AnnulusGrid{0.5, 8, 32}, bump, -2.0), hb::DomainError);
}
