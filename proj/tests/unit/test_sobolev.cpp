#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "hodgebench/error.hpp"
#include "hodgebench/sobolev/sobolev.hpp"

using namespace hb::sob;

namespace {

constexpr double kPi = std::numbers::pi;

double rel_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return std::sqrt(num / std::max(den, 1e-300));
}

GridField mode(const TorusGrid& g, std::vector<int> xi) {
  return sample(g, [&](const std::vector<double>& x) {
    double ph = 0;
    for (std::size_t a = 0; a < x.size(); ++a) ph += xi[a] * x[a];
    return std::polar(1.0, ph);
  });
}

// exactly band-limited: frequencies up to 4 per axis
std::function<cplx(const std::vector<double>&)> trig(std::uint64_t seed) {
  auto f = random_trial_function(2, seed, {0, 0}, {0, 0});
  return [f](const std::vector<double>& x) {
    cplx acc = 0;
    for (const auto& [xi, c] : f.modes) acc += c * std::polar(1.0, xi[0] * x[0] + xi[1] * x[1]);
    return acc;
  };
}

}  // namespace

TEST(Lambda, TrivialCases) {
  TorusGrid g(2, 32);
  auto phi = sample(g, trig(1));
  EXPECT_LT(rel_diff(lambda_full(phi, 0).v, phi.v), 1e-15);
  auto c = sample(g, [](const std::vector<double>&) { return cplx(2.5, -1); });
  EXPECT_LT(rel_diff(lambda_full(c, 1.7).v, c.v), 1e-14);
  auto e = mode(g, {3, -2});
  auto le = lambda_full(e, 1.5);
  EXPECT_LT(rel_diff(le.v, (std::pow(14.0, 0.75) * e).v), 1e-13);
  EXPECT_THROW(TorusGrid(2, 12), hb::DomainError);
}

TEST(Lambda, GroupLaw) {
  TorusGrid g(2, 32);
  auto phi = sample(g, trig(2));
  for (double s : {-2.0, -0.5, 0.5, 1.0, 2.0})
    for (double t : {-1.0, 0.5, 2.0})
      EXPECT_LT(rel_diff(lambda_full(lambda_full(phi, s), t).v, lambda_full(phi, s + t).v), 1e-10);
  HalfGridField h = sample(HalfGrid(2, 32, 17, 1.0), trig(3));
  for (double s : {-1.0, 0.5, 2.0}) {
    EXPECT_LT(rel_diff(lambda_tangential(lambda_tangential(h, s), 0.5).v, lambda_tangential(h, s + 0.5).v), 1e-10);
    EXPECT_LT(rel_diff(lambda_tangential(lambda_tangential(h, s), -s).v, h.v), 1e-12);
  }
}

TEST(Lambda, TangentialIgnoresRadialProfile) {
  HalfGrid hg(2, 32, 9, 2.0);
  auto h = sample(hg, [](const std::vector<double>& x) { return cplx(std::exp(x[1]), x[1] * x[1]); });
  EXPECT_LT(rel_diff(lambda_tangential(h, 1.3).v, h.v), 1e-14);
  EXPECT_LT(rel_diff(lambda_tangential(h, 0).v, h.v), 1e-15);
}

TEST(Norms, SingleMode) {
  TorusGrid g(2, 32);
  auto e = mode(g, {2, 1});
  for (double s : {-1.0, 0.0, 0.5, 2.0})
    EXPECT_NEAR(sobolev_norm(e, s), std::pow(6.0, s / 2) * 2 * kPi, 1e-12 * std::pow(6.0, s / 2) * 2 * kPi);
}

TEST(Norms, TangentialZeroIsL2) {
  HalfGridField h = sample(HalfGrid(2, 32, 33, 1.5), trig(4));
  EXPECT_NEAR(tangential_norm(h, 0), std::sqrt(inner(h, h).real()), 1e-12 * tangential_norm(h, 0));
}

TEST(Norms, DNormOracle) {
  // phi = e^{i tau t} g(r), g = e^r cos 2r on [-2, 0]
  const double tau = 3, R = 2;
  auto g = [](double r) { return std::exp(r) * std::cos(2 * r); };
  auto gp = [](double r) { return std::exp(r) * (std::cos(2 * r) - 2 * std::sin(2 * r)); };
  using Q = boost::math::quadrature::gauss<double, 64>;
  double g2 = Q::integrate([&](double r) { return g(r) * g(r); }, -R, 0.0);
  double gp2 = Q::integrate([&](double r) { return gp(r) * gp(r); }, -R, 0.0);
  HalfGridField h = sample(HalfGrid(2, 16, 2049, R),
                           [&](const std::vector<double>& x) { return std::polar(g(x[1]), tau * x[0]); });
  for (double s : {-0.5, 0.0, 1.0}) {
    double oracle = 2 * kPi * (std::pow(1 + tau * tau, s + 1) * g2 + std::pow(1 + tau * tau, s) * gp2);
    EXPECT_NEAR(d_norm(h, s) * d_norm(h, s) / oracle, 1.0, 1e-6);
  }
  EXPECT_THROW(radial_derivative(sample(HalfGrid(2, 16, 4, 1.0), trig(1))), hb::DomainError);
}

TEST(Norms, RadialDerivativeFourthOrder) {
  auto err = [](std::size_t nr) {
    HalfGridField h = sample(HalfGrid(2, 8, nr, 1.0), [](const std::vector<double>& x) { return cplx(std::sin(3 * x[1])); });
    auto d = radial_derivative(h);
    double e = 0;
    for (std::size_t i = 0; i < h.v.size(); ++i)
      e = std::max(e, std::abs(d.v[i] - 3 * std::cos(3 * h.grid.point(i)[1])));
    return e;
  };
  double rate = std::log2(err(33) / err(65));
  EXPECT_GT(rate, 3.7);
}

TEST(Norms, DualityPairing) {
  TorusGrid g(2, 32);
  HalfGrid hg(2, 32, 17, 1.0);
  for (std::uint64_t seed = 10; seed < 20; ++seed) {
    auto a = sample(g, trig(seed)), b = sample(g, trig(seed + 100));
    auto ha = sample(hg, trig(seed)), hb_ = sample(hg, trig(seed + 100));
    for (double s : {0.5, 1.0, 2.0}) {
      EXPECT_LE(std::abs(inner(a, b)), sobolev_norm(a, -s) * sobolev_norm(b, s) * (1 + 1e-12));
      EXPECT_LE(std::abs(inner(ha, hb_)), tangential_norm(ha, -s) * tangential_norm(hb_, s) * (1 + 1e-12));
    }
  }
}

TEST(Kernel, LemmaHoldsOnLattice) {
  auto cfg = SobolevConfig::for_dim(1);
  std::vector<double> ks{-2, -0.5, 0, 1, 2, 3};
  for (auto part : {KernelPart::I, KernelPart::II, KernelPart::III}) {
    auto rep = kernel_lemma_check(part, ks, cfg);
    EXPECT_EQ(rep.violations, 0u) << static_cast<int>(part) << " max " << rep.max_violation;
    EXPECT_GT(rep.tuples, 0u);
  }
}

TEST(Kernel, ConstantCoversDegenerateExponents) {
  // k = 1: K3 is not identically zero, so the constant must be positive
  EXPECT_GT(kernel_iii_constant(1.0), 0.0);
  EXPECT_EQ(kernel_iii_constant(0.0), 0.0);
  SobolevConfig bad = SobolevConfig::for_dim(2);
  bad.a = 3;
  EXPECT_THROW(bad.validate(), hb::DomainError);
}

TEST(Commutators, TrivialCases) {
  TorusGrid g(2, 32);
  auto phi = sample(g, trig(5)), f = sample(g, trig(6));
  auto one = sample(g, [](const std::vector<double>&) { return cplx(1); });
  for (const auto& v : commutator(1.5, one, phi).v) EXPECT_EQ(v, cplx(0));
  for (const auto& v : commutator(0.0, f, phi).v) EXPECT_EQ(v, cplx(0));
  for (const auto& v : double_commutator(1.0, one, phi).v) EXPECT_EQ(v, cplx(0));
}

TEST(Commutators, RefinementBandLimited) {
  TorusGrid c(2, 32), fgrid(2, 64);
  auto at = [&](const TorusGrid& g) {
    auto f = sample(g, trig(7)), gg = sample(g, trig(8)), phi = sample(g, trig(9));
    return std::vector<GridField>{commutator(1.5, f, phi), double_commutator(1.0, f, phi),
                                  nested_commutator(2.0, f, gg, phi)};
  };
  auto a = at(c), b = at(fgrid);
  for (std::size_t n = 0; n < a.size(); ++n) {
    std::vector<cplx> sub;
    for (std::size_t i = 0; i < 32; ++i)
      for (std::size_t j = 0; j < 32; ++j) sub.push_back(b[n].v[(2 * i) * 64 + 2 * j]);
    EXPECT_LT(rel_diff(a[n].v, sub), 1e-8) << n;
  }
}

TEST(Battery, ConstantTrialAndSeedReproducible) {
  BatteryOptions opt;
  opt.trials = 4;
  for (auto q : all_inequalities()) {
    auto r1 = leibniz_battery(q, opt), r2 = leibniz_battery(q, opt);
    EXPECT_EQ(r1.ratios, r2.ratios);
    EXPECT_TRUE(std::isfinite(r1.max_ratio));
    EXPECT_GT(r1.max_ratio, 0.0);
    int part = static_cast<int>(q) % 4;
    if (part != 0) EXPECT_EQ(r1.ratios[0], 0.0) << inequality_name(q);
    EXPECT_EQ(r1.to_json().dump(), r2.to_json().dump());
  }
  EXPECT_EQ(inequality_from_name("T.iii"), Inequality::Tiii);
  EXPECT_THROW(inequality_from_name("B.i"), hb::DomainError);
}

TEST(Battery, SharedBumpProduct) {
  // ||f^2||_0 <= sup|f| ||f|| and sup|f| <= sum|c| <= sqrt(sum (1+|xi|^2)^-a) ||f||_a / (2pi)^{m/2}
  TorusGrid g(2, 64);
  auto f = sample(g, [](const std::vector<double>& x) { return cplx(std::exp(-(x[0] * x[0] + x[1] * x[1]) / 0.32)); });
  double zeta = 0;
  for (int i = -32; i < 32; ++i)
    for (int j = -32; j < 32; ++j) zeta += std::pow(1.0 + i * i + j * j, -2.0);
  double bound = std::sqrt(zeta) / (2 * kPi) / 2;
  double ratio = sobolev_norm(f * f, 0) / (2 * sobolev_norm(f, 2) * sobolev_norm(f, 0));
  EXPECT_LE(ratio, bound);
  EXPECT_LE(ratio, 1.0);
}

TEST(Battery, RefinementAndHomogeneity) {
  BatteryOptions opt;
  opt.trials = 6;
  for (auto q : all_inequalities()) {
    auto d = refinement_drift(q, opt);
    EXPECT_LE(d.drift, 0.2) << inequality_name(q) << " " << d.coarse << " " << d.fine;
    EXPECT_LE(homogeneity_factor(q, opt, 10.0), 1.0 + 1e-9) << inequality_name(q);
  }
}

TEST(HalfSpace, SubEstimateFiniteAndStable) {
  auto a = half_space_sub_estimate(64, 100, 3), b = half_space_sub_estimate(128, 100, 3);
  EXPECT_TRUE(std::isfinite(a.max_constant));
  EXPECT_GT(a.max_constant, 0.0);
  EXPECT_LE(std::abs(b.max_constant - a.max_constant) / a.max_constant, 0.2);
  EXPECT_EQ(a.to_json().dump(), half_space_sub_estimate(64, 100, 3).to_json().dump());
}
