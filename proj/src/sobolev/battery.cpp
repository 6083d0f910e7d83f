#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss.hpp>

#include "hodgebench/error.hpp"
#include "hodgebench/parallel.hpp"
#include "hodgebench/sobolev/sobolev.hpp"

namespace hb::sob {

namespace {

constexpr double kPi = std::numbers::pi;

double jp(double x2, double p) { return std::pow(1.0 + x2, p); }  // (1+|x|^2)^p

template <int Order>
double gl2(const std::function<double(double, double)>& f) {
  using Q = boost::math::quadrature::gauss<double, Order>;
  return Q::integrate([&](double t) { return Q::integrate([&](double tp) { return f(t, tp); }, 0.0, 1.0); }, 0.0, 1.0);
}

double gl2(int order, const std::function<double(double, double)>& f) {
  switch (order) {
    case 16: return gl2<16>(f);
    case 32: return gl2<32>(f);
    default: return gl2<64>(f);
  }
}

void record(KernelReport& rep, double lhs, double rhs) {
  ++rep.tuples;
  double excess = lhs - rhs;
  if (excess > 1e-12 * rhs) {
    ++rep.violations;
    rep.max_violation = std::max(rep.max_violation, rhs > 0 ? excess / rhs : lhs);
  }
}

}  // namespace

double kernel_iii_constant(double k) { return std::abs(k) * std::max(1.0, std::abs(k - 1.0)); }

KernelReport kernel_lemma_check(KernelPart part, const std::vector<double>& ks, const SobolevConfig& cfg) {
  cfg.validate();
  KernelReport rep;
  rep.part = part;
  if (part != KernelPart::III) {
    std::vector<std::array<int, 3>> lat;
    for (int a = -4; a <= 4; ++a)
      for (int b = -4; b <= 4; ++b)
        for (int c = -4; c <= 4; ++c) lat.push_back({a, b, c});
    auto sq = [](const std::array<int, 3>& v) { return double(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); };
    for (double k : ks)
      for (const auto& xi : lat)
        for (const auto& eta : lat) {
          std::array<int, 3> d{xi[0] - eta[0], xi[1] - eta[1], xi[2] - eta[2]};
          double x2 = sq(xi), e2 = sq(eta), d2 = sq(d);
          if (part == KernelPart::I) {
            record(rep, std::pow((1 + x2) / (1 + e2), k), std::pow(2.0, std::abs(k)) * jp(d2, std::abs(k)));
          } else {
            double k1 = jp(x2, k / 2) - jp(e2, k / 2);
            record(rep, std::abs(k1), std::abs(k) * std::sqrt(d2) * (jp(x2, (k - 1) / 2) + jp(e2, (k - 1) / 2)));
          }
        }
    return rep;
  }
  for (double k : ks) {
    double C = kernel_iii_constant(k);
    auto g = [k](double x) { return jp(x * x, k / 2); };
    for (int xi = -4; xi <= 4; ++xi)
      for (int e1 = -4; e1 <= 4; ++e1)
        for (int e2 = -4; e2 <= 4; ++e2) {
          // grouped so that the exact cancellations at xi = e2 and e1 = e2 survive rounding
          double k3 = (g(xi) - g(xi + e1 - e2)) + (g(e1) - g(e2));
          double integral = gl2(cfg.quad_order, [&](double t, double tp) {
            double x = xi + t * (e1 - e2) + tp * (e2 - xi);
            return jp(x * x, (k - 2) / 2);
          });
          record(rep, std::abs(k3), C * std::abs(xi - e2) * std::abs(e1 - e2) * integral);
        }
  }
  return rep;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

cplx TrialFunction::operator()(const std::vector<double>& x) const {
  if (constant) return 1.0;
  double d2 = 0;
  for (std::size_t a = 0; a < x.size(); ++a) {
    double d = std::remainder(x[a] - center[a], 2 * kPi);  // periodic distance
    d2 += d * d;
  }
  cplx acc = 0;
  for (const auto& [xi, c] : modes) {
    double ph = 0;
    for (std::size_t a = 0; a < x.size(); ++a) ph += xi[a] * x[a];
    acc += c * std::polar(1.0, ph);
  }
  return acc * std::exp(-d2 / (2 * width * width));
}

TrialFunction random_trial_function(std::size_t m, std::uint64_t seed, const std::vector<double>& lo,
                                    const std::vector<double>& hi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> n;
  TrialFunction f;
  f.center.resize(m);
  for (std::size_t a = 0; a < m; ++a) f.center[a] = lo[a] + (hi[a] - lo[a]) * u(rng);
  std::size_t count = 1;
  for (std::size_t a = 0; a < m; ++a) count *= 7;
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::vector<int> xi(m);
    std::size_t rem = idx;
    double s2 = 0;
    for (std::size_t a = 0; a < m; ++a) {
      xi[a] = static_cast<int>(rem % 7) - 3;
      rem /= 7;
      s2 += xi[a] * xi[a];
    }
    double re = n(rng), im = n(rng);
    f.modes.emplace_back(xi, cplx(re, im) * std::exp(-s2 / 8));
  }
  return f;
}

std::string inequality_name(Inequality q) {
  static const char* names[] = {"A.i", "A.ii", "A.iii", "A.iv", "T.i", "T.ii", "T.iii", "T.iv"};
  return names[static_cast<int>(q)];
}

Inequality inequality_from_name(const std::string& s) {
  for (auto q : all_inequalities())
    if (inequality_name(q) == s) return q;
  throw DomainError("unknown inequality '" + s + "'");
}

std::vector<Inequality> all_inequalities() {
  return {Inequality::Ai, Inequality::Aii, Inequality::Aiii, Inequality::Aiv,
          Inequality::Ti, Inequality::Tii, Inequality::Tiii, Inequality::Tiv};
}

namespace {

const std::vector<double> kSPos{0.0, 0.5, 1.0, 2.0};
const std::vector<double> kSAll{-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0};
const std::vector<double> kK{0.5, 1.0, 2.0};

struct Config {
  int form;
  double s, k;
};

std::vector<Config> configs(Inequality q) {
  int part = static_cast<int>(q) % 4;  // 0: i, 1: ii, 2: iii, 3: iv
  double kmin = part == 3 ? 2.0 : 1.0;
  std::vector<Config> out;
  if (part == 0) {
    for (double s : kSPos) out.push_back({1, s, 0});
    for (double s : kSAll) out.push_back({2, s, 0});
    return out;
  }
  for (double k : kK)
    if (k >= kmin)
      for (double s : kSPos) out.push_back({1, s, k});
  for (double k : kK)
    for (double s : kSAll) out.push_back({2, s, k});
  return out;
}

HalfGridField restrict_half(const GridField& f) {
  HalfGrid hg = HalfGrid::from_torus(f.grid);
  HalfGridField out(hg);
  std::size_t T = hg.slice(), N = f.grid.N;
  for (std::size_t it = 0; it < T; ++it)
    for (std::size_t ir = 0; ir < hg.nr; ++ir) out.v[ir * T + it] = f.v[it * N + ir];
  return out;
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t t) { return splitmix64(seed ^ splitmix64(t + 1)); }

constexpr int kMaxOrder = 9;

// Right-hand sides with C = 1. Fn(x) is the f-norm at offset x from the
// embedding index a (||f||_{x+a} or |f|_{ceil(x+a)}), Pn(s) the phi norm.
template <class FN, class GN, class PN>
double rhs(int part, const Config& c, FN Fn, GN Gn, PN Pn) {
  double s = c.s, k = c.k;
  if (part == 0) return c.form == 1 ? Fn(s) * Pn(0) + Fn(0) * Pn(s) : Fn(std::abs(s)) * Pn(s);
  if (part == 1) {
    if (c.form == 1) return Fn(s + k) * Pn(0) + Fn(k) * Pn(s) + Fn(s + 1) * Pn(k - 1) + Fn(1) * Pn(s + k - 1);
    return (Fn(std::abs(s + k - 1) + 1) + Fn(std::abs(s) + 1)) * Pn(s + k - 1);
  }
  if (part == 2) {
    if (c.form == 1)
      return Fn(2 * k + s) * Pn(0) + Fn(2 * k) * Pn(s) + Fn(2) * Pn(2 * k + s - 2) + Fn(s + 2) * Pn(2 * k - 2);
    return (Fn(std::abs(s + 2 * k - 2) + 2) + Fn(std::abs(s) + 2)) * Pn(s + 2 * k - 2);
  }
  if (c.form == 1)
    return (Fn(k - 1 + s) * Gn(1) + Fn(k - 1) * Gn(s + 1) + Fn(s + 1) * Gn(k - 1) + Fn(1) * Gn(k - 1 + s)) * Pn(0) +
           (Fn(k - 1) * Gn(1) + Fn(1) * Gn(k - 1)) * Pn(s) + (Fn(s + 1) * Gn(1) + Fn(1) * Gn(s + 1)) * Pn(k - 2) +
           Fn(1) * Gn(1) * Pn(k - 2 + s);
  double as = std::abs(s), ak = std::abs(k - 2);
  return (Fn(1 + as + ak) * Gn(1) + Fn(1 + as) * Gn(1 + ak) + Fn(1 + ak) * Gn(1 + as) + Fn(1) * Gn(1 + as + ak)) *
         Pn(s + k - 2);
}

double safe_ratio(double lhs, double r) { return r > 0 ? lhs / r : 0.0; }

template <class Field>
std::vector<double> evaluate_trial(int part, const std::vector<Config>& cfgs, const Field& f, const Field& g,
                                   const Field& phi, const std::function<double(double)>& Fn,
                                   const std::function<double(double)>& Gn) {
  Spectrum P = spectrum(phi);
  auto Pn = [&](double s) { return P.norm(s); };
  std::map<double, Spectrum> lhs;  // keyed by k
  std::vector<double> out;
  for (const auto& c : cfgs) {
    auto it = lhs.find(c.k);
    if (it == lhs.end()) {
      Field field = part == 0   ? f * phi
                    : part == 1 ? commutator(c.k, f, phi)
                    : part == 2 ? double_commutator(c.k, f, phi)
                                : nested_commutator(c.k, f, g, phi);
      it = lhs.emplace(c.k, spectrum(field)).first;
    }
    out.push_back(safe_ratio(it->second.norm(c.s), rhs(part, c, Fn, Gn, Pn)));
  }
  return out;
}

std::vector<double> run_trial(Inequality q, const BatteryOptions& opt, std::size_t t, const std::vector<Config>& cfgs) {
  int part = static_cast<int>(q) % 4;
  bool tangential = static_cast<int>(q) >= 4;
  std::size_t m = opt.m;
  double a = 1.0 + static_cast<double>(m) / 2.0;
  TorusGrid grid(m, opt.N);
  std::uint64_t base = trial_seed(opt.seed, t);
  std::vector<double> lo(m, -0.3), hi(m, 0.3), flo = lo, fhi = hi, plo = lo, phi_hi = hi;
  if (tangential) {
    flo[m - 1] = -1.4;
    fhi[m - 1] = -0.6;
    plo[m - 1] = -0.4;
    phi_hi[m - 1] = 0.0;
  }
  TrialFunction F = random_trial_function(m, splitmix64(base + 1), flo, fhi);
  TrialFunction G = random_trial_function(m, splitmix64(base + 2), flo, fhi);
  TrialFunction Ph = random_trial_function(m, splitmix64(base + 3), plo, phi_hi);
  if (t == 0) F.constant = true;
  GridField f = cplx(opt.f_scale) * sample(grid, F), g = sample(grid, G), phi = sample(grid, Ph);
  if (!tangential) {
    Spectrum sf = spectrum(f), sg = spectrum(g);
    return evaluate_trial<GridField>(
        part, cfgs, f, g, phi, [&](double x) { return sf.norm(x + a); }, [&](double x) { return sg.norm(x + a); });
  }
  auto df = derivative_sups(f, kMaxOrder, true), dg = derivative_sups(g, kMaxOrder, true);
  auto order = [a](double x) { return static_cast<int>(std::ceil(x + a - 1e-12)); };
  return evaluate_trial<HalfGridField>(
      part, cfgs, restrict_half(f), restrict_half(g), restrict_half(phi),
      [&](double x) { return ck_norm(df, order(x)); }, [&](double x) { return ck_norm(dg, order(x)); });
}

double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  double pos = q * static_cast<double>(v.size() - 1);
  std::size_t i = static_cast<std::size_t>(pos);
  if (i + 1 >= v.size()) return v.back();
  return v[i] + (pos - static_cast<double>(i)) * (v[i + 1] - v[i]);
}

}  // namespace

BatteryReport leibniz_battery(Inequality q, const BatteryOptions& opt) {
  if (opt.trials < 1) throw DomainError("trials must be >= 1");
  if (opt.m < 2) throw DomainError("batteries need m >= 2");
  auto cfgs = configs(q);
  std::vector<std::vector<double>> per_trial(opt.trials);
  parallel_for(opt.trials, [&](std::size_t t) { per_trial[t] = run_trial(q, opt, t, cfgs); });
  BatteryReport rep;
  rep.inequality = inequality_name(q);
  rep.m = opt.m;
  rep.N = opt.N;
  rep.trials = opt.trials;
  rep.seed = opt.seed;
  for (std::size_t ci = 0; ci < cfgs.size(); ++ci) rep.per_config.push_back({cfgs[ci].form, cfgs[ci].s, cfgs[ci].k, 0.0});
  for (const auto& r : per_trial) {
    double mx = 0;
    for (std::size_t ci = 0; ci < r.size(); ++ci) {
      mx = std::max(mx, r[ci]);
      rep.per_config[ci].max_ratio = std::max(rep.per_config[ci].max_ratio, r[ci]);
    }
    rep.ratios.push_back(mx);
  }
  rep.max_ratio = *std::max_element(rep.ratios.begin(), rep.ratios.end());
  for (double qq : {0.0, 0.25, 0.5, 0.75, 1.0}) rep.quantiles.push_back(quantile(rep.ratios, qq));
  return rep;
}

nlohmann::ordered_json BatteryReport::to_json() const {
  nlohmann::ordered_json j;
  j["inequality"] = inequality;
  j["grid"] = {{"m", m}, {"N", N}};
  j["seed"] = seed;
  j["trials"] = trials;
  j["max_ratio"] = max_ratio;
  j["quantiles"] = quantiles;
  auto& pc = j["per_config"] = nlohmann::ordered_json::array();
  for (const auto& c : per_config) pc.push_back({{"form", c.form}, {"s", c.s}, {"k", c.k}, {"max_ratio", c.max_ratio}});
  return j;
}

DriftReport refinement_drift(Inequality q, const BatteryOptions& opt) {
  BatteryOptions fine = opt;
  fine.N = 2 * opt.N;
  DriftReport d;
  d.coarse = leibniz_battery(q, opt).max_ratio;
  d.fine = leibniz_battery(q, fine).max_ratio;
  d.drift = d.coarse > 0 ? std::abs(d.fine - d.coarse) / d.coarse : std::abs(d.fine);
  return d;
}

double homogeneity_factor(Inequality q, const BatteryOptions& opt, double lambda) {
  BatteryOptions scaled = opt;
  scaled.f_scale = opt.f_scale * lambda;
  auto a = leibniz_battery(q, opt), b = leibniz_battery(q, scaled);
  double worst = 0;
  for (std::size_t t = 0; t < a.ratios.size(); ++t)
    if (a.ratios[t] > 0) worst = std::max(worst, b.ratios[t] / a.ratios[t]);
  return worst;
}

SubEstimateReport half_space_sub_estimate(std::size_t N, std::size_t trials, std::uint64_t seed) {
  if (trials < 1) throw DomainError("trials must be >= 1");
  HalfGrid hg = HalfGrid::from_torus(TorusGrid(2, N));
  SubEstimateReport rep;
  rep.N = N;
  rep.trials = trials;
  rep.seed = seed;
  rep.constants.assign(trials, 0.0);
  parallel_for(trials, [&](std::size_t t) {
    TrialFunction F = random_trial_function(2, splitmix64(trial_seed(seed, t) + 1), {-0.3, -0.3}, {0.3, 0.0});
    HalfGridField f = sample(hg, F);
    HalfGridField dt = tangential_derivative(f, 0), dr = radial_derivative(f);
    HalfGridField v1 = cplx(0.5) * (dt + cplx(0, 1) * dr);
    double lhs = std::pow(tangential_norm(dt, -0.5), 2) + std::pow(tangential_norm(dr, -0.5), 2);
    double base = std::pow(tangential_norm(v1, -0.5), 2) + boundary_l2_sq(f);
    rep.constants[t] = lhs / base;
  });
  rep.max_constant = *std::max_element(rep.constants.begin(), rep.constants.end());
  return rep;
}

nlohmann::ordered_json SubEstimateReport::to_json() const {
  nlohmann::ordered_json j;
  j["inequality"] = "half-space";
  j["grid"] = {{"m", 2}, {"N", N}};
  j["seed"] = seed;
  j["trials"] = trials;
  j["max_ratio"] = max_constant;
  std::vector<double> q;
  for (double qq : {0.0, 0.25, 0.5, 0.75, 1.0}) q.push_back(quantile(constants, qq));
  j["quantiles"] = q;
  return j;
}

}  // namespace hb::sob
