#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

namespace hb::sob {

using cplx = std::complex<double>;

/// Periodic grid on [-pi, pi)^m with N points per axis. Frequencies are the
/// integers in [-N/2, N/2).
struct TorusGrid {
  std::size_t m = 2;
  std::size_t N = 64;

  TorusGrid() = default;
  TorusGrid(std::size_t m, std::size_t N);
  std::size_t size() const;
  double spacing() const;
  /// Coordinates of node `idx` (axis 0 varies slowest).
  std::vector<double> point(std::size_t idx) const;
  /// Integer frequency of FFT slot `idx`.
  std::vector<int> freq(std::size_t idx) const;
};

struct GridField {
  TorusGrid grid;
  std::vector<cplx> v;

  GridField() = default;
  explicit GridField(TorusGrid g) : grid(g), v(g.size()) {}
};

/// Tangential torus [-pi, pi)^(m-1) with nt points per axis times the
/// radial interval [-R, 0] with nr points (r = 0 is the boundary).
struct HalfGrid {
  std::size_t m = 2;
  std::size_t nt = 64;
  std::size_t nr = 33;
  double R = 3.141592653589793;

  HalfGrid() = default;
  HalfGrid(std::size_t m, std::size_t nt, std::size_t nr, double R);
  /// Restriction of the torus grid to r <= 0, so nr = N/2 + 1 and R = pi.
  static HalfGrid from_torus(const TorusGrid& t);
  std::size_t slice() const;  // nodes per radial slice
  std::size_t size() const { return slice() * nr; }
  double h() const { return R / static_cast<double>(nr - 1); }
  double radial(std::size_t ir) const { return -R + h() * static_cast<double>(ir); }
  std::vector<double> point(std::size_t idx) const;  // (t..., r)
};

/// Values stored radial-major: v[ir * slice + it].
struct HalfGridField {
  HalfGrid grid;
  std::vector<cplx> v;

  HalfGridField() = default;
  explicit HalfGridField(HalfGrid g) : grid(g), v(g.size()) {}
};

struct SobolevConfig {
  std::size_t m = 2;
  double a = 2.0;  // 1 + m/2
  int quad_order = 32;

  static SobolevConfig for_dim(std::size_t m);
  void validate() const;
};

GridField sample(const TorusGrid& g, const std::function<cplx(const std::vector<double>&)>& f);
HalfGridField sample(const HalfGrid& g, const std::function<cplx(const std::vector<double>&)>& f);

/// (1 + |xi|^2)^{s/2} applied in Fourier space.
GridField lambda_full(const GridField& phi, double s);
/// Tangential multiplier (1 + |tau|^2)^{s/2}, slice by slice.
HalfGridField lambda_tangential(const HalfGridField& phi, double s);

inline GridField lambda(const GridField& phi, double s) { return lambda_full(phi, s); }
inline HalfGridField lambda(const HalfGridField& phi, double s) { return lambda_tangential(phi, s); }

GridField operator*(const GridField& a, const GridField& b);
GridField operator-(const GridField& a, const GridField& b);
GridField operator*(cplx c, const GridField& a);
HalfGridField operator*(const HalfGridField& a, const HalfGridField& b);
HalfGridField operator-(const HalfGridField& a, const HalfGridField& b);
HalfGridField operator+(const HalfGridField& a, const HalfGridField& b);
HalfGridField operator*(cplx c, const HalfGridField& a);

/// Weighted Fourier energies of a field: one transform, then any norm.
/// Tangential spectra fold the radial trapezoid weights into e.
struct Spectrum {
  std::vector<double> w;  // |xi|^2 per slot
  std::vector<double> e;  // |c_xi|^2 per slot
  double vol = 1;         // (2 pi)^dim of the transformed variables
  double norm(double s) const;
};
Spectrum spectrum(const GridField& phi);
Spectrum spectrum(const HalfGridField& phi);

double sobolev_norm(const GridField& phi, double s);
double tangential_norm(const HalfGridField& phi, double s);
/// ||D phi||_{d,s}^2 = ||phi||_{d,s+1}^2 + ||d_r phi||_{d,s}^2.
double d_norm(const HalfGridField& phi, double s);
/// L2 inner product (a, b), linear in a.
cplx inner(const GridField& a, const GridField& b);
cplx inner(const HalfGridField& a, const HalfGridField& b);
/// Integral of |phi|^2 over the boundary slice r = 0.
double boundary_l2_sq(const HalfGridField& phi);

/// 4th order finite differences, one-sided at both ends. Needs nr >= 5.
HalfGridField radial_derivative(const HalfGridField& phi);
/// Spectral derivative along tangential axis `axis`.
HalfGridField tangential_derivative(const HalfGridField& phi, std::size_t axis);
/// Spectral partial derivative d^alpha on the torus.
GridField spectral_derivative(const GridField& phi, const std::vector<int>& alpha);

/// Sup norms of all derivatives up to order kmax, read on the nodes with
/// last coordinate <= 0 (or all nodes when `half_only` is false).
/// out[j] = max_{|alpha| = j} sup |d^alpha f|.
std::vector<double> derivative_sups(const GridField& f, int kmax, bool half_only);
/// |f|_k := max_{j <= k} of the above.
double ck_norm(const std::vector<double>& sups, int k);

template <class F>
F commutator(double k, const F& f, const F& phi) {
  return lambda(f * phi, k) - f * lambda(phi, k);
}
template <class F>
F double_commutator(double k, const F& f, const F& phi) {
  return lambda(commutator(k, f, phi), k) - commutator(k, f, lambda(phi, k));
}
template <class F>
F nested_commutator(double k, const F& f, const F& g, const F& phi) {
  return commutator(k, f, g * phi) - g * commutator(k, f, phi);
}

enum class KernelPart { I, II, III };

struct KernelReport {
  KernelPart part = KernelPart::I;
  std::size_t tuples = 0;
  std::size_t violations = 0;
  double max_violation = 0;  // max over tuples of (LHS - RHS) / RHS, zero-RHS cases count LHS
};

/// i), ii) on pairs from {-4..4}^3; iii) on triples of scalars in {-4..4}
/// (m = 1), with the double integral done by Gauss-Legendre of the
/// configured order.
KernelReport kernel_lemma_check(KernelPart part, const std::vector<double>& ks, const SobolevConfig& cfg);
/// Constant used in part iii): |k| max(1, |k-1|).
double kernel_iii_constant(double k);

enum class Inequality { Ai, Aii, Aiii, Aiv, Ti, Tii, Tiii, Tiv };
std::string inequality_name(Inequality q);
Inequality inequality_from_name(const std::string& s);
std::vector<Inequality> all_inequalities();

struct BatteryOptions {
  std::size_t m = 2;
  std::size_t N = 64;
  std::size_t trials = 16;
  std::uint64_t seed = 7;
  double f_scale = 1.0;  // multiplies f before evaluation (homogeneity check)
};

struct ConfigRatio {
  int form = 1;  // 1: s >= 0 form, 2: all-s form
  double s = 0, k = 0;
  double max_ratio = 0;
};

struct BatteryReport {
  std::string inequality;
  std::size_t m = 2, N = 64, trials = 0;
  std::uint64_t seed = 0;
  double max_ratio = 0;
  std::vector<double> ratios;          // per trial, max over configurations
  std::vector<double> quantiles;       // 0, .25, .5, .75, 1
  std::vector<ConfigRatio> per_config;

  nlohmann::ordered_json to_json() const;
};

/// Ratio LHS / RHS(C = 1) per trial. Trial 0 uses f = 1.
BatteryReport leibniz_battery(Inequality q, const BatteryOptions& opt);

struct DriftReport {
  double coarse = 0, fine = 0, drift = 0;  // drift = |fine - coarse| / coarse
};
DriftReport refinement_drift(Inequality q, const BatteryOptions& opt);

/// max over trials of ratio(lambda f) / ratio(f).
double homogeneity_factor(Inequality q, const BatteryOptions& opt, double lambda);

struct SubEstimateReport {
  std::size_t N = 64, trials = 0;
  std::uint64_t seed = 0;
  double max_constant = 0;
  std::vector<double> constants;

  nlohmann::ordered_json to_json() const;
};

/// sum_i ||d_i f||^2_{d,-1/2} <= C ||v1 f||^2_{d,-1/2} + C int_{r=0} |f|^2 with
/// v1 = (d_t + i d_r) / 2 on the 2-D half grid; reports the empirical C.
SubEstimateReport half_space_sub_estimate(std::size_t N, std::size_t trials, std::uint64_t seed);

std::uint64_t splitmix64(std::uint64_t x);

/// Gaussian-windowed random trigonometric polynomial, frequencies |xi_i| <= 3.
struct TrialFunction {
  std::vector<double> center;
  double width = 0.4;
  std::vector<std::pair<std::vector<int>, cplx>> modes;
  bool constant = false;

  cplx operator()(const std::vector<double>& x) const;
};
TrialFunction random_trial_function(std::size_t m, std::uint64_t seed, const std::vector<double>& center_lo,
                                    const std::vector<double>& center_hi);

}  // namespace hb::sob
