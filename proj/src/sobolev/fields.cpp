#include <algorithm>
#include <cmath>
#include <numbers>

#include "fft.hpp"
#include "hodgebench/error.hpp"
#include "hodgebench/sobolev/sobolev.hpp"

namespace hb::sob {

namespace {

constexpr double kPi = std::numbers::pi;

int wrap_freq(std::size_t j, std::size_t N) {
  return j < N / 2 ? static_cast<int>(j) : static_cast<int>(j) - static_cast<int>(N);
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

// |xi|^2 per slot of an m-dimensional N^m transform
std::vector<double> freq_sq(std::size_t m, std::size_t N) {
  std::size_t n = ipow(N, m);
  std::vector<double> out(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::size_t rem = idx;
    double s = 0;
    for (std::size_t a = 0; a < m; ++a) {
      std::size_t stride = ipow(N, m - 1 - a);
      int xi = wrap_freq(rem / stride, N);
      rem %= stride;
      s += static_cast<double>(xi) * xi;
    }
    out[idx] = s;
  }
  return out;
}

std::vector<int> dims_of(std::size_t m, std::size_t N) { return std::vector<int>(m, static_cast<int>(N)); }

void check_same(const TorusGrid& a, const TorusGrid& b) {
  if (a.m != b.m || a.N != b.N) throw DomainError("grid mismatch");
}
void check_same(const HalfGrid& a, const HalfGrid& b) {
  if (a.m != b.m || a.nt != b.nt || a.nr != b.nr || a.R != b.R) throw DomainError("half grid mismatch");
}

// trapezoid weights along r
double trap_weight(const HalfGrid& g, std::size_t ir) {
  return (ir == 0 || ir + 1 == g.nr) ? 0.5 * g.h() : g.h();
}

}  // namespace

TorusGrid::TorusGrid(std::size_t m_, std::size_t N_) : m(m_), N(N_) {
  if (m == 0) throw DomainError("torus dimension must be positive");
  if (N < 16 || (N & (N - 1)) != 0) throw DomainError("N must be a power of two >= 16");
}

std::size_t TorusGrid::size() const { return ipow(N, m); }
double TorusGrid::spacing() const { return 2 * kPi / static_cast<double>(N); }

std::vector<double> TorusGrid::point(std::size_t idx) const {
  std::vector<double> x(m);
  for (std::size_t a = 0; a < m; ++a) {
    std::size_t stride = ipow(N, m - 1 - a);
    x[a] = -kPi + spacing() * static_cast<double>((idx / stride) % N);
  }
  return x;
}

std::vector<int> TorusGrid::freq(std::size_t idx) const {
  std::vector<int> xi(m);
  for (std::size_t a = 0; a < m; ++a) xi[a] = wrap_freq((idx / ipow(N, m - 1 - a)) % N, N);
  return xi;
}

HalfGrid::HalfGrid(std::size_t m_, std::size_t nt_, std::size_t nr_, double R_) : m(m_), nt(nt_), nr(nr_), R(R_) {
  if (m < 1) throw DomainError("half grid needs m >= 1");
  if (m > 1 && (nt < 4 || (nt & (nt - 1)) != 0)) throw DomainError("nt must be a power of two");
  if (nr < 2 || !(R > 0)) throw DomainError("bad radial axis");
}

HalfGrid HalfGrid::from_torus(const TorusGrid& t) { return HalfGrid(t.m, t.N, t.N / 2 + 1, kPi); }

std::size_t HalfGrid::slice() const { return m > 1 ? ipow(nt, m - 1) : 1; }

std::vector<double> HalfGrid::point(std::size_t idx) const {
  std::vector<double> x(m);
  std::size_t T = slice(), it = idx % T;
  double ht = 2 * kPi / static_cast<double>(nt);
  for (std::size_t a = 0; a + 1 < m; ++a) {
    std::size_t stride = ipow(nt, m - 2 - a);
    x[a] = -kPi + ht * static_cast<double>((it / stride) % nt);
  }
  x[m - 1] = radial(idx / T);
  return x;
}

SobolevConfig SobolevConfig::for_dim(std::size_t m) {
  SobolevConfig c;
  c.m = m;
  c.a = 1.0 + static_cast<double>(m) / 2.0;
  return c;
}

void SobolevConfig::validate() const {
  if (std::abs(a - (1.0 + static_cast<double>(m) / 2.0)) > 1e-15) throw DomainError("a must equal 1 + m/2");
  if (quad_order != 16 && quad_order != 32 && quad_order != 64) throw DomainError("quadrature order must be 16, 32 or 64");
}

GridField sample(const TorusGrid& g, const std::function<cplx(const std::vector<double>&)>& f) {
  GridField out(g);
  for (std::size_t i = 0; i < g.size(); ++i) out.v[i] = f(g.point(i));
  return out;
}

HalfGridField sample(const HalfGrid& g, const std::function<cplx(const std::vector<double>&)>& f) {
  HalfGridField out(g);
  for (std::size_t i = 0; i < g.size(); ++i) out.v[i] = f(g.point(i));
  return out;
}

GridField lambda_full(const GridField& phi, double s) {
  if (s == 0) return phi;
  const auto& g = phi.grid;
  GridField out = phi;
  detail::fft(out.v.data(), dims_of(g.m, g.N), 1, -1);
  auto w = freq_sq(g.m, g.N);
  double n = static_cast<double>(g.size());
  for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] *= std::pow(1.0 + w[i], s / 2) / n;
  detail::fft(out.v.data(), dims_of(g.m, g.N), 1, 1);
  return out;
}

HalfGridField lambda_tangential(const HalfGridField& phi, double s) {
  const auto& g = phi.grid;
  if (s == 0 || g.m == 1) return phi;
  HalfGridField out = phi;
  std::size_t T = g.slice();
  detail::fft(out.v.data(), dims_of(g.m - 1, g.nt), static_cast<int>(g.nr), -1);
  auto w = freq_sq(g.m - 1, g.nt);
  for (std::size_t ir = 0; ir < g.nr; ++ir)
    for (std::size_t it = 0; it < T; ++it) out.v[ir * T + it] *= std::pow(1.0 + w[it], s / 2) / double(T);
  detail::fft(out.v.data(), dims_of(g.m - 1, g.nt), static_cast<int>(g.nr), 1);
  return out;
}

GridField operator*(const GridField& a, const GridField& b) {
  check_same(a.grid, b.grid);
  GridField out(a.grid);
  for (std::size_t i = 0; i < a.v.size(); ++i) out.v[i] = a.v[i] * b.v[i];
  return out;
}
GridField operator-(const GridField& a, const GridField& b) {
  check_same(a.grid, b.grid);
  GridField out(a.grid);
  for (std::size_t i = 0; i < a.v.size(); ++i) out.v[i] = a.v[i] - b.v[i];
  return out;
}
GridField operator*(cplx c, const GridField& a) {
  GridField out = a;
  for (auto& v : out.v) v *= c;
  return out;
}
HalfGridField operator*(const HalfGridField& a, const HalfGridField& b) {
  check_same(a.grid, b.grid);
  HalfGridField out(a.grid);
  for (std::size_t i = 0; i < a.v.size(); ++i) out.v[i] = a.v[i] * b.v[i];
  return out;
}
HalfGridField operator-(const HalfGridField& a, const HalfGridField& b) {
  check_same(a.grid, b.grid);
  HalfGridField out(a.grid);
  for (std::size_t i = 0; i < a.v.size(); ++i) out.v[i] = a.v[i] - b.v[i];
  return out;
}
HalfGridField operator+(const HalfGridField& a, const HalfGridField& b) {
  check_same(a.grid, b.grid);
  HalfGridField out(a.grid);
  for (std::size_t i = 0; i < a.v.size(); ++i) out.v[i] = a.v[i] + b.v[i];
  return out;
}
HalfGridField operator*(cplx c, const HalfGridField& a) {
  HalfGridField out = a;
  for (auto& v : out.v) v *= c;
  return out;
}

double Spectrum::norm(double s) const {
  double acc = 0;
  for (std::size_t i = 0; i < w.size(); ++i) acc += std::pow(1.0 + w[i], s) * e[i];
  return std::sqrt(vol * acc);
}

Spectrum spectrum(const GridField& phi) {
  const auto& g = phi.grid;
  std::vector<cplx> c = phi.v;
  detail::fft(c.data(), dims_of(g.m, g.N), 1, -1);
  Spectrum sp;
  sp.w = freq_sq(g.m, g.N);
  sp.e.resize(c.size());
  double n = static_cast<double>(g.size());
  for (std::size_t i = 0; i < c.size(); ++i) sp.e[i] = std::norm(c[i] / n);
  sp.vol = std::pow(2 * kPi, static_cast<double>(g.m));
  return sp;
}

Spectrum spectrum(const HalfGridField& phi) {
  const auto& g = phi.grid;
  std::size_t T = g.slice();
  std::vector<cplx> c = phi.v;
  if (g.m > 1) detail::fft(c.data(), dims_of(g.m - 1, g.nt), static_cast<int>(g.nr), -1);
  Spectrum sp;
  sp.w = g.m > 1 ? freq_sq(g.m - 1, g.nt) : std::vector<double>(1, 0.0);
  sp.e.assign(T, 0.0);
  for (std::size_t ir = 0; ir < g.nr; ++ir)
    for (std::size_t it = 0; it < T; ++it) sp.e[it] += trap_weight(g, ir) * std::norm(c[ir * T + it] / double(T));
  sp.vol = std::pow(2 * kPi, static_cast<double>(g.m - 1));
  return sp;
}

double sobolev_norm(const GridField& phi, double s) { return spectrum(phi).norm(s); }
double tangential_norm(const HalfGridField& phi, double s) { return spectrum(phi).norm(s); }

double d_norm(const HalfGridField& phi, double s) {
  double a = tangential_norm(phi, s + 1), b = tangential_norm(radial_derivative(phi), s);
  return std::sqrt(a * a + b * b);
}

cplx inner(const GridField& a, const GridField& b) {
  check_same(a.grid, b.grid);
  cplx acc = 0;
  for (std::size_t i = 0; i < a.v.size(); ++i) acc += a.v[i] * std::conj(b.v[i]);
  return acc * std::pow(a.grid.spacing(), static_cast<double>(a.grid.m));
}

cplx inner(const HalfGridField& a, const HalfGridField& b) {
  check_same(a.grid, b.grid);
  const auto& g = a.grid;
  std::size_t T = g.slice();
  double cell = std::pow(2 * kPi / static_cast<double>(g.nt), static_cast<double>(g.m - 1));
  cplx acc = 0;
  for (std::size_t ir = 0; ir < g.nr; ++ir) {
    cplx sl = 0;
    for (std::size_t it = 0; it < T; ++it) sl += a.v[ir * T + it] * std::conj(b.v[ir * T + it]);
    acc += trap_weight(g, ir) * cell * sl;
  }
  return acc;
}

double boundary_l2_sq(const HalfGridField& phi) {
  const auto& g = phi.grid;
  std::size_t T = g.slice();
  double cell = std::pow(2 * kPi / static_cast<double>(g.nt), static_cast<double>(g.m - 1)), acc = 0;
  for (std::size_t it = 0; it < T; ++it) acc += std::norm(phi.v[(g.nr - 1) * T + it]);
  return cell * acc;
}

HalfGridField radial_derivative(const HalfGridField& phi) {
  const auto& g = phi.grid;
  if (g.nr < 5) throw DomainError("radial derivative needs nr >= 5");
  std::size_t T = g.slice(), n = g.nr;
  double d = 12.0 * g.h();
  HalfGridField out(g);
  auto at = [&](std::size_t ir, std::size_t it) { return phi.v[ir * T + it]; };
  for (std::size_t it = 0; it < T; ++it) {
    out.v[0 * T + it] = (-25.0 * at(0, it) + 48.0 * at(1, it) - 36.0 * at(2, it) + 16.0 * at(3, it) - 3.0 * at(4, it)) / d;
    out.v[1 * T + it] = (-3.0 * at(0, it) - 10.0 * at(1, it) + 18.0 * at(2, it) - 6.0 * at(3, it) + at(4, it)) / d;
    for (std::size_t ir = 2; ir + 2 < n; ++ir)
      out.v[ir * T + it] = (at(ir - 2, it) - 8.0 * at(ir - 1, it) + 8.0 * at(ir + 1, it) - at(ir + 2, it)) / d;
    out.v[(n - 2) * T + it] = (3.0 * at(n - 1, it) + 10.0 * at(n - 2, it) - 18.0 * at(n - 3, it) + 6.0 * at(n - 4, it) -
                               at(n - 5, it)) / d;
    out.v[(n - 1) * T + it] = (25.0 * at(n - 1, it) - 48.0 * at(n - 2, it) + 36.0 * at(n - 3, it) -
                               16.0 * at(n - 4, it) + 3.0 * at(n - 5, it)) / d;
  }
  return out;
}

HalfGridField tangential_derivative(const HalfGridField& phi, std::size_t axis) {
  const auto& g = phi.grid;
  if (axis + 1 >= g.m) throw DomainError("no such tangential axis");
  std::size_t T = g.slice(), mt = g.m - 1;
  HalfGridField out = phi;
  detail::fft(out.v.data(), dims_of(mt, g.nt), static_cast<int>(g.nr), -1);
  std::size_t stride = ipow(g.nt, mt - 1 - axis);
  for (std::size_t it = 0; it < T; ++it) {
    std::size_t j = (it / stride) % g.nt;
    double xi = (j == g.nt / 2) ? 0.0 : wrap_freq(j, g.nt);
    for (std::size_t ir = 0; ir < g.nr; ++ir) out.v[ir * T + it] *= cplx(0, xi) / double(T);
  }
  detail::fft(out.v.data(), dims_of(mt, g.nt), static_cast<int>(g.nr), 1);
  return out;
}

namespace {

GridField derivative_from_coeffs(const std::vector<cplx>& c, const TorusGrid& g, const std::vector<int>& alpha) {
  GridField out(g);
  double n = static_cast<double>(g.size());
  for (std::size_t idx = 0; idx < c.size(); ++idx) {
    cplx mult = 1.0 / n;
    for (std::size_t a = 0; a < g.m; ++a) {
      if (alpha[a] == 0) continue;
      std::size_t j = (idx / ipow(g.N, g.m - 1 - a)) % g.N;
      if (j == g.N / 2) {
        mult = 0;
        break;
      }
      mult *= std::pow(cplx(0, wrap_freq(j, g.N)), alpha[a]);
    }
    out.v[idx] = c[idx] * mult;
  }
  detail::fft(out.v.data(), dims_of(g.m, g.N), 1, 1);
  return out;
}

void multi_indices(std::size_t m, int total, std::vector<int>& cur, std::size_t pos, std::vector<std::vector<int>>& out) {
  if (pos + 1 == m) {
    cur[pos] = total;
    out.push_back(cur);
    return;
  }
  for (int i = total; i >= 0; --i) {
    cur[pos] = i;
    multi_indices(m, total - i, cur, pos + 1, out);
  }
}

}  // namespace

GridField spectral_derivative(const GridField& phi, const std::vector<int>& alpha) {
  if (alpha.size() != phi.grid.m) throw DomainError("multi-index length mismatch");
  std::vector<cplx> c = phi.v;
  detail::fft(c.data(), dims_of(phi.grid.m, phi.grid.N), 1, -1);
  return derivative_from_coeffs(c, phi.grid, alpha);
}

std::vector<double> derivative_sups(const GridField& f, int kmax, bool half_only) {
  const auto& g = f.grid;
  std::vector<cplx> c = f.v;
  detail::fft(c.data(), dims_of(g.m, g.N), 1, -1);
  std::vector<double> out(static_cast<std::size_t>(kmax) + 1, 0.0);
  for (int j = 0; j <= kmax; ++j) {
    std::vector<std::vector<int>> alphas;
    std::vector<int> cur(g.m, 0);
    multi_indices(g.m, j, cur, 0, alphas);
    for (const auto& alpha : alphas) {
      GridField d = j == 0 ? f : derivative_from_coeffs(c, g, alpha);
      for (std::size_t idx = 0; idx < d.v.size(); ++idx) {
        if (half_only && idx % g.N > g.N / 2) continue;  // last axis varies fastest
        out[j] = std::max(out[j], std::abs(d.v[idx]));
      }
    }
  }
  return out;
}

double ck_norm(const std::vector<double>& sups, int k) {
  if (k < 0 || static_cast<std::size_t>(k) >= sups.size()) throw DomainError("derivative order out of range");
  double m = 0;
  for (int j = 0; j <= k; ++j) m = std::max(m, sups[j]);
  return m;
}

}  // namespace hb::sob
