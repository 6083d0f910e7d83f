#include "hodgebench/boundary/sampler.hpp"

#include <cmath>
#include <numbers>

#include "hodgebench/error.hpp"

namespace hb::bnd {

namespace {

// Root of x^{d+1} = x + 1, the generalized golden ratio of the R_d sequence.
double generalized_phi(std::size_t d) {
  double x = 2.0;
  for (int it = 0; it < 64; ++it) x = std::pow(1.0 + x, 1.0 / static_cast<double>(d + 1));
  return x;
}

}  // namespace

std::vector<Point> sphere_lattice(std::size_t m, std::size_t count, double radius) {
  if (m < 2) throw DomainError("sphere lattice needs dimension >= 2");
  std::vector<Point> out;
  out.reserve(count);
  if (m == 3) {
    const double ga = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t i = 0; i < count; ++i) {
      double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(count);
      double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      double th = ga * static_cast<double>(i);
      out.push_back({radius * rho * std::cos(th), radius * rho * std::sin(th), radius * z});
    }
    return out;
  }
  std::size_t d = m + (m % 2);  // Box-Muller consumes pairs
  double g = generalized_phi(d);
  std::vector<double> alpha(d);
  for (std::size_t j = 0; j < d; ++j) alpha[j] = std::fmod(1.0 / std::pow(g, static_cast<double>(j + 1)), 1.0);
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<double> u(d);
    for (std::size_t j = 0; j < d; ++j) {
      double v = std::fmod(0.5 + static_cast<double>(i + 1) * alpha[j], 1.0);
      u[j] = std::max(v, 1e-300);
    }
    Point p(m);
    double norm = 0;
    for (std::size_t j = 0; j + 1 < d + 1 && j < m; j += 2) {
      double rr = std::sqrt(-2.0 * std::log(u[j]));
      double th = 2.0 * std::numbers::pi * u[j + 1];
      p[j] = rr * std::cos(th);
      if (j + 1 < m) p[j + 1] = rr * std::sin(th);
    }
    for (double v : p) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : p) v *= radius / norm;
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Point> multi_sphere_lattice(std::size_t m, std::size_t count_per_radius,
                                        const std::vector<double>& radii) {
  std::vector<Point> out;
  for (double r : radii) {
    auto pts = sphere_lattice(m, count_per_radius, r);
    out.insert(out.end(), pts.begin(), pts.end());
  }
  return out;
}

}  // namespace hb::bnd
