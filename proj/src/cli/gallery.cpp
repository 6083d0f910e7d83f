#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "hodgebench/cli/spec.hpp"
#include "hodgebench/error.hpp"

namespace hb::cli {

namespace {

std::string sphere(std::size_t n, const std::string& radius_sq = "1") {
  std::string s;
  for (std::size_t a = 1; a <= n; ++a) s += "z" + std::to_string(a) + "*zb" + std::to_string(a) + " + ";
  return s + "-" + radius_sq;
}

std::string header(const std::string& name, const std::string& chart) {
  return "# built-in example\n[options]\nname = " + name + "\n\n[chart]\n" + chart + "\n";
}

// Points of {z1 = z3 = ... = 0} on the unit sphere: the circle in z2.
std::string locus_points(std::size_t n, std::size_t count) {
  std::ostringstream o;
  for (std::size_t t = 0; t < count; ++t) {
    double th = 2 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(count);
    o << "point = ";
    for (std::size_t i = 0; i < 2 * n; ++i) {
      double v = i == 2 ? std::cos(th) : i == 3 ? std::sin(th) : 0.0;
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      o << (i ? ", " : "") << buf;
    }
    o << "\n";
  }
  return o.str();
}

std::string ball(std::size_t n) {
  return header("ball_c" + std::to_string(n) + "_dbar", "complex = " + std::to_string(n)) +
         "[boundary]\nr = \"" + sphere(n) + "\"\nsampler = sphere\ncount = 1000\n\n[algebroid]\nkind = antiholomorphic\n";
}

std::string poisson(std::size_t k) {
  std::size_t n = 2 * k + 2;
  return header("poisson_c" + std::to_string(n), "complex = " + std::to_string(n)) + "[boundary]\nr = \"" + sphere(n) +
         "\"\nsampler = sphere\ncount = 1000\n" + locus_points(n, 20) +
         "\n[algebroid]\nkind = holomorphic_poisson\nexample = " + std::to_string(k) + "\n";
}

}  // namespace

std::vector<std::string> gallery_names() {
  return {"tangent_sphere", "ball_c2_dbar", "ball_c3_dbar", "annulus_c3_dbar",
          "poisson_c4",     "poisson_c6",   "symplectic_gc", "graph_bivector_demo"};
}

std::string gallery_text(const std::string& name) {
  if (name == "tangent_sphere")
    return header(name, "dim = 3") +
           "[boundary]\nr = \"x1^2 + x2^2 + x3^2 - 1\"\nsampler = sphere\ncount = 1000\n\n[algebroid]\nkind = tangent\n";
  if (name == "ball_c2_dbar") return ball(2);
  if (name == "ball_c3_dbar") return ball(3);
  if (name == "annulus_c3_dbar")
    return header(name, "complex = 3") + "[boundary]\nr = \"(" + sphere(3) + ")*(" + sphere(3, "1/4") +
           ")\"\nsampler = spheres\ncount = 500\nradii = 1, 0.5\n\n[algebroid]\nkind = antiholomorphic\n";
  if (name == "poisson_c4") return poisson(1);
  if (name == "poisson_c6") return poisson(2);
  if (name == "symplectic_gc")
    return header(name, "dim = 4") +
           "[boundary]\nr = \"x1^2 + x2^2 + x3^2 + x4^2 - 1\"\nsampler = sphere\ncount = 1000\n\n"
           "[algebroid]\nkind = graph_two_form\nomega.1.2 = \"1\"\nomega.3.4 = \"1\"\ngeneralized_complex = true\n";
  if (name == "graph_bivector_demo")
    // pi = d1^d2 + x2 d2^d3 fails the Jacobi identity
    return header(name, "dim = 3") +
           "[boundary]\nr = \"x1^2 + x2^2 + x3^2 - 1\"\nsampler = sphere\ncount = 200\n\n"
           "[algebroid]\nkind = graph_bivector\npi.1.2 = \"1\"\npi.2.3 = \"x2\"\n";
  throw Error("unknown gallery example '" + name + "'");
}

}  // namespace hb::cli
