#pragma once

#include <vector>

namespace hb::bnd {

using Point = std::vector<double>;

/// Deterministic quasi-uniform points on the sphere of the given radius in
/// R^m. m == 3 uses the Fibonacci spiral; other dimensions push an R_d
/// Kronecker sequence through Box-Muller and normalize.
std::vector<Point> sphere_lattice(std::size_t m, std::size_t count, double radius = 1.0);

/// One lattice per radius, concatenated in the order given.
std::vector<Point> multi_sphere_lattice(std::size_t m, std::size_t count_per_radius,
                                        const std::vector<double>& radii);

}  // namespace hb::bnd
