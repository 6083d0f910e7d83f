#pragma once

#include <random>

#include "hodgebench/calculus/fields.hpp"

namespace hb::calc {

/// Random polynomial of total degree <= deg with small Gaussian-integer
/// coefficients; roughly half the monomials are present.
ScalarExpr random_polynomial(std::size_t nvars, int deg, std::mt19937_64& rng, bool complex = true);
VectorFieldExpr random_field(std::size_t dim, int deg, std::mt19937_64& rng);
FormExpr random_form(std::size_t dim, int degree, int poly_deg, std::mt19937_64& rng);

}  // namespace hb::calc
