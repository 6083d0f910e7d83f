#include "hodgebench/calculus/random.hpp"

#include <functional>

namespace hb::calc {

ScalarExpr random_polynomial(std::size_t nvars, int deg, std::mt19937_64& rng, bool complex) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::bernoulli_distribution keep(0.5);
  Polynomial p(nvars);
  Exponents e(nvars, 0);
  // enumerate monomials of total degree <= deg
  std::function<void(std::size_t, int)> rec = [&](std::size_t k, int left) {
    if (k == nvars) {
      if (keep(rng)) {
        long re = coef(rng);
        long im = complex ? coef(rng) : 0;
        p.add_term(e, GaussianRational(re, im));
      }
      return;
    }
    for (int d = 0; d <= left; ++d) {
      e[k] = static_cast<std::uint16_t>(d);
      rec(k + 1, left - d);
    }
    e[k] = 0;
  };
  rec(0, deg);
  return ScalarExpr(p);
}

VectorFieldExpr random_field(std::size_t dim, int deg, std::mt19937_64& rng) {
  VectorFieldExpr X(dim);
  for (std::size_t i = 0; i < dim; ++i) X[i] = random_polynomial(dim, deg, rng);
  return X;
}

FormExpr random_form(std::size_t dim, int degree, int poly_deg, std::mt19937_64& rng) {
  FormExpr w(dim, degree);
  FormExpr::Index idx(degree);
  std::function<void(int, int)> rec = [&](int slot, int start) {
    if (slot == degree) {
      w.set(idx, random_polynomial(dim, poly_deg, rng));
      return;
    }
    for (int j = start; j < static_cast<int>(dim); ++j) {
      idx[slot] = j;
      rec(slot + 1, j + 1);
    }
  };
  rec(0, 0);
  return w;
}

}  // namespace hb::calc
