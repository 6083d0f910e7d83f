#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hodgebench/calculus/coefficient.hpp"

namespace hb::calc {

using Exponents = std::vector<std::uint16_t>;

/// Sparse multivariate polynomial with Gaussian-rational coefficients in
/// real variables x^1..x^n. Terms are kept in lexicographic monomial order;
/// zero coefficients are never stored. A polynomial with nvars()==0 is a
/// constant that lifts to any arity.
class Polynomial {
public:
  using Terms = std::map<Exponents, GaussianRational>;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}
  static Polynomial constant(const GaussianRational& c, std::size_t nvars = 0);
  static Polynomial variable(std::size_t nvars, std::size_t index);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  GaussianRational constant_value() const;  // requires is_constant()
  int total_degree() const;

  const std::pair<const Exponents, GaussianRational>& leading() const { return *terms_.rbegin(); }

  Polynomial lifted(std::size_t nvars) const;

  void add_term(const Exponents& e, const GaussianRational& c);

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(const GaussianRational& c) const;
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  Polynomial conj() const;
  Polynomial diff(std::size_t var) const;

  /// Componentwise minimum exponent over all terms.
  Exponents monomial_content() const;
  /// Divide every term by x^e (caller guarantees divisibility).
  Polynomial shifted_down(const Exponents& e) const;
  /// q with a == q*b if it exists.
  std::optional<Polynomial> divide_exact(const Polynomial& b) const;

  std::string to_string(const std::vector<std::string>& names) const;

private:
  std::size_t nvars_ = 0;
  Terms terms_;
};

/// Unify arities of two polynomials for a binary operation.
std::size_t common_arity(std::size_t a, std::size_t b);

}  // namespace hb::calc
