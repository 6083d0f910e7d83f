#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "hodgebench/calculus/polynomial.hpp"

namespace hb::calc {

using cplx = std::complex<double>;

/// A complex coordinate z = x^re + i x^im built from two real chart variables.
struct ComplexPair {
  std::string name;  // "z1"; its conjugate is spelled "zb1"
  std::size_t re = 0;
  std::size_t im = 0;
};

/// Real coordinate chart with optional complex pairing.
class Chart {
public:
  Chart() = default;
  explicit Chart(std::size_t dim);
  Chart(std::vector<std::string> names, std::vector<ComplexPair> pairs = {});
  /// R^{2n} with variables x1..x_{2n} and z_k = x_{2k-1} + i x_{2k}.
  static Chart complex_space(std::size_t n);

  std::size_t dim() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<ComplexPair>& pairs() const { return pairs_; }
  bool has_complex() const { return !pairs_.empty(); }
  std::size_t complex_dim() const { return pairs_.size(); }

  friend bool operator==(const Chart& a, const Chart& b) {
    return a.names_ == b.names_ && a.pairs_.size() == b.pairs_.size();
  }

private:
  void validate() const;
  std::vector<std::string> names_;
  std::vector<ComplexPair> pairs_;
};

/// Exact rational function over the real chart variables with
/// Gaussian-rational coefficients. Immutable; cheap to copy.
class ScalarExpr {
public:
  ScalarExpr();
  ScalarExpr(const GaussianRational& c);
  ScalarExpr(long c) : ScalarExpr(GaussianRational(c)) {}
  ScalarExpr(Polynomial num, Polynomial den = Polynomial::constant(1));

  static ScalarExpr var(std::size_t nvars, std::size_t index);
  static ScalarExpr imag_unit() { return ScalarExpr(GaussianRational::i()); }
  /// z_k or its conjugate on a chart with complex pairing (k is 0-based).
  static ScalarExpr complex_coord(const Chart& chart, std::size_t k, bool conjugate = false);

  std::size_t nvars() const;
  const Polynomial& numerator() const;
  const Polynomial& denominator() const;
  bool is_zero() const;
  bool is_constant() const;
  bool is_polynomial() const;

  ScalarExpr operator-() const;
  friend ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b);
  friend ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b);
  friend ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b);
  friend ScalarExpr operator/(const ScalarExpr& a, const ScalarExpr& b);
  ScalarExpr& operator+=(const ScalarExpr& o) { return *this = *this + o; }
  ScalarExpr& operator-=(const ScalarExpr& o) { return *this = *this - o; }
  ScalarExpr& operator*=(const ScalarExpr& o) { return *this = *this * o; }
  /// Mathematical equality of rational functions.
  friend bool operator==(const ScalarExpr& a, const ScalarExpr& b);

  ScalarExpr pow(int k) const;
  ScalarExpr conj() const;
  ScalarExpr diff(std::size_t var) const;

  /// Floating-point evaluation; throws DomainError on a vanishing denominator.
  cplx eval(const std::vector<double>& x) const;

  std::string to_string(const std::vector<std::string>& names = {}) const;
  std::string to_string(const Chart& chart) const { return to_string(chart.names()); }

private:
  struct Impl;
  explicit ScalarExpr(std::shared_ptr<const Impl> p) : p_(std::move(p)) {}
  std::shared_ptr<const Impl> p_;
};

ScalarExpr conj(const ScalarExpr& e);
ScalarExpr differentiate(const ScalarExpr& e, std::size_t var);

/// Parse text in the expression grammar against a chart.
ScalarExpr parse_expr(const std::string& text, const Chart& chart);

}  // namespace hb::calc
