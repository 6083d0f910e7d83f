#pragma once

#include <map>
#include <vector>

#include "hodgebench/calculus/expr.hpp"

namespace hb::calc {

/// Vector field sum_i X^i d/dx^i with exact coefficients.
class VectorFieldExpr {
public:
  VectorFieldExpr() = default;
  explicit VectorFieldExpr(std::size_t dim) : c_(dim) {}
  explicit VectorFieldExpr(std::vector<ScalarExpr> comps) : c_(std::move(comps)) {}
  static VectorFieldExpr coordinate(std::size_t dim, std::size_t i);

  std::size_t dim() const { return c_.size(); }
  const ScalarExpr& operator[](std::size_t i) const { return c_[i]; }
  ScalarExpr& operator[](std::size_t i) { return c_[i]; }
  const std::vector<ScalarExpr>& components() const { return c_; }

  bool is_zero() const;
  VectorFieldExpr operator-() const;
  friend VectorFieldExpr operator+(const VectorFieldExpr& a, const VectorFieldExpr& b);
  friend VectorFieldExpr operator-(const VectorFieldExpr& a, const VectorFieldExpr& b);
  friend VectorFieldExpr operator*(const ScalarExpr& f, const VectorFieldExpr& X);
  friend bool operator==(const VectorFieldExpr& a, const VectorFieldExpr& b);

  VectorFieldExpr conj() const;
  /// X(f) = sum_i X^i df/dx^i
  ScalarExpr apply(const ScalarExpr& f) const;
  std::vector<cplx> eval(const std::vector<double>& x) const;

private:
  std::vector<ScalarExpr> c_;
};

VectorFieldExpr lie_bracket(const VectorFieldExpr& X, const VectorFieldExpr& Y);

/// Wirtinger field d/dz^i (anti=false) or d/dzbar^i (anti=true); i is 0-based.
VectorFieldExpr wirtinger(const Chart& chart, std::size_t i, bool anti);

/// Differential form of degree 0..3 with coefficients on strictly increasing
/// index tuples.
class FormExpr {
public:
  using Index = std::vector<int>;

  FormExpr() = default;
  FormExpr(std::size_t dim, int degree);
  static FormExpr function(std::size_t dim, const ScalarExpr& f);
  static FormExpr differential(std::size_t dim, int i);  // dx^i

  std::size_t dim() const { return dim_; }
  int degree() const { return deg_; }
  const std::map<Index, ScalarExpr>& coefficients() const { return c_; }

  /// Coefficient on an arbitrary index tuple, with permutation sign.
  ScalarExpr at(const Index& idx) const;
  /// Assign the coefficient of a strictly increasing tuple.
  void set(const Index& idx, const ScalarExpr& v);
  /// Add v*dx^{idx} for an arbitrary tuple (sign and repeats handled).
  void accumulate(const Index& idx, const ScalarExpr& v);

  bool is_zero() const;
  FormExpr operator-() const;
  friend FormExpr operator+(const FormExpr& a, const FormExpr& b);
  friend FormExpr operator-(const FormExpr& a, const FormExpr& b);
  friend FormExpr operator*(const ScalarExpr& f, const FormExpr& w);
  friend bool operator==(const FormExpr& a, const FormExpr& b);

  FormExpr conj() const;
  /// Value on vector arguments at a point.
  cplx eval(const std::vector<double>& x, const std::vector<std::vector<cplx>>& args) const;

private:
  std::size_t dim_ = 0;
  int deg_ = 0;
  std::map<Index, ScalarExpr> c_;
};

/// Sign of the permutation sorting idx, or 0 if idx has repeats.
int permutation_sign(const FormExpr::Index& idx);

FormExpr exterior_derivative(const FormExpr& w);
FormExpr interior(const VectorFieldExpr& X, const FormExpr& w);
FormExpr lie_derivative(const VectorFieldExpr& X, const FormExpr& w);
FormExpr wedge(const FormExpr& a, const FormExpr& b);

/// Section X + xi of the generalized tangent bundle.
struct GeneralizedSection {
  VectorFieldExpr vector;
  FormExpr covector;

  bool is_zero() const { return vector.is_zero() && covector.is_zero(); }
  friend GeneralizedSection operator-(const GeneralizedSection& a, const GeneralizedSection& b) {
    return {a.vector - b.vector, a.covector - b.covector};
  }
};

/// [[X+xi, Y+eta]] = [X,Y] + L_X eta - i_Y d xi - i_Y i_X H
GeneralizedSection courant_bracket(const GeneralizedSection& u, const GeneralizedSection& v,
                                   const FormExpr& H);

/// Symmetric pairing <X+xi, Y+eta> = (xi(Y) + eta(X))/2.
ScalarExpr pairing(const GeneralizedSection& u, const GeneralizedSection& v);

/// Antisymmetric bivector pi^{ij} d_i ^ d_j stored as a full matrix.
using Bivector = std::vector<std::vector<ScalarExpr>>;

/// pi(xi) = sum_{ij} pi^{ij} xi_i d_j
VectorFieldExpr contract(const Bivector& pi, const FormExpr& xi);

}  // namespace hb::calc
