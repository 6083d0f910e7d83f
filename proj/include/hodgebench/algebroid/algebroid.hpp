#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hodgebench/calculus/fields.hpp"

namespace hb::alg {

using calc::Bivector;
using calc::Chart;
using calc::cplx;
using calc::FormExpr;
using calc::ScalarExpr;
using calc::VectorFieldExpr;

enum class Kind { Tangent, Antiholomorphic, GraphBivector, GraphTwoForm, HolomorphicPoisson, Custom };

std::string kind_name(Kind k);
Kind kind_from_name(const std::string& s);

/// c[i][j][k] with [w_i, w_j] = sum_k c^k_ij w_k.
using StructureTable = std::vector<std::vector<std::vector<ScalarExpr>>>;

/// A pre-Lie algebroid over a chart, presented by a frame w_1..w_l.
struct AlgebroidSpec {
  std::string name;
  Kind kind = Kind::Custom;
  Chart chart;
  std::size_t rank = 0;
  std::vector<VectorFieldExpr> anchor;
  std::optional<StructureTable> structure;
  bool anchored_bracket = false;

  // Construction data kept for routes that need it.
  Bivector pi;                  // graph of a bivector
  std::optional<FormExpr> H;    // closed 3-form twist
  std::optional<FormExpr> omega;  // graph of a 2-form
  bool generalized_complex = false;  // graph(-i*omega) of a symplectic form
  Bivector sigma;               // holomorphic Poisson, n x n over complex indices
};

AlgebroidSpec make_tangent(const Chart& chart);
AlgebroidSpec make_antiholomorphic(std::size_t n);
AlgebroidSpec make_graph_bivector(const Chart& chart, const Bivector& pi,
                                  const std::optional<FormExpr>& H = std::nullopt);
/// graph(omega) with complement T*M. With generalized_complex set the frame is
/// d_i - i*omega(d_i), the generalized complex structure of a symplectic omega.
AlgebroidSpec make_graph_two_form(const Chart& chart, const FormExpr& omega,
                                  bool generalized_complex = false);
AlgebroidSpec make_holomorphic_poisson(std::size_t n, const Bivector& sigma);
AlgebroidSpec make_custom(const Chart& chart, std::vector<VectorFieldExpr> anchor,
                          std::optional<StructureTable> structure);

/// Holomorphic-Poisson bivector as a real-index complex matrix on C^n.
Bivector complex_bivector_to_real(const Chart& chart, const Bivector& sigma);

/// Frame change w'_i = sum_j G_ij w_j by a constant matrix (anchors only).
AlgebroidSpec change_frame(const AlgebroidSpec& a, const Eigen::MatrixXcd& G);

/// Anchor values as an m x l matrix.
Eigen::MatrixXcd anchor_matrix(const AlgebroidSpec& a, const std::vector<double>& x);

/// Exterior form on the algebroid: coefficients on increasing index tuples.
class AlgebroidForm {
public:
  using Index = std::vector<int>;
  AlgebroidForm() = default;
  AlgebroidForm(std::size_t rank, int degree) : rank_(rank), deg_(degree) {}
  static AlgebroidForm function(std::size_t rank, const ScalarExpr& f);
  static AlgebroidForm dual(std::size_t rank, int i);  // omega^i

  std::size_t rank() const { return rank_; }
  int degree() const { return deg_; }
  const std::map<Index, ScalarExpr>& coefficients() const { return c_; }
  ScalarExpr at(const Index& idx) const;
  void accumulate(const Index& idx, const ScalarExpr& v);
  bool is_zero() const;
  double max_abs_at(const std::vector<double>& x) const;

  friend AlgebroidForm operator+(const AlgebroidForm& a, const AlgebroidForm& b);
  friend AlgebroidForm operator-(const AlgebroidForm& a, const AlgebroidForm& b);
  friend AlgebroidForm operator*(const ScalarExpr& f, const AlgebroidForm& w);

private:
  std::size_t rank_ = 0;
  int deg_ = 0;
  std::map<Index, ScalarExpr> c_;
};

AlgebroidForm wedge(const AlgebroidForm& a, const AlgebroidForm& b);

/// Chevalley-Eilenberg differential from anchor and structure functions.
AlgebroidForm ce_differential(const AlgebroidSpec& a, const AlgebroidForm& phi);

struct DSquaredReport {
  double max_residual = 0;  // over samples and probes
  bool symbolic_zero = true;
  std::size_t probes = 0;
  std::size_t samples = 0;
};

/// Max |d_L d_L| over probe functions and the dual frame forms.
DSquaredReport d_squared_residual(const AlgebroidSpec& a,
                                  const std::vector<std::vector<double>>& samples,
                                  const std::vector<ScalarExpr>& probes);

/// Default probes: the coordinate functions and one product.
std::vector<ScalarExpr> default_probes(const Chart& chart);

/// rho([w_i,w_j]) - [rho w_i, rho w_j] vanishes symbolically for all i<j.
bool anchor_preserves_bracket(const AlgebroidSpec& a);

struct Ellipticity {
  bool elliptic = false;
  double margin = 0;  // sigma_m / sigma_1 of [A | conj A]
};

Ellipticity is_elliptic_at(const AlgebroidSpec& a, const std::vector<double>& x,
                           double rank_tol = 1e-8);

/// {f,g} = sum pi^{ij} d_i f d_j g
ScalarExpr poisson_bracket(const Bivector& pi, const ScalarExpr& f, const ScalarExpr& g);
/// {f,{g,h}} + {h,{f,g}} + {g,{h,f}}
ScalarExpr jacobiator(const Bivector& pi, const ScalarExpr& f, const ScalarExpr& g,
                      const ScalarExpr& h);

}  // namespace hb::alg

namespace hb::alg {

/// sigma = z1 d_z1 ^ d_z2 + sum_{i<=k} d_z(2i+1) ^ d_z(2i+2) on C^{2k+2}.
Bivector poisson_example_sigma(std::size_t k);

}  // namespace hb::alg
