#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hodgebench/algebroid/algebroid.hpp"
#include "hodgebench/boundary/sampler.hpp"

namespace hb::bnd {

using alg::AlgebroidSpec;
using calc::cplx;
using calc::ScalarExpr;
using calc::VectorFieldExpr;

struct Tolerances {
  double rank_tol = 1e-8;
  double eig_zero_tol = 1e-8;
  double boundary_tol = 1e-8;     // |r(x)| allowed at a boundary point
  double transition_band = 1e-4;  // margins below this are flagged
  double hermitian_tol = 1e-6;
};

/// Defining function r < 0 inside, r = 0 on the boundary.
struct BoundaryData {
  ScalarExpr r;
  Tolerances tol;
};

enum class PointClass { Elliptic, NonElliptic };

struct Classification {
  PointClass cls = PointClass::Elliptic;
  double margin = 0;             // normalized dr-pairing on rho(L) and its conjugate
  bool near_transition = false;  // margin close to the threshold on either side
  bool elliptic() const { return cls == PointClass::Elliptic; }
};

struct Signature {
  int pos = 0, neg = 0, zero = 0;
  friend bool operator==(const Signature& a, const Signature& b) {
    return a.pos == b.pos && a.neg == b.neg && a.zero == b.zero;
  }
};

/// Frame adapted to the boundary: w~_i = w_s(i) - (G_s(i)/G_p) w_p for i < l,
/// w~_l = w_p / G_p(x), with G_j = dr(rho(w_j)) and p the pivot.
struct AdaptedFrame {
  std::size_t pivot = 0;
  std::vector<std::size_t> order;  // s(1..l-1) followed by p
  std::vector<std::vector<ScalarExpr>> table;  // l x l, row i gives w~_i in the w basis
};

/// Values and first derivatives at x of a family of vector fields.
struct FrameJet {
  Eigen::MatrixXcd values;              // m x k
  std::vector<Eigen::MatrixXcd> jac;    // jac[i](c, a) = d_a v_i^c
  Eigen::VectorXcd transverse;          // rho(w~_l)(x), dr-pairing 1
};

struct LeviReport {
  Point point;
  Classification cls;
  std::string route;
  Eigen::MatrixXcd levi;       // raw r, dr(rho(w~_l)) = 1
  Eigen::MatrixXcd levi_unit;  // levi / |grad r(x)|, invariant under r -> c r
  Signature signature;
  double hermitian_defect = 0;
  double tangency_defect = 0;
  Eigen::MatrixXcd cr_values;  // m x (l-1) adapted CR frame at x
};

/// Symbolic jets of an algebroid and defining function, computed once.
class BoundaryContext {
public:
  BoundaryContext(AlgebroidSpec alg, BoundaryData bd);

  const AlgebroidSpec& algebroid() const { return alg_; }
  const BoundaryData& boundary() const { return bd_; }
  std::size_t dim() const { return alg_.chart.dim(); }
  std::size_t rank() const { return alg_.rank; }

  double r_at(const Point& x) const;
  Eigen::VectorXd grad_at(const Point& x) const;
  Eigen::MatrixXd hessian_at(const Point& x) const;
  Eigen::MatrixXcd anchors_at(const Point& x) const;
  Eigen::MatrixXcd anchor_jacobian_at(std::size_t j, const Point& x) const;

  /// Symbolic G_j = dr(rho(w_j)).
  const ScalarExpr& pairing(std::size_t j) const { return pair_[j]; }

  /// Holomorphic-Poisson data: X_r^b and d_{z^a} X_r^b.
  bool has_poisson() const { return !xr_.empty(); }
  Eigen::VectorXcd xr_at(const Point& x) const;
  Eigen::MatrixXcd dxr_at(const Point& x) const;  // (b, a) = d_{z^a} X_r^b

private:
  AlgebroidSpec alg_;
  BoundaryData bd_;
  std::vector<ScalarExpr> grad_;
  std::vector<std::vector<ScalarExpr>> hess_;
  std::vector<std::vector<std::vector<ScalarExpr>>> ajac_;  // [j][c][a]
  std::vector<ScalarExpr> pair_;
  std::vector<ScalarExpr> xr_;
  std::vector<std::vector<ScalarExpr>> dxr_;
};

/// Checks boundary membership and ellipticity, then tests whether
/// rho(L) and its conjugate meet outside the complexified tangent space.
Classification classify_point(const BoundaryContext& ctx, const Point& x);

AdaptedFrame adapted_frame(const BoundaryContext& ctx, const Point& x);
/// Values and derivatives of the adapted frame at x from anchor jets.
FrameJet adapted_jet(const BoundaryContext& ctx, const Point& x);
/// Values and derivatives at x of explicit frame fields (CR fields plus the
/// transverse value).
FrameJet jet_from_fields(const std::vector<VectorFieldExpr>& fields, const Eigen::VectorXcd& transverse,
                         const Point& x);
/// Symbolic adapted frame fields rho(w~_i), i < l.
std::vector<VectorFieldExpr> adapted_fields(const BoundaryContext& ctx, const AdaptedFrame& fr);

/// Generic route. With `complement` set the mu-component is read off against
/// that vector instead of the orthogonal complement of the CR span.
LeviReport levi_form_generic(const BoundaryContext& ctx, const Point& x,
                             const std::optional<FrameJet>& jet = std::nullopt,
                             const std::optional<Eigen::VectorXcd>& complement = std::nullopt);

/// sum r_{z^a zbar^b} conj(v^a) u^b on a basis of T^{0,1} coefficient columns.
Eigen::MatrixXcd levi_form_complex_hessian(const BoundaryContext& ctx, const Point& x,
                                           const Eigen::MatrixXcd& cr_basis);

/// Block formula for holomorphic Poisson algebroids on the basis
/// (adapted CR vectors in T^{0,1}; dz^1..dz^n).
Eigen::MatrixXcd levi_form_poisson(const BoundaryContext& ctx, const Point& x);

Signature eigen_signature(const Eigen::MatrixXcd& H, double eig_zero_tol);

/// q-convexity rule for a single point of an algebroid of rank l.
bool q_passes(const Signature& s, std::size_t l, int q);

struct ConvexityVerdict {
  std::vector<int> q_set;
  std::map<int, std::size_t> witness;  // failing q -> first sample index
  std::vector<LeviReport> reports;     // one per sample, in sample order
  std::size_t samples = 0;
  std::size_t non_elliptic = 0;
  std::string certification = "certified on the sample only";
};

ConvexityVerdict q_convex_set(const BoundaryContext& ctx, const std::vector<Point>& samples);

/// Evaluates the generalized-complex Poisson bivector at x.
Eigen::MatrixXcd gc_bivector_at(const BoundaryContext& ctx, const Point& x);
/// NonElliptic iff pi_J(dr) vanishes at x.
Classification gc_ellipticity_via_bivector(const BoundaryContext& ctx, const Point& x);

}  // namespace hb::bnd
