#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

namespace hb::hodge {

using cplx = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

/// Annulus rho0 <= |z| <= 1 with n_theta angular modes and n_r radial nodes.
/// Block b pairs the degree-0 mode n = b - n_theta/2 (on the nodes) with the
/// degree-1 mode n + 1 (on the n_r - 1 cell midpoints).
struct AnnulusGrid {
  double rho0 = 0.5;
  std::size_t ntheta = 64;
  std::size_t nr = 64;

  void validate() const;
  double h() const { return (1.0 - rho0) / static_cast<double>(nr - 1); }
  double node(std::size_t j) const { return rho0 + h() * static_cast<double>(j); }
  double mid(std::size_t j) const { return rho0 + h() * (static_cast<double>(j) + 0.5); }
  int mode0(std::size_t b) const { return static_cast<int>(b) - static_cast<int>(ntheta / 2); }
  std::size_t block_of_mode0(int n) const;
  std::size_t length(int degree) const { return degree == 0 ? nr : nr - 1; }
};

/// Coefficients per (block, radial) node; degree 1 uses the frame dzbar.
struct DiscreteForm {
  int degree = 0;
  std::vector<VectorXcd> blocks;

  static DiscreteForm zero(const AnnulusGrid& g, int degree);
  /// Single angular mode with radial profile `f` (mode is the actual Fourier
  /// index of the coefficient, so for degree 1 the block is mode - 1).
  static DiscreteForm mode(const AnnulusGrid& g, int degree, int mode, const std::function<cplx(double)>& f);
  static DiscreteForm random(const AnnulusGrid& g, int degree, std::uint64_t seed);

  DiscreteForm operator+(const DiscreteForm& o) const;
  DiscreteForm operator-(const DiscreteForm& o) const;
  DiscreteForm operator*(cplx c) const;
};

struct Block {
  MatrixXcd P;       // raw staggered dbar, (nr-1) x nr
  VectorXd w0, w1;   // quadrature weights 2 pi h rho (trapezoid / midpoint)
  MatrixXcd Pt;      // W1^{1/2} P W0^{-1/2}
  VectorXd lam0, lam1;
  MatrixXcd V0, V1;  // orthonormal eigenvectors of Pt^H Pt and Pt Pt^H
  MatrixXcd N0, N1, pi0, pi1;  // in orthonormal coordinates
};

/// Operators and weights of block b only; no spectral data.
Block assemble_block(const AnnulusGrid& g, std::size_t b);

/// Discrete dbar-Neumann problem. Immutable once constructed.
class NeumannProblem {
public:
  explicit NeumannProblem(const AnnulusGrid& g, double harmonic_tol = 1e-8);

  const AnnulusGrid& grid() const { return g_; }
  const Block& block(std::size_t b) const { return blocks_[b]; }

  DiscreteForm apply_P(const DiscreteForm& u) const;      // degree 0 -> 1
  DiscreteForm apply_Pstar(const DiscreteForm& f) const;  // Hilbert adjoint, degree 1 -> 0
  DiscreteForm apply_box(const DiscreteForm& phi) const;
  DiscreteForm apply_N(const DiscreteForm& phi) const;
  DiscreteForm apply_pi(const DiscreteForm& phi) const;

  cplx inner(const DiscreteForm& a, const DiscreteForm& b) const;
  double norm(const DiscreteForm& a) const;

  std::size_t harmonic_dim(int degree) const;
  double lambda_max(int degree) const;
  double smallest_nonzero(int degree) const;
  /// ||N|| = 1 / smallest nonzero eigenvalue.
  double neumann_norm(int degree) const { return 1.0 / smallest_nonzero(degree); }
  double hermitian_defect() const;
  /// max over blocks of ||N pi|| and ||pi N|| as matrices.
  double n_pi_defect() const;
  double threshold(int degree) const { return tol_ * lambda_max(degree); }

private:
  DiscreteForm apply_blockwise(const DiscreteForm& phi, const MatrixXcd Block::*m0, const MatrixXcd Block::*m1) const;

  AnnulusGrid g_;
  double tol_;
  std::vector<Block> blocks_;
};

/// u = P* N f, the minimal-norm primitive. Throws if degree-1 harmonics exist.
DiscreteForm solve_dbar(const NeumannProblem& p, const DiscreteForm& f);
/// Minimal-norm least-squares solution of P u = f by complete orthogonal
/// decomposition, block by block in the weighted coordinates.
DiscreteForm min_norm_oracle(const NeumannProblem& p, const DiscreteForm& f);

struct HodgeSplit {
  DiscreteForm harmonic, imP, imPstar;
};
HodgeSplit hodge_split(const NeumannProblem& p, const DiscreteForm& phi);

/// Degree-1 quadratic forms with the ghost convention phi = 0 on both circles.
double e_squared(const AnnulusGrid& g, const DiscreteForm& phi);
double q_form(const AnnulusGrid& g, const DiscreteForm& phi);
/// ||D phi||^2_{d,s}: angular Sobolev weight (1 + m^2)^s, one radial derivative.
double d_norm_sq(const AnnulusGrid& g, const DiscreteForm& phi, double s);

struct BasicEstimate {
  double c_e_vs_q = 0, c_d_vs_e = 0;
  std::vector<double> e_over_q, d_over_e;
};
/// Random smooth degree-1 forms vanishing on both circles.
BasicEstimate basic_estimate_report(const NeumannProblem& p, std::size_t trials, std::uint64_t seed);
DiscreteForm random_smooth_dirichlet(const AnnulusGrid& g, std::uint64_t seed);

/// (P phi, psi) - (phi, P*_f psi) - boundary term for one block, with the
/// formal adjoint -d_z applied by second-order differences.
double ibp_defect(const AnnulusGrid& g, int n, const std::function<cplx(double)>& phi,
                  const std::function<cplx(double)>& psi);

/// max over low eigenvectors of ||phi||_{1,h} / ||(box + 1) phi||.
double regularity_constant(const NeumannProblem& p, int degree, int max_mode, std::size_t per_block);

struct ConvergenceReport {
  std::vector<std::size_t> nr;
  std::vector<double> error;
  double slope = 0;
};
/// solve_dbar(zbar dzbar) against rho^2/2 - c rho^{-2} in mode -2.
ConvergenceReport dbar_convergence(double rho0, std::size_t ntheta, const std::vector<std::size_t>& nrs);
double smooth_primitive_coefficient(double rho0);

/// Dense degree-1 Neumann operator of P_eps = (1 + eps a) P in orthonormal
/// coordinates, the multiplication done on an n_theta point angular grid.
MatrixXcd family_neumann(const AnnulusGrid& g, const std::function<double(double, double)>& a, double eps,
                         double* min_eig = nullptr);

struct FamilyReport {
  std::vector<double> eps, diff;
  double slope = 0, constant = 0;
  double min_eig = 0;  // smallest eigenvalue of box_eps over all eps
};
FamilyReport family_continuity(const AnnulusGrid& g, const std::function<double(double, double)>& a,
                               const std::vector<double>& eps);

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

nlohmann::ordered_json hodge_report(const NeumannProblem& p, std::size_t trials, std::uint64_t seed);

}  // namespace hb::hodge
