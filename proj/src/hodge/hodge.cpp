#include "hodgebench/hodge/hodge.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "hodgebench/error.hpp"
#include "hodgebench/parallel.hpp"

namespace hb::hodge {

namespace {

constexpr double kPi = std::numbers::pi;

VectorXd sqrt_of(const VectorXd& w) { return w.array().sqrt(); }

// Pseudo-inverse and kernel projector from an eigendecomposition.
void spectral_parts(const VectorXd& lam, const MatrixXcd& V, double thr, MatrixXcd& N, MatrixXcd& pi) {
  Eigen::Index n = lam.size();
  N = MatrixXcd::Zero(n, n);
  pi = MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    MatrixXcd outer = V.col(i) * V.col(i).adjoint();
    if (lam(i) <= thr)
      pi += outer;
    else
      N += outer / lam(i);
  }
}

}  // namespace

void AnnulusGrid::validate() const {
  if (!(rho0 >= 0.1 && rho0 < 1.0)) throw DomainError("inner radius must lie in [0.1, 1)");
  if (nr < 16) throw DomainError("need at least 16 radial points");
  if (ntheta < 2 || ntheta % 2 != 0) throw DomainError("angular mode count must be even");
}

std::size_t AnnulusGrid::block_of_mode0(int n) const {
  int b = n + static_cast<int>(ntheta / 2);
  if (b < 0 || b >= static_cast<int>(ntheta)) throw DomainError("angular mode outside the grid");
  return static_cast<std::size_t>(b);
}

DiscreteForm DiscreteForm::zero(const AnnulusGrid& g, int degree) {
  DiscreteForm f;
  f.degree = degree;
  f.blocks.assign(g.ntheta, VectorXcd::Zero(static_cast<Eigen::Index>(g.length(degree))));
  return f;
}

DiscreteForm DiscreteForm::mode(const AnnulusGrid& g, int degree, int mode, const std::function<cplx(double)>& f) {
  DiscreteForm out = zero(g, degree);
  auto& v = out.blocks[g.block_of_mode0(degree == 0 ? mode : mode - 1)];
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    auto jj = static_cast<std::size_t>(j);
    v(j) = f(degree == 0 ? g.node(jj) : g.mid(jj));
  }
  return out;
}

DiscreteForm DiscreteForm::random(const AnnulusGrid& g, int degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  DiscreteForm out = zero(g, degree);
  for (auto& v : out.blocks)
    for (Eigen::Index j = 0; j < v.size(); ++j) {
      double re = n(rng), im = n(rng);
      v(j) = cplx(re, im);
    }
  return out;
}

DiscreteForm DiscreteForm::operator+(const DiscreteForm& o) const {
  DiscreteForm r = *this;
  for (std::size_t b = 0; b < blocks.size(); ++b) r.blocks[b] += o.blocks[b];
  return r;
}
DiscreteForm DiscreteForm::operator-(const DiscreteForm& o) const {
  DiscreteForm r = *this;
  for (std::size_t b = 0; b < blocks.size(); ++b) r.blocks[b] -= o.blocks[b];
  return r;
}
DiscreteForm DiscreteForm::operator*(cplx c) const {
  DiscreteForm r = *this;
  for (auto& v : r.blocks) v *= c;
  return r;
}

namespace {

double weight0(const AnnulusGrid& g, std::size_t j) {
  double w = 2 * kPi * g.h() * g.node(j);
  return (j == 0 || j + 1 == g.nr) ? 0.5 * w : w;
}
double weight1(const AnnulusGrid& g, std::size_t j) { return 2 * kPi * g.h() * g.mid(j); }

// Raw Hilbert adjoint W0^{-1} P^H W1 of one block, applied without matrices.
VectorXcd pstar_block(const AnnulusGrid& g, std::size_t b, const VectorXcd& f) {
  const double h = g.h(), n = g.mode0(b);
  VectorXcd out = VectorXcd::Zero(static_cast<Eigen::Index>(g.nr));
  for (std::size_t j = 0; j + 1 < g.nr; ++j) {
    double rm = g.mid(j);
    cplx wf = weight1(g, j) * f(static_cast<Eigen::Index>(j));
    out(static_cast<Eigen::Index>(j)) += 0.5 * (-1.0 / h - n / (2 * rm)) * wf;
    out(static_cast<Eigen::Index>(j + 1)) += 0.5 * (1.0 / h - n / (2 * rm)) * wf;
  }
  for (std::size_t j = 0; j < g.nr; ++j) out(static_cast<Eigen::Index>(j)) /= weight0(g, j);
  return out;
}

}  // namespace

Block assemble_block(const AnnulusGrid& g, std::size_t b) {
  g.validate();
  Block B;
  const auto nr = static_cast<Eigen::Index>(g.nr);
  const double h = g.h(), n = g.mode0(b);
  B.P = MatrixXcd::Zero(nr - 1, nr);
  B.w0.resize(nr);
  B.w1.resize(nr - 1);
  for (Eigen::Index j = 0; j < nr; ++j) B.w0(j) = weight0(g, static_cast<std::size_t>(j));
  for (Eigen::Index j = 0; j + 1 < nr; ++j) {
    double rm = g.mid(static_cast<std::size_t>(j));
    B.w1(j) = weight1(g, static_cast<std::size_t>(j));
    B.P(j, j) = 0.5 * (-1.0 / h - n / (2 * rm));
    B.P(j, j + 1) = 0.5 * (1.0 / h - n / (2 * rm));
  }
  B.Pt = sqrt_of(B.w1).asDiagonal() * B.P * sqrt_of(B.w0).cwiseInverse().asDiagonal();
  return B;
}

NeumannProblem::NeumannProblem(const AnnulusGrid& g, double harmonic_tol) : g_(g), tol_(harmonic_tol) {
  g.validate();
  blocks_.resize(g.ntheta);
  parallel_for(g.ntheta, [&](std::size_t b) {
    Block& B = blocks_[b];
    B = assemble_block(g, b);
    Eigen::SelfAdjointEigenSolver<MatrixXcd> e0(B.Pt.adjoint() * B.Pt), e1(B.Pt * B.Pt.adjoint());
    B.lam0 = e0.eigenvalues();
    B.V0 = e0.eigenvectors();
    B.lam1 = e1.eigenvalues();
    B.V1 = e1.eigenvectors();
  });
  double t0 = threshold(0), t1 = threshold(1);
  parallel_for(g.ntheta, [&](std::size_t b) {
    Block& B = blocks_[b];
    spectral_parts(B.lam0, B.V0, t0, B.N0, B.pi0);
    spectral_parts(B.lam1, B.V1, t1, B.N1, B.pi1);
  });
}

double NeumannProblem::lambda_max(int degree) const {
  double m = 0;
  for (const auto& B : blocks_) m = std::max(m, (degree == 0 ? B.lam0 : B.lam1).maxCoeff());
  return m;
}

std::size_t NeumannProblem::harmonic_dim(int degree) const {
  double thr = threshold(degree);
  std::size_t c = 0;
  for (const auto& B : blocks_)
    for (double l : (degree == 0 ? B.lam0 : B.lam1))
      if (l <= thr) ++c;
  return c;
}

double NeumannProblem::smallest_nonzero(int degree) const {
  double thr = threshold(degree), m = std::numeric_limits<double>::infinity();
  for (const auto& B : blocks_)
    for (double l : (degree == 0 ? B.lam0 : B.lam1))
      if (l > thr) m = std::min(m, l);
  return m;
}

double NeumannProblem::hermitian_defect() const {
  double d = 0;
  for (const auto& B : blocks_) {
    MatrixXcd b0 = B.Pt.adjoint() * B.Pt, b1 = B.Pt * B.Pt.adjoint();
    d = std::max({d, (b0 - b0.adjoint()).norm() / b0.norm(), (b1 - b1.adjoint()).norm() / b1.norm(),
                  (B.N0 - B.N0.adjoint()).norm() / std::max(B.N0.norm(), 1e-300),
                  (B.N1 - B.N1.adjoint()).norm() / std::max(B.N1.norm(), 1e-300)});
  }
  return d;
}

double NeumannProblem::n_pi_defect() const {
  double d = 0;
  for (const auto& B : blocks_)
    d = std::max({d, (B.N0 * B.pi0).norm(), (B.pi0 * B.N0).norm(), (B.N1 * B.pi1).norm(), (B.pi1 * B.N1).norm()});
  return d;
}

DiscreteForm NeumannProblem::apply_P(const DiscreteForm& u) const {
  if (u.degree != 0) throw DomainError("P acts on degree 0 here; degree 2 is void");
  DiscreteForm out = DiscreteForm::zero(g_, 1);
  for (std::size_t b = 0; b < blocks_.size(); ++b) out.blocks[b] = blocks_[b].P * u.blocks[b];
  return out;
}

DiscreteForm NeumannProblem::apply_Pstar(const DiscreteForm& f) const {
  if (f.degree != 1) throw DomainError("P* acts on degree 1 here");
  DiscreteForm out = DiscreteForm::zero(g_, 0);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const Block& B = blocks_[b];
    out.blocks[b] = B.w0.cwiseInverse().asDiagonal() * (B.P.adjoint() * (B.w1.asDiagonal() * f.blocks[b]));
  }
  return out;
}

DiscreteForm NeumannProblem::apply_box(const DiscreteForm& phi) const {
  return phi.degree == 0 ? apply_Pstar(apply_P(phi)) : apply_P(apply_Pstar(phi));
}

DiscreteForm NeumannProblem::apply_blockwise(const DiscreteForm& phi, const MatrixXcd Block::*m0,
                                             const MatrixXcd Block::*m1) const {
  DiscreteForm out = DiscreteForm::zero(g_, phi.degree);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const Block& B = blocks_[b];
    const VectorXd s = phi.degree == 0 ? sqrt_of(B.w0) : sqrt_of(B.w1);
    const MatrixXcd& M = phi.degree == 0 ? B.*m0 : B.*m1;
    out.blocks[b] = s.cwiseInverse().asDiagonal() * (M * (s.asDiagonal() * phi.blocks[b]));
  }
  return out;
}

DiscreteForm NeumannProblem::apply_N(const DiscreteForm& phi) const { return apply_blockwise(phi, &Block::N0, &Block::N1); }
DiscreteForm NeumannProblem::apply_pi(const DiscreteForm& phi) const {
  return apply_blockwise(phi, &Block::pi0, &Block::pi1);
}

cplx NeumannProblem::inner(const DiscreteForm& a, const DiscreteForm& b) const {
  if (a.degree != b.degree) throw DomainError("inner product across degrees");
  cplx acc = 0;
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    const VectorXd& w = a.degree == 0 ? blocks_[k].w0 : blocks_[k].w1;
    acc += (a.blocks[k].array() * b.blocks[k].conjugate().array() * w.array().cast<cplx>()).sum();
  }
  return acc;
}

double NeumannProblem::norm(const DiscreteForm& a) const { return std::sqrt(std::max(0.0, inner(a, a).real())); }

DiscreteForm solve_dbar(const NeumannProblem& p, const DiscreteForm& f) {
  if (f.degree != 1) throw DomainError("solve_dbar expects a degree-1 form");
  if (p.harmonic_dim(1) != 0) throw DomainError("degree-1 harmonic space is nonzero; no primitive in general");
  return p.apply_Pstar(p.apply_N(f));
}

DiscreteForm min_norm_oracle(const NeumannProblem& p, const DiscreteForm& f) {
  DiscreteForm u = DiscreteForm::zero(p.grid(), 0);
  for (std::size_t b = 0; b < p.grid().ntheta; ++b) {
    const Block& B = p.block(b);
    VectorXcd rhs = sqrt_of(B.w1).asDiagonal() * f.blocks[b];
    VectorXcd ut = B.Pt.completeOrthogonalDecomposition().solve(rhs);
    u.blocks[b] = sqrt_of(B.w0).cwiseInverse().asDiagonal() * ut;
  }
  return u;
}

HodgeSplit hodge_split(const NeumannProblem& p, const DiscreteForm& phi) {
  HodgeSplit s;
  s.harmonic = p.apply_pi(phi);
  DiscreteForm Nphi = p.apply_N(phi);
  if (phi.degree == 0) {
    s.imP = DiscreteForm::zero(p.grid(), 0);
    s.imPstar = p.apply_Pstar(p.apply_P(Nphi));
  } else {
    s.imP = p.apply_P(p.apply_Pstar(Nphi));
    s.imPstar = DiscreteForm::zero(p.grid(), 1);
  }
  return s;
}

namespace {

// Node values and radial derivatives of a degree-1 block, extended by zero
// on both circles through odd ghost cells.
void ghost_jet(const VectorXcd& f, double h, VectorXcd& avg, VectorXcd& der) {
  Eigen::Index m = f.size(), n = m + 1;
  auto at = [&](Eigen::Index k) -> cplx {  // midpoint k, ghosts at -1 and m
    if (k < 0) return -f(0);
    if (k >= m) return -f(m - 1);
    return f(k);
  };
  avg.resize(n);
  der.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    avg(j) = 0.5 * (at(j) + at(j - 1));
    der(j) = (at(j) - at(j - 1)) / h;
  }
}

}  // namespace

double e_squared(const AnnulusGrid& g, const DiscreteForm& phi) {
  if (phi.degree != 1) throw DomainError("energy is defined on degree 1");
  double grad = 0, l2 = 0, trace = 0;
  for (std::size_t b = 0; b < g.ntheta; ++b) {
    const double m = g.mode0(b) + 1;
    const VectorXcd& f = phi.blocks[b];
    VectorXcd avg, der;
    ghost_jet(f, g.h(), avg, der);
    for (Eigen::Index j = 0; j < avg.size(); ++j) {
      auto jj = static_cast<std::size_t>(j);
      cplx d = 0.5 * (der(j) - m * avg(j) / g.node(jj));
      grad += weight0(g, jj) * std::norm(d);
    }
    for (Eigen::Index j = 0; j < f.size(); ++j) l2 += weight1(g, static_cast<std::size_t>(j)) * std::norm(f(j));
    trace += 2 * kPi * (g.rho0 * std::norm(avg(0)) + std::norm(avg(avg.size() - 1)));
  }
  return grad + l2 + trace;
}

double q_form(const AnnulusGrid& g, const DiscreteForm& phi) {
  if (phi.degree != 1) throw DomainError("Q is evaluated on degree 1");
  double acc = 0;  // P phi vanishes: degree 2 is void
  for (std::size_t b = 0; b < g.ntheta; ++b) {
    const VectorXcd& f = phi.blocks[b];
    VectorXcd u = pstar_block(g, b, f);
    for (Eigen::Index j = 0; j < f.size(); ++j) acc += weight1(g, static_cast<std::size_t>(j)) * std::norm(f(j));
    for (Eigen::Index j = 0; j < u.size(); ++j) acc += weight0(g, static_cast<std::size_t>(j)) * std::norm(u(j));
  }
  return acc;
}

double d_norm_sq(const AnnulusGrid& g, const DiscreteForm& phi, double s) {
  if (phi.degree != 1) throw DomainError("D-norm is defined on degree 1");
  double acc = 0;
  for (std::size_t b = 0; b < g.ntheta; ++b) {
    const double m = g.mode0(b) + 1, wt = 1 + m * m;
    const VectorXcd& f = phi.blocks[b];
    VectorXcd avg, der;
    ghost_jet(f, g.h(), avg, der);
    double f2 = 0, d2 = 0;
    for (Eigen::Index j = 0; j < f.size(); ++j) f2 += weight1(g, static_cast<std::size_t>(j)) * std::norm(f(j));
    for (Eigen::Index j = 0; j < der.size(); ++j) d2 += weight0(g, static_cast<std::size_t>(j)) * std::norm(der(j));
    acc += std::pow(wt, s + 1) * f2 + std::pow(wt, s) * d2;
  }
  return acc;
}

DiscreteForm random_smooth_dirichlet(const AnnulusGrid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  DiscreteForm out = DiscreteForm::zero(g, 1);
  int top = std::min(4, static_cast<int>(g.ntheta / 2) - 1);
  for (int m = -top; m <= top; ++m)
    for (int k = 1; k <= 3; ++k) {
      double re = n(rng), im = n(rng);
      cplx c = cplx(re, im) / (k * (1.0 + std::abs(m)));
      out = out + DiscreteForm::mode(g, 1, m, [&](double r) {
              return c * std::sin(k * kPi * (r - g.rho0) / (1 - g.rho0));
            });
    }
  return out;
}

BasicEstimate basic_estimate_report(const NeumannProblem& p, std::size_t trials, std::uint64_t seed) {
  if (trials < 1) throw DomainError("trials must be >= 1");
  BasicEstimate r;
  r.e_over_q.resize(trials);
  r.d_over_e.resize(trials);
  parallel_for(trials, [&](std::size_t t) {
    DiscreteForm phi = random_smooth_dirichlet(p.grid(), seed * 1000003ULL + t);
    double e = e_squared(p.grid(), phi);
    r.e_over_q[t] = e / q_form(p.grid(), phi);
    r.d_over_e[t] = d_norm_sq(p.grid(), phi, -0.5) / e;
  });
  r.c_e_vs_q = *std::max_element(r.e_over_q.begin(), r.e_over_q.end());
  r.c_d_vs_e = *std::max_element(r.d_over_e.begin(), r.d_over_e.end());
  return r;
}

double ibp_defect(const AnnulusGrid& g, int n, const std::function<cplx(double)>& phi,
                  const std::function<cplx(double)>& psi) {
  g.validate();
  const std::size_t nr = g.nr;
  const double h = g.h();
  std::vector<cplx> pn(nr), sn(nr);
  for (std::size_t j = 0; j < nr; ++j) {
    pn[j] = phi(g.node(j));
    sn[j] = psi(g.node(j));
  }
  cplx lhs = 0, rhs = 0;
  for (std::size_t j = 0; j + 1 < nr; ++j) {
    double rm = g.mid(j);
    cplx Pphi = 0.5 * ((pn[j + 1] - pn[j]) / h - double(n) * (pn[j] + pn[j + 1]) / (2 * rm));
    lhs += 2 * kPi * h * rm * Pphi * std::conj(psi(rm));
  }
  for (std::size_t j = 0; j < nr; ++j) {
    cplx d;
    if (j == 0)
      d = (-3.0 * sn[0] + 4.0 * sn[1] - sn[2]) / (2 * h);
    else if (j + 1 == nr)
      d = (3.0 * sn[j] - 4.0 * sn[j - 1] + sn[j - 2]) / (2 * h);
    else
      d = (sn[j + 1] - sn[j - 1]) / (2 * h);
    double r = g.node(j);
    cplx formal = -0.5 * (d + double(n + 1) * sn[j] / r);
    double w = 2 * kPi * h * r * ((j == 0 || j + 1 == nr) ? 0.5 : 1.0);
    rhs += w * pn[j] * std::conj(formal);
  }
  cplx boundary = kPi * (1.0 * pn[nr - 1] * std::conj(sn[nr - 1]) - g.rho0 * pn[0] * std::conj(sn[0]));
  return std::abs(lhs - rhs - boundary);
}

double regularity_constant(const NeumannProblem& p, int degree, int max_mode, std::size_t per_block) {
  const auto& g = p.grid();
  double worst = 0;
  for (std::size_t b = 0; b < g.ntheta; ++b) {
    int n = g.mode0(b) + (degree == 1 ? 1 : 0);
    if (std::abs(n) > max_mode) continue;
    const Block& B = p.block(b);
    const VectorXd& lam = degree == 0 ? B.lam0 : B.lam1;
    const MatrixXcd& V = degree == 0 ? B.V0 : B.V1;
    const VectorXd w = degree == 0 ? B.w0 : B.w1;
    for (std::size_t i = 0; i < per_block && i < static_cast<std::size_t>(lam.size()); ++i) {
      VectorXcd raw = sqrt_of(w).cwiseInverse().asDiagonal() * V.col(static_cast<Eigen::Index>(i));
      double l2 = (w.array() * raw.array().abs2()).sum(), h1 = l2;
      if (degree == 0) {
        for (Eigen::Index j = 0; j + 1 < raw.size(); ++j)
          h1 += B.w1(j) * std::norm((raw(j + 1) - raw(j)) / g.h());
        for (Eigen::Index j = 0; j < raw.size(); ++j)
          h1 += B.w0(j) * std::norm(double(n) * raw(j) / g.node(static_cast<std::size_t>(j)));
      } else {
        VectorXcd avg, der;
        ghost_jet(raw, g.h(), avg, der);
        h1 += (B.w0.array() * der.array().abs2()).sum();
        for (Eigen::Index j = 0; j < raw.size(); ++j) h1 += B.w1(j) * std::norm(double(n) * raw(j) / g.mid(static_cast<std::size_t>(j)));
      }
      worst = std::max(worst, std::sqrt(h1) / ((1 + lam(static_cast<Eigen::Index>(i))) * std::sqrt(l2)));
    }
  }
  return worst;
}

double smooth_primitive_coefficient(double rho0) {
  return (0.25 * (1 - rho0 * rho0)) / (0.5 * (1 / (rho0 * rho0) - 1));
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("slope fit needs two or more points");
  double n = static_cast<double>(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ConvergenceReport dbar_convergence(double rho0, std::size_t ntheta, const std::vector<std::size_t>& nrs) {
  ConvergenceReport rep;
  const double c = smooth_primitive_coefficient(rho0);
  std::vector<double> hs;
  for (std::size_t nr : nrs) {
    AnnulusGrid g{rho0, ntheta, nr};
    NeumannProblem p(g);
    DiscreteForm f = DiscreteForm::mode(g, 1, -1, [](double r) { return cplx(r); });
    DiscreteForm u = solve_dbar(p, f);
    DiscreteForm ref = DiscreteForm::mode(g, 0, -2, [c](double r) { return cplx(r * r / 2 - c / (r * r)); });
    rep.nr.push_back(nr);
    rep.error.push_back(p.norm(u - ref) / p.norm(ref));
    hs.push_back(g.h());
  }
  rep.slope = fit_loglog_slope(hs, rep.error);
  return rep;
}

MatrixXcd family_neumann(const AnnulusGrid& g, const std::function<double(double, double)>& a, double eps,
                         double* min_eig) {
  g.validate();
  const auto T = static_cast<Eigen::Index>(g.ntheta), nr = static_cast<Eigen::Index>(g.nr);
  const Eigen::Index d1 = T * (nr - 1), d0 = T * nr;
  MatrixXcd Pt = MatrixXcd::Zero(d1, d0);
  for (Eigen::Index b = 0; b < T; ++b)
    Pt.block(b * (nr - 1), b * nr, nr - 1, nr) = assemble_block(g, static_cast<std::size_t>(b)).Pt;
  // degree-1 index: b * (nr - 1) + j; multiplication couples blocks at fixed j
  MatrixXcd E(T, T);
  for (Eigen::Index k = 0; k < T; ++k)
    for (Eigen::Index b = 0; b < T; ++b) {
      double th = 2 * kPi * static_cast<double>(k) / static_cast<double>(T);
      E(k, b) = std::polar(1.0 / std::sqrt(double(T)), (g.mode0(static_cast<std::size_t>(b)) + 1) * th);
    }
  MatrixXcd M = MatrixXcd::Zero(d1, d1);
  for (Eigen::Index j = 0; j + 1 < nr; ++j) {
    Eigen::VectorXd mult(T);
    for (Eigen::Index k = 0; k < T; ++k)
      mult(k) = 1 + eps * a(g.mid(static_cast<std::size_t>(j)), 2 * kPi * static_cast<double>(k) / static_cast<double>(T));
    if ((mult.array() <= 0).any()) throw DomainError("1 + eps a must stay positive");
    MatrixXcd Mj = E.adjoint() * mult.cast<cplx>().asDiagonal() * E;
    for (Eigen::Index b = 0; b < T; ++b)
      for (Eigen::Index c = 0; c < T; ++c) M(b * (nr - 1) + j, c * (nr - 1) + j) = Mj(b, c);
  }
  MatrixXcd Pe = M * Pt;
  MatrixXcd box = Pe * Pe.adjoint();
  box = 0.5 * (box + box.adjoint()).eval();
  if (min_eig) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(box, Eigen::EigenvaluesOnly);
    *min_eig = es.eigenvalues()(0);
  }
  Eigen::LLT<MatrixXcd> llt(box);
  if (llt.info() != Eigen::Success) throw DomainError("box_eps is not positive definite; harmonics appeared");
  MatrixXcd N = llt.solve(MatrixXcd::Identity(d1, d1));
  return 0.5 * (N + N.adjoint());
}

FamilyReport family_continuity(const AnnulusGrid& g, const std::function<double(double, double)>& a,
                               const std::vector<double>& eps) {
  FamilyReport rep;
  double m0 = 0;
  MatrixXcd N0 = family_neumann(g, a, 0.0, &m0);
  rep.min_eig = m0;
  for (double e : eps) {
    double me = 0;
    MatrixXcd Ne = family_neumann(g, a, e, &me);
    rep.min_eig = std::min(rep.min_eig, me);
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(Ne - N0, Eigen::EigenvaluesOnly);
    rep.eps.push_back(e);
    rep.diff.push_back(es.eigenvalues().cwiseAbs().maxCoeff());
  }
  std::vector<double> pe, pd;
  for (std::size_t i = 0; i < rep.eps.size(); ++i)
    if (rep.eps[i] > 0 && rep.diff[i] > 0) {
      pe.push_back(rep.eps[i]);
      pd.push_back(rep.diff[i]);
    }
  if (pe.size() >= 2) rep.slope = fit_loglog_slope(pe, pd);
  if (!pe.empty()) rep.constant = pd.back() / pe.back();
  return rep;
}

nlohmann::ordered_json hodge_report(const NeumannProblem& p, std::size_t trials, std::uint64_t seed) {
  const auto& g = p.grid();
  double resid = 0, resid2 = 0, orth = 0;
  for (std::size_t t = 0; t < trials; ++t)
    for (int deg : {0, 1}) {
      DiscreteForm phi = DiscreteForm::random(g, deg, seed * 7919ULL + 2 * t + static_cast<std::size_t>(deg));
      double n = p.norm(phi);
      resid = std::max(resid, p.norm(p.apply_box(p.apply_N(phi)) + p.apply_pi(phi) - phi) / n);
      resid2 = std::max(resid2, p.norm(p.apply_N(p.apply_box(phi)) + p.apply_pi(phi) - phi) / n);
      auto s = hodge_split(p, phi);
      orth = std::max({orth, std::abs(p.inner(s.harmonic, s.imP)) / (n * n),
                       std::abs(p.inner(s.harmonic, s.imPstar)) / (n * n), std::abs(p.inner(s.imP, s.imPstar)) / (n * n),
                       p.norm(s.harmonic + s.imP + s.imPstar - phi) / n});
    }
  BasicEstimate be = basic_estimate_report(p, trials, seed);
  nlohmann::ordered_json j;
  j["grid"] = {{"rho0", g.rho0}, {"ntheta", g.ntheta}, {"nr", g.nr}};
  j["spectra"] = {{"harmonic_dim_0", p.harmonic_dim(0)},
                  {"harmonic_dim_1", p.harmonic_dim(1)},
                  {"lambda_max_0", p.lambda_max(0)},
                  {"lambda_max_1", p.lambda_max(1)},
                  {"smallest_nonzero_0", p.smallest_nonzero(0)},
                  {"smallest_nonzero_1", p.smallest_nonzero(1)}};
  j["identities"] = {{"box_N_plus_pi", resid},
                     {"N_box_plus_pi", resid2},
                     {"N_pi", p.n_pi_defect()},
                     {"hermitian_defect", p.hermitian_defect()},
                     {"hodge_orthogonality", orth}};
  j["basic_estimate"] = {{"C_E_vs_Q", be.c_e_vs_q}, {"C_D_vs_E", be.c_d_vs_e}, {"trials", trials}, {"seed", seed}};
  return j;
}

}  // namespace hb::hodge
