#include "hodgebench/boundary/boundary.hpp"

#include <algorithm>
#include <cmath>

#include "hodgebench/error.hpp"
#include "hodgebench/parallel.hpp"

namespace hb::bnd {

using calc::GaussianRational;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

namespace {

ScalarExpr exact_constant(cplx v) {
  return ScalarExpr(GaussianRational(mpq_class(v.real()), mpq_class(v.imag())));
}

// Orthonormal basis of the column span, dropping directions below tol * scale.
MatrixXcd orthonormal_span(const MatrixXcd& V, double tol, double scale) {
  if (V.cols() == 0) return MatrixXcd(V.rows(), 0);
  Eigen::JacobiSVD<MatrixXcd> svd(V, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  Eigen::Index k = 0;
  while (k < s.size() && s(k) > tol * scale) ++k;
  return svd.matrixU().leftCols(k);
}

// Orthonormal basis of the orthogonal complement of the column span.
MatrixXcd orthogonal_complement(const MatrixXcd& V, double tol) {
  const Eigen::Index m = V.rows();
  if (V.cols() == 0) return MatrixXcd::Identity(m, m);
  Eigen::JacobiSVD<MatrixXcd> svd(V, Eigen::ComputeFullU);
  const auto& s = svd.singularValues();
  double smax = s.size() ? s(0) : 0.0;
  Eigen::Index k = 0;
  while (k < s.size() && s(k) > tol * std::max(smax, 1e-300)) ++k;
  return svd.matrixU().rightCols(m - k);
}

}  // namespace

// ---------------------------------------------------------------- context

BoundaryContext::BoundaryContext(AlgebroidSpec alg, BoundaryData bd) : alg_(std::move(alg)), bd_(std::move(bd)) {
  const std::size_t m = alg_.chart.dim();
  calc::common_arity(bd_.r.nvars(), m);
  grad_.resize(m);
  hess_.assign(m, std::vector<ScalarExpr>(m));
  for (std::size_t k = 0; k < m; ++k) grad_[k] = bd_.r.diff(k);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t l = k; l < m; ++l) hess_[k][l] = hess_[l][k] = grad_[k].diff(l);
  ajac_.resize(alg_.rank);
  pair_.resize(alg_.rank);
  for (std::size_t j = 0; j < alg_.rank; ++j) {
    ajac_[j].assign(m, std::vector<ScalarExpr>(m));
    for (std::size_t c = 0; c < m; ++c)
      if (!alg_.anchor[j][c].is_zero())
        for (std::size_t a = 0; a < m; ++a) ajac_[j][c][a] = alg_.anchor[j][c].diff(a);
    pair_[j] = alg_.anchor[j].apply(bd_.r);
  }
  if (alg_.kind == alg::Kind::HolomorphicPoisson) {
    const std::size_t n = alg_.chart.complex_dim();
    std::vector<ScalarExpr> rz(n);
    for (std::size_t a = 0; a < n; ++a) rz[a] = calc::wirtinger(alg_.chart, a, false).apply(bd_.r);
    xr_.assign(n, ScalarExpr());
    dxr_.assign(n, std::vector<ScalarExpr>(n));
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t a = 0; a < n; ++a)
        if (!alg_.sigma[a][b].is_zero()) xr_[b] += rz[a] * alg_.sigma[a][b];
      for (std::size_t a = 0; a < n; ++a) dxr_[b][a] = calc::wirtinger(alg_.chart, a, false).apply(xr_[b]);
    }
  }
}

double BoundaryContext::r_at(const Point& x) const { return bd_.r.eval(x).real(); }

Eigen::VectorXd BoundaryContext::grad_at(const Point& x) const {
  Eigen::VectorXd g(dim());
  for (std::size_t k = 0; k < dim(); ++k) g(k) = grad_[k].eval(x).real();
  return g;
}

Eigen::MatrixXd BoundaryContext::hessian_at(const Point& x) const {
  Eigen::MatrixXd H(dim(), dim());
  for (std::size_t k = 0; k < dim(); ++k)
    for (std::size_t l = 0; l < dim(); ++l) H(k, l) = hess_[k][l].eval(x).real();
  return H;
}

MatrixXcd BoundaryContext::anchors_at(const Point& x) const { return alg::anchor_matrix(alg_, x); }

MatrixXcd BoundaryContext::anchor_jacobian_at(std::size_t j, const Point& x) const {
  MatrixXcd J = MatrixXcd::Zero(dim(), dim());
  for (std::size_t c = 0; c < dim(); ++c)
    for (std::size_t a = 0; a < dim(); ++a)
      if (!ajac_[j][c][a].is_zero()) J(c, a) = ajac_[j][c][a].eval(x);
  return J;
}

VectorXcd BoundaryContext::xr_at(const Point& x) const {
  VectorXcd v(xr_.size());
  for (std::size_t b = 0; b < xr_.size(); ++b) v(b) = xr_[b].eval(x);
  return v;
}

MatrixXcd BoundaryContext::dxr_at(const Point& x) const {
  const std::size_t n = xr_.size();
  MatrixXcd D(n, n);
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t a = 0; a < n; ++a) D(b, a) = dxr_[b][a].eval(x);
  return D;
}

// ---------------------------------------------------------------- classify

Classification classify_point(const BoundaryContext& ctx, const Point& x) {
  const auto& tol = ctx.boundary().tol;
  Eigen::VectorXd gr = ctx.grad_at(x);
  double gn = gr.norm();
  if (gn <= tol.rank_tol) throw DomainError("dr vanishes at boundary point");
  if (std::abs(ctx.r_at(x)) > tol.boundary_tol * std::max(1.0, gn))
    throw DomainError("point is not on the boundary (|r| = " + std::to_string(std::abs(ctx.r_at(x))) + ")");
  if (!alg::is_elliptic_at(ctx.algebroid(), x, tol.rank_tol).elliptic)
    throw DomainError("algebroid is not elliptic at the point");

  MatrixXcd A = ctx.anchors_at(x);
  const Eigen::Index m = A.rows(), l = A.cols();
  MatrixXcd M(m, 2 * l);
  M << A, -A.conjugate();
  Eigen::JacobiSVD<MatrixXcd> svd(M, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  double smax = s.size() ? s(0) : 0.0;
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > tol.rank_tol * smax) ++rank;
  MatrixXcd N = svd.matrixV().rightCols(2 * l - rank);
  MatrixXcd W = orthonormal_span(A * N.topRows(l), tol.rank_tol, std::max(1.0, A.norm()));

  Classification c;
  c.margin = W.cols() ? (W.transpose() * gr.cast<cplx>()).norm() / gn : 0.0;
  c.cls = c.margin >= tol.rank_tol ? PointClass::Elliptic : PointClass::NonElliptic;
  c.near_transition = c.margin >= 1e-2 * tol.rank_tol && c.margin < tol.transition_band;
  return c;
}

// ---------------------------------------------------------------- frames

AdaptedFrame adapted_frame(const BoundaryContext& ctx, const Point& x) {
  const std::size_t l = ctx.rank();
  std::vector<cplx> G(l);
  std::size_t p = 0;
  for (std::size_t j = 0; j < l; ++j) {
    G[j] = ctx.pairing(j).eval(x);
    if (std::abs(G[j]) > std::abs(G[p])) p = j;
  }
  double scale = ctx.grad_at(x).norm() * std::max(1.0, ctx.anchors_at(x).norm());
  if (std::abs(G[p]) <= ctx.boundary().tol.rank_tol * scale)
    throw DomainError("all frame anchors are tangent to the boundary");
  AdaptedFrame fr;
  fr.pivot = p;
  fr.table.assign(l, std::vector<ScalarExpr>(l));
  std::size_t row = 0;
  for (std::size_t j = 0; j < l; ++j) {
    if (j == p) continue;
    fr.order.push_back(j);
    fr.table[row][j] = ScalarExpr(1);
    fr.table[row][p] = -(ctx.pairing(j) / ctx.pairing(p));
    ++row;
  }
  fr.order.push_back(p);
  fr.table[l - 1][p] = exact_constant(cplx(1) / G[p]);
  return fr;
}

std::vector<VectorFieldExpr> adapted_fields(const BoundaryContext& ctx, const AdaptedFrame& fr) {
  const std::size_t l = ctx.rank();
  std::vector<VectorFieldExpr> out;
  for (std::size_t i = 0; i + 1 < l; ++i) {
    VectorFieldExpr v(ctx.dim());
    for (std::size_t j = 0; j < l; ++j)
      if (!fr.table[i][j].is_zero()) v = v + fr.table[i][j] * ctx.algebroid().anchor[j];
    out.push_back(v);
  }
  return out;
}

FrameJet adapted_jet(const BoundaryContext& ctx, const Point& x) {
  const std::size_t l = ctx.rank(), m = ctx.dim();
  MatrixXcd A = ctx.anchors_at(x);
  VectorXcd gr = ctx.grad_at(x).cast<cplx>();
  MatrixXcd Hr = ctx.hessian_at(x).cast<cplx>();
  std::vector<MatrixXcd> J(l);
  std::vector<cplx> g(l);
  std::vector<VectorXcd> dg(l);
  std::size_t p = 0;
  for (std::size_t j = 0; j < l; ++j) {
    J[j] = ctx.anchor_jacobian_at(j, x);
    g[j] = (gr.transpose() * A.col(j))(0);
    dg[j] = Hr * A.col(j) + J[j].transpose() * gr;
    if (std::abs(g[j]) > std::abs(g[p])) p = j;
  }
  double scale = gr.norm() * std::max(1.0, A.norm());
  if (std::abs(g[p]) <= ctx.boundary().tol.rank_tol * scale)
    throw DomainError("all frame anchors are tangent to the boundary");
  FrameJet jet;
  jet.values.resize(m, l - 1);
  std::size_t col = 0;
  for (std::size_t j = 0; j < l; ++j) {
    if (j == p) continue;
    cplx c = g[j] / g[p];
    VectorXcd dc = (dg[j] * g[p] - g[j] * dg[p]) / (g[p] * g[p]);
    jet.values.col(col) = A.col(j) - c * A.col(p);
    jet.jac.push_back(J[j] - A.col(p) * dc.transpose() - c * J[p]);
    ++col;
  }
  jet.transverse = A.col(p) / g[p];
  return jet;
}

FrameJet jet_from_fields(const std::vector<VectorFieldExpr>& fields, const VectorXcd& transverse, const Point& x) {
  const std::size_t k = fields.size();
  const std::size_t m = transverse.size();
  FrameJet jet;
  jet.values.resize(m, k);
  for (std::size_t i = 0; i < k; ++i) {
    MatrixXcd J = MatrixXcd::Zero(m, m);
    for (std::size_t c = 0; c < m; ++c) {
      jet.values(c, i) = fields[i][c].eval(x);
      if (fields[i][c].is_zero()) continue;
      for (std::size_t a = 0; a < m; ++a) J(c, a) = fields[i][c].diff(a).eval(x);
    }
    jet.jac.push_back(J);
  }
  jet.transverse = transverse;
  return jet;
}

// ---------------------------------------------------------------- Levi

LeviReport levi_form_generic(const BoundaryContext& ctx, const Point& x, const std::optional<FrameJet>& jet_in,
                             const std::optional<VectorXcd>& complement) {
  const auto& tol = ctx.boundary().tol;
  LeviReport rep;
  rep.point = x;
  rep.route = "generic";
  rep.cls = classify_point(ctx, x);
  if (rep.cls.elliptic()) throw DomainError("Levi form requested at an elliptic point");
  FrameJet jet = jet_in ? *jet_in : adapted_jet(ctx, x);
  const Eigen::Index m = jet.values.rows(), k = jet.values.cols();
  Eigen::VectorXd grr = ctx.grad_at(x);
  double gn = grr.norm();
  VectorXcd gr = grr.cast<cplx>();

  // ker dr and the CR span S inside it
  MatrixXcd K = orthogonal_complement(gr, 1e-12);
  MatrixXcd S(m, 2 * k);
  S << jet.values, jet.values.conjugate();
  VectorXcd g = cplx(0, 1) * (jet.transverse.conjugate() - jet.transverse);

  // mu-functional V -> <n, V> / <n, g>
  VectorXcd n;
  MatrixXcd basis;  // for the random-complement variant
  if (!complement) {
    MatrixXcd C = orthogonal_complement(K.adjoint() * S, tol.rank_tol);
    if (C.cols() != 1)
      throw DomainError("classification inconsistency: quotient has dimension " + std::to_string(C.cols()));
    n = K * C.col(0);
  } else {
    basis.resize(m, 2 * k + 1);
    basis << S, *complement;
  }
  auto mu = [&](const VectorXcd& V) -> cplx {
    if (!complement) return n.dot(V);
    VectorXcd coef = basis.completeOrthogonalDecomposition().solve(V);
    return coef(2 * k);
  };
  cplx mg = mu(g);
  if (std::abs(mg) <= tol.rank_tol * g.norm())
    throw DomainError("classification inconsistency: generator lies in the CR span");

  MatrixXcd B(k, k);
  double tangency = 0;
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) {
      // [v_i, conj v_j] = conj(J_j) v_i - J_i conj(v_j)
      VectorXcd br = jet.jac[j].conjugate() * jet.values.col(i) - jet.jac[i] * jet.values.col(j).conjugate();
      VectorXcd V = cplx(0, -1) * br;
      tangency = std::max(tangency, std::abs(gr.dot(V)) / gn);
      B(i, j) = mu(V) / mg;
    }
  double bn = B.norm();
  rep.hermitian_defect = bn > 0 ? (B - B.adjoint()).norm() / bn : 0.0;
  rep.tangency_defect = tangency;
  rep.levi = (B + B.adjoint()) / 2.0;
  rep.levi_unit = rep.levi / gn;
  rep.signature = eigen_signature(rep.levi, tol.eig_zero_tol);
  rep.cr_values = jet.values;
  return rep;
}

namespace {

// r_{z^a zbar^b} from the real Hessian
MatrixXcd wirtinger_hessian(const BoundaryContext& ctx, const Point& x) {
  const auto& chart = ctx.algebroid().chart;
  if (!chart.has_complex()) throw DomainError("chart has no complex pairing");
  const std::size_t n = chart.complex_dim();
  Eigen::MatrixXd H = ctx.hessian_at(x);
  MatrixXcd W(n, n);
  const cplx I(0, 1);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto pa = chart.pairs()[a], pb = chart.pairs()[b];
      W(a, b) = 0.25 * (H(pa.re, pb.re) + I * H(pa.re, pb.im) - I * H(pa.im, pb.re) + H(pa.im, pb.im));
    }
  return W;
}

// d r / d zbar^a
VectorXcd wirtinger_gradient_bar(const BoundaryContext& ctx, const Point& x) {
  const auto& chart = ctx.algebroid().chart;
  Eigen::VectorXd g = ctx.grad_at(x);
  VectorXcd out(chart.complex_dim());
  for (std::size_t a = 0; a < chart.complex_dim(); ++a) {
    auto p = chart.pairs()[a];
    out(a) = 0.5 * cplx(g(p.re), g(p.im));
  }
  return out;
}

}  // namespace

MatrixXcd levi_form_complex_hessian(const BoundaryContext& ctx, const Point& x, const MatrixXcd& cr_basis) {
  MatrixXcd W = wirtinger_hessian(ctx, x);
  VectorXcd rb = wirtinger_gradient_bar(ctx, x);
  const auto& tol = ctx.boundary().tol;
  if (cr_basis.rows() != W.rows()) throw DomainError("CR basis has wrong length");
  for (Eigen::Index i = 0; i < cr_basis.cols(); ++i) {
    cplx res = (rb.transpose() * cr_basis.col(i))(0);
    if (std::abs(res) > 1e3 * tol.rank_tol * rb.norm() * std::max(1.0, cr_basis.col(i).norm()))
      throw DomainError("CR basis vector is not in the CR kernel");
  }
  // L(u_i, u_j) = sum_{a,b} W(a,b) conj(u_j^a) u_i^b
  MatrixXcd L = (cr_basis.adjoint() * W * cr_basis).transpose();
  return L;
}

MatrixXcd levi_form_poisson(const BoundaryContext& ctx, const Point& x) {
  if (!ctx.has_poisson()) throw DomainError("algebroid is not holomorphic Poisson");
  const auto& tol = ctx.boundary().tol;
  const auto& alg = ctx.algebroid();
  const std::size_t n = alg.chart.complex_dim();
  VectorXcd xr = ctx.xr_at(x);
  VectorXcd rb = wirtinger_gradient_bar(ctx, x);
  double sn = 1.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) sn = std::max(sn, std::abs(alg.sigma[a][b].eval(x)));
  if (xr.norm() > tol.rank_tol * rb.norm() * sn) throw DomainError("X_r does not vanish: point is elliptic");

  MatrixXcd W = wirtinger_hessian(ctx, x);
  MatrixXcd D = ctx.dxr_at(x);
  MatrixXcd sig(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) sig(a, b) = alg.sigma[a][b].eval(x);

  // adapted CR vectors inside T^{0,1}: e_a - (r_{zbar^a}/r_{zbar^p}) e_p
  std::size_t p = 0;
  for (std::size_t a = 0; a < n; ++a)
    if (std::abs(rb(a)) > std::abs(rb(p))) p = a;
  MatrixXcd U = MatrixXcd::Zero(n, n - 1);
  std::size_t col = 0;
  for (std::size_t a = 0; a < n; ++a) {
    if (a == p) continue;
    U(a, col) = 1;
    U(p, col) = -rb(a) / rb(p);
    ++col;
  }
  const std::size_t k = 2 * n - 1;
  MatrixXcd L = MatrixXcd::Zero(k, k);
  L.topLeftCorner(n - 1, n - 1) = levi_form_complex_hessian(ctx, x, U);
  // L(alpha_b, alpha_c) = sum W(a,a') sigma(dz^b)^a conj(sigma(dz^c)^a')
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t c = 0; c < n; ++c) {
      cplx v = 0;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t a2 = 0; a2 < n; ++a2) v += W(a, a2) * sig(b, a) * std::conj(sig(c, a2));
      L(n - 1 + b, n - 1 + c) = v;
    }
  // L(dz^b, u) = dz^b([X_r, conj u]) = -sum_a conj(u^a) d_{z^a} X_r^b
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t j = 0; j + 1 < n; ++j) {
      cplx v = 0;
      for (std::size_t a = 0; a < n; ++a) v -= std::conj(U(a, j)) * D(b, a);
      L(n - 1 + b, j) = v;
      L(j, n - 1 + b) = std::conj(v);
    }
  return L;
}

Signature eigen_signature(const MatrixXcd& H, double eig_zero_tol) {
  Signature s;
  if (H.rows() == 0) return s;
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(H, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  double rad = ev.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i)) <= eig_zero_tol * rad || rad == 0.0) ++s.zero;
    else if (ev(i) > 0) ++s.pos;
    else ++s.neg;
  }
  return s;
}

bool q_passes(const Signature& s, std::size_t l, int q) {
  return s.pos >= static_cast<int>(l) - q || s.neg >= q + 1;
}

ConvexityVerdict q_convex_set(const BoundaryContext& ctx, const std::vector<Point>& samples) {
  ConvexityVerdict v;
  v.samples = samples.size();
  v.reports.resize(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) {
    LeviReport rep;
    rep.point = samples[i];
    rep.cls = classify_point(ctx, samples[i]);
    if (!rep.cls.elliptic()) {
      rep = levi_form_generic(ctx, samples[i]);
      if (rep.hermitian_defect > ctx.boundary().tol.hermitian_tol)
        throw DomainError("classification inconsistency: Levi matrix is not Hermitian");
    }
    v.reports[i] = std::move(rep);
  });
  const int l = static_cast<int>(ctx.rank());
  for (int q = 0; q <= l; ++q) {
    bool ok = true;
    for (std::size_t i = 0; i < samples.size() && ok; ++i) {
      const auto& rep = v.reports[i];
      if (rep.cls.elliptic()) continue;
      if (!q_passes(rep.signature, ctx.rank(), q)) {
        ok = false;
        v.witness[q] = i;
      }
    }
    if (ok) v.q_set.push_back(q);
  }
  for (const auto& r : v.reports)
    if (!r.cls.elliptic()) ++v.non_elliptic;
  return v;
}

// ---------------------------------------------------------------- GC

MatrixXcd gc_bivector_at(const BoundaryContext& ctx, const Point& x) {
  const auto& alg = ctx.algebroid();
  const std::size_t m = alg.chart.dim();
  switch (alg.kind) {
    case alg::Kind::Antiholomorphic:
      return MatrixXcd::Zero(m, m);
    case alg::Kind::HolomorphicPoisson: {
      auto real_sigma = alg::complex_bivector_to_real(alg.chart, alg.sigma);
      MatrixXcd P(m, m);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
          cplx s = real_sigma[i][j].eval(x);
          P(i, j) = cplx(0, 2) * (s - std::conj(s));
        }
      return P;
    }
    case alg::Kind::GraphTwoForm: {
      if (!alg.generalized_complex) break;
      Eigen::MatrixXd O(m, m);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          O(i, j) = alg.omega->at({static_cast<int>(i), static_cast<int>(j)}).eval(x).real();
      Eigen::FullPivLU<Eigen::MatrixXd> lu(O);
      if (!lu.isInvertible()) throw DomainError("omega is degenerate; not a symplectic structure");
      return lu.inverse().cast<cplx>();
    }
    default:
      break;
  }
  throw DomainError("spec is not of generalized-complex type");
}

Classification gc_ellipticity_via_bivector(const BoundaryContext& ctx, const Point& x) {
  MatrixXcd P = gc_bivector_at(ctx, x);
  Eigen::VectorXd gr = ctx.grad_at(x);
  Classification c;
  double pn = P.norm();
  // pi(dr)^j = sum_i pi^{ij} dr_i
  c.margin = pn > 0 ? (P.transpose() * gr.cast<cplx>()).norm() / (pn * gr.norm()) : 0.0;
  const auto& tol = ctx.boundary().tol;
  c.cls = c.margin >= tol.rank_tol ? PointClass::Elliptic : PointClass::NonElliptic;
  c.near_transition = c.margin >= 1e-2 * tol.rank_tol && c.margin < tol.transition_band;
  return c;
}

}  // namespace hb::bnd
