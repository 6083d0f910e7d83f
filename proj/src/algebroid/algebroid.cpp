#include "hodgebench/algebroid/algebroid.hpp"

#include <algorithm>
#include <functional>

#include "hodgebench/error.hpp"

namespace hb::alg {

using calc::GaussianRational;
using calc::GeneralizedSection;

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::Tangent: return "tangent";
    case Kind::Antiholomorphic: return "antiholomorphic";
    case Kind::GraphBivector: return "graph_bivector";
    case Kind::GraphTwoForm: return "graph_two_form";
    case Kind::HolomorphicPoisson: return "holomorphic_poisson";
    case Kind::Custom: return "custom";
  }
  return "custom";
}

Kind kind_from_name(const std::string& s) {
  for (Kind k : {Kind::Tangent, Kind::Antiholomorphic, Kind::GraphBivector, Kind::GraphTwoForm,
                 Kind::HolomorphicPoisson, Kind::Custom})
    if (kind_name(k) == s) return k;
  throw Error("unknown algebroid kind '" + s + "'");
}

namespace {

StructureTable zero_structure(std::size_t l) {
  return StructureTable(l, std::vector<std::vector<ScalarExpr>>(l, std::vector<ScalarExpr>(l)));
}

void check_antisymmetric(const Bivector& b, std::size_t n, const char* what) {
  if (b.size() != n) throw DomainError(std::string(what) + " has wrong size");
  for (std::size_t i = 0; i < n; ++i) {
    if (b[i].size() != n) throw DomainError(std::string(what) + " has wrong size");
    for (std::size_t j = 0; j < n; ++j)
      if (!(b[i][j] + b[j][i]).is_zero()) throw DomainError(std::string(what) + " is not antisymmetric");
  }
}

}  // namespace

AlgebroidSpec make_tangent(const Chart& chart) {
  AlgebroidSpec a;
  a.name = "tangent";
  a.kind = Kind::Tangent;
  a.chart = chart;
  a.rank = chart.dim();
  for (std::size_t i = 0; i < chart.dim(); ++i)
    a.anchor.push_back(VectorFieldExpr::coordinate(chart.dim(), i));
  a.structure = zero_structure(a.rank);
  a.anchored_bracket = true;
  return a;
}

AlgebroidSpec make_antiholomorphic(std::size_t n) {
  AlgebroidSpec a;
  a.name = "antiholomorphic";
  a.kind = Kind::Antiholomorphic;
  a.chart = Chart::complex_space(n);
  a.rank = n;
  for (std::size_t i = 0; i < n; ++i) a.anchor.push_back(calc::wirtinger(a.chart, i, true));
  a.structure = zero_structure(n);
  a.anchored_bracket = true;
  return a;
}

AlgebroidSpec make_graph_bivector(const Chart& chart, const Bivector& pi,
                                  const std::optional<FormExpr>& H) {
  std::size_t m = chart.dim();
  check_antisymmetric(pi, m, "bivector");
  if (H && H->degree() != 3) throw DomainError("H must be a 3-form");
  AlgebroidSpec a;
  a.name = "graph_bivector";
  a.kind = Kind::GraphBivector;
  a.chart = chart;
  a.rank = m;
  a.pi = pi;
  a.H = H;
  FormExpr h = H ? *H : FormExpr(m, 3);
  std::vector<GeneralizedSection> frame;
  for (std::size_t i = 0; i < m; ++i) {
    FormExpr dx = FormExpr::differential(m, static_cast<int>(i));
    VectorFieldExpr X = calc::contract(pi, dx);
    a.anchor.push_back(X);
    frame.push_back({X, dx});
  }
  // Along the complement TM the frame is read off from the covector part.
  StructureTable c = zero_structure(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      GeneralizedSection b = calc::courant_bracket(frame[i], frame[j], h);
      for (std::size_t k = 0; k < m; ++k) {
        c[i][j][k] = b.covector.at({static_cast<int>(k)});
        c[j][i][k] = -c[i][j][k];
      }
    }
  a.structure = std::move(c);
  return a;
}

AlgebroidSpec make_graph_two_form(const Chart& chart, const FormExpr& omega, bool generalized_complex) {
  if (omega.degree() != 2 || omega.dim() != chart.dim()) throw DomainError("omega must be a 2-form on the chart");
  AlgebroidSpec a = make_tangent(chart);
  a.name = "graph_two_form";
  a.kind = Kind::GraphTwoForm;
  a.omega = omega;
  a.generalized_complex = generalized_complex;
  // d_i + omega(d_i) brackets to a pure covector, which lies in the
  // complement T*M, so all structure functions vanish.
  return a;
}

Bivector complex_bivector_to_real(const Chart& chart, const Bivector& sigma) {
  std::size_t n = chart.complex_dim(), m = chart.dim();
  Bivector out(m, std::vector<ScalarExpr>(m));
  std::vector<VectorFieldExpr> dz;
  for (std::size_t a = 0; a < n; ++a) dz.push_back(calc::wirtinger(chart, a, false));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (sigma[a][b].is_zero()) continue;
      for (std::size_t i = 0; i < m; ++i) {
        if (dz[a][i].is_zero()) continue;
        for (std::size_t j = 0; j < m; ++j)
          if (!dz[b][j].is_zero()) out[i][j] += sigma[a][b] * dz[a][i] * dz[b][j];
      }
    }
  return out;
}

AlgebroidSpec make_holomorphic_poisson(std::size_t n, const Bivector& sigma) {
  AlgebroidSpec a;
  a.name = "holomorphic_poisson";
  a.kind = Kind::HolomorphicPoisson;
  a.chart = Chart::complex_space(n);
  std::size_t m = 2 * n;
  check_antisymmetric(sigma, n, "sigma");
  std::vector<VectorFieldExpr> dz, dzb;
  for (std::size_t b = 0; b < n; ++b) {
    dz.push_back(calc::wirtinger(a.chart, b, false));
    dzb.push_back(calc::wirtinger(a.chart, b, true));
  }
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t b = 0; b < n; ++b)
        if (!dzb[b].apply(sigma[p][q]).is_zero()) throw DomainError("sigma is not holomorphic");
  a.rank = 2 * n;
  a.sigma = sigma;
  const ScalarExpr I = ScalarExpr::imag_unit();
  const ScalarExpr half(GaussianRational(mpq_class(1, 2)));

  std::vector<GeneralizedSection> frame;
  for (std::size_t b = 0; b < n; ++b) frame.push_back({dzb[b], FormExpr(m, 1)});
  for (std::size_t p = 0; p < n; ++p) {
    VectorFieldExpr X(m);
    for (std::size_t b = 0; b < n; ++b)
      if (!sigma[p][b].is_zero()) X = X + sigma[p][b] * dz[b];
    FormExpr xi(m, 1);
    const auto& pr = a.chart.pairs()[p];
    xi.set({static_cast<int>(pr.re)}, ScalarExpr(1));
    xi.set({static_cast<int>(pr.im)}, I);
    frame.push_back({X, xi});
  }
  for (const auto& s : frame) a.anchor.push_back(s.vector);

  // Decompose brackets along L + conj(L); conj(L) is spanned by d/dz^c and
  // dzbar^c + conj(sigma)(dzbar^c).
  std::size_t l = 2 * n;
  StructureTable c = zero_structure(l);
  FormExpr H0(m, 3);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = i + 1; j < l; ++j) {
      GeneralizedSection br = calc::courant_bracket(frame[i], frame[j], H0);
      std::vector<ScalarExpr> zeta_z(n), zeta_zb(n), v_zb(n);
      for (std::size_t q = 0; q < n; ++q) {
        const auto& pr = a.chart.pairs()[q];
        ScalarExpr zx = br.covector.at({static_cast<int>(pr.re)});
        ScalarExpr zy = br.covector.at({static_cast<int>(pr.im)});
        zeta_z[q] = half * (zx - I * zy);
        zeta_zb[q] = half * (zx + I * zy);
        v_zb[q] = br.vector[pr.re] - I * br.vector[pr.im];
      }
      for (std::size_t q = 0; q < n; ++q) {
        ScalarExpr alpha = v_zb[q];
        for (std::size_t p = 0; p < n; ++p)
          if (!zeta_zb[p].is_zero() && !sigma[p][q].is_zero()) alpha -= zeta_zb[p] * sigma[p][q].conj();
        c[i][j][q] = alpha;
        c[i][j][n + q] = zeta_z[q];
        c[j][i][q] = -alpha;
        c[j][i][n + q] = -zeta_z[q];
      }
    }
  a.structure = std::move(c);
  return a;
}

AlgebroidSpec make_custom(const Chart& chart, std::vector<VectorFieldExpr> anchor,
                          std::optional<StructureTable> structure) {
  AlgebroidSpec a;
  a.name = "custom";
  a.kind = Kind::Custom;
  a.chart = chart;
  a.rank = anchor.size();
  if (a.rank == 0) throw DomainError("algebroid rank must be positive");
  for (const auto& X : anchor)
    if (X.dim() != chart.dim()) throw ChartMismatch("anchor field has wrong dimension");
  a.anchor = std::move(anchor);
  if (structure) {
    const auto& c = *structure;
    if (c.size() != a.rank) throw DomainError("structure table has wrong size");
    for (std::size_t i = 0; i < a.rank; ++i)
      for (std::size_t j = 0; j < a.rank; ++j) {
        if (c[i].size() != a.rank || c[i][j].size() != a.rank)
          throw DomainError("structure table has wrong size");
        for (std::size_t k = 0; k < a.rank; ++k)
          if (!(c[i][j][k] + c[j][i][k]).is_zero())
            throw DomainError("structure functions are not antisymmetric");
      }
  }
  a.structure = std::move(structure);
  return a;
}

AlgebroidSpec change_frame(const AlgebroidSpec& a, const Eigen::MatrixXcd& G) {
  if (static_cast<std::size_t>(G.rows()) != a.rank || G.rows() != G.cols())
    throw DomainError("frame change has wrong shape");
  AlgebroidSpec b = a;
  b.kind = Kind::Custom;
  b.structure.reset();
  b.anchored_bracket = false;
  auto to_exact = [](cplx v) {
    return ScalarExpr(GaussianRational(mpq_class(v.real()), mpq_class(v.imag())));
  };
  for (std::size_t i = 0; i < a.rank; ++i) {
    VectorFieldExpr X(a.chart.dim());
    for (std::size_t j = 0; j < a.rank; ++j)
      if (G(i, j) != cplx(0)) X = X + to_exact(G(i, j)) * a.anchor[j];
    b.anchor[i] = X;
  }
  return b;
}

Eigen::MatrixXcd anchor_matrix(const AlgebroidSpec& a, const std::vector<double>& x) {
  Eigen::MatrixXcd A(a.chart.dim(), a.rank);
  for (std::size_t j = 0; j < a.rank; ++j)
    for (std::size_t i = 0; i < a.chart.dim(); ++i) A(i, j) = a.anchor[j][i].eval(x);
  return A;
}

// ---------------------------------------------------------------- forms

AlgebroidForm AlgebroidForm::function(std::size_t rank, const ScalarExpr& f) {
  AlgebroidForm w(rank, 0);
  w.accumulate({}, f);
  return w;
}

AlgebroidForm AlgebroidForm::dual(std::size_t rank, int i) {
  AlgebroidForm w(rank, 1);
  w.accumulate({i}, ScalarExpr(1));
  return w;
}

ScalarExpr AlgebroidForm::at(const Index& idx) const {
  int s = calc::permutation_sign(idx);
  if (s == 0) return ScalarExpr();
  Index sorted = idx;
  std::sort(sorted.begin(), sorted.end());
  auto it = c_.find(sorted);
  if (it == c_.end()) return ScalarExpr();
  return s > 0 ? it->second : -it->second;
}

void AlgebroidForm::accumulate(const Index& idx, const ScalarExpr& v) {
  if (static_cast<int>(idx.size()) != deg_) throw DomainError("index length does not match degree");
  int s = calc::permutation_sign(idx);
  if (s == 0 || v.is_zero()) return;
  Index sorted = idx;
  std::sort(sorted.begin(), sorted.end());
  auto it = c_.find(sorted);
  ScalarExpr nv = (it == c_.end() ? ScalarExpr() : it->second) + (s > 0 ? v : -v);
  if (nv.is_zero()) {
    if (it != c_.end()) c_.erase(it);
  } else {
    c_[sorted] = nv;
  }
}

bool AlgebroidForm::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

double AlgebroidForm::max_abs_at(const std::vector<double>& x) const {
  double m = 0;
  for (const auto& [k, v] : c_) m = std::max(m, std::abs(v.eval(x)));
  return m;
}

AlgebroidForm operator+(const AlgebroidForm& a, const AlgebroidForm& b) {
  if (a.deg_ != b.deg_ || a.rank_ != b.rank_) throw DomainError("adding incompatible algebroid forms");
  AlgebroidForm r = a;
  for (const auto& [k, v] : b.c_) r.accumulate(k, v);
  return r;
}

AlgebroidForm operator-(const AlgebroidForm& a, const AlgebroidForm& b) {
  return a + ScalarExpr(-1) * b;
}

AlgebroidForm operator*(const ScalarExpr& f, const AlgebroidForm& w) {
  AlgebroidForm r(w.rank_, w.deg_);
  for (const auto& [k, v] : w.c_) r.accumulate(k, f * v);
  return r;
}

AlgebroidForm wedge(const AlgebroidForm& a, const AlgebroidForm& b) {
  if (a.rank() != b.rank()) throw DomainError("wedge of forms on different algebroids");
  AlgebroidForm r(a.rank(), a.degree() + b.degree());
  for (const auto& [I, u] : a.coefficients())
    for (const auto& [J, v] : b.coefficients()) {
      AlgebroidForm::Index idx = I;
      idx.insert(idx.end(), J.begin(), J.end());
      r.accumulate(idx, u * v);
    }
  return r;
}

AlgebroidForm ce_differential(const AlgebroidSpec& a, const AlgebroidForm& phi) {
  if (!a.structure) throw DomainError("algebroid has no structure functions");
  if (phi.rank() != a.rank) throw DomainError("form rank does not match algebroid");
  const int q = phi.degree();
  const int l = static_cast<int>(a.rank);
  if (q >= l) return AlgebroidForm(a.rank, q + 1);
  const auto& c = *a.structure;
  AlgebroidForm r(a.rank, q + 1);
  AlgebroidForm::Index K(q + 1);
  // enumerate increasing (q+1)-tuples
  std::function<void(int, int)> rec = [&](int slot, int start) {
    if (slot == q + 1) {
      ScalarExpr acc;
      for (int i = 0; i <= q; ++i) {
        AlgebroidForm::Index rest;
        for (int t = 0; t <= q; ++t)
          if (t != i) rest.push_back(K[t]);
        ScalarExpr v = phi.at(rest);
        if (v.is_zero()) continue;
        ScalarExpr term = a.anchor[K[i]].apply(v);
        acc += (i % 2 == 0) ? term : -term;
      }
      for (int i = 0; i <= q; ++i)
        for (int j = i + 1; j <= q; ++j) {
          AlgebroidForm::Index rest;
          for (int t = 0; t <= q; ++t)
            if (t != i && t != j) rest.push_back(K[t]);
          ScalarExpr s;
          for (int mm = 0; mm < l; ++mm) {
            const ScalarExpr& cm = c[K[i]][K[j]][mm];
            if (cm.is_zero()) continue;
            AlgebroidForm::Index idx{mm};
            idx.insert(idx.end(), rest.begin(), rest.end());
            ScalarExpr v = phi.at(idx);
            if (!v.is_zero()) s += cm * v;
          }
          acc += ((i + j) % 2 == 0) ? s : -s;
        }
      r.accumulate(K, acc);
      return;
    }
    for (int k = start; k < l; ++k) {
      K[slot] = k;
      rec(slot + 1, k + 1);
    }
  };
  rec(0, 0);
  return r;
}

std::vector<ScalarExpr> default_probes(const Chart& chart) {
  std::vector<ScalarExpr> p;
  std::size_t m = chart.dim();
  for (std::size_t i = 0; i < m; ++i) p.push_back(ScalarExpr::var(m, i));
  p.push_back(ScalarExpr::var(m, 0) * ScalarExpr::var(m, m - 1) + ScalarExpr::var(m, 0).pow(2));
  return p;
}

DSquaredReport d_squared_residual(const AlgebroidSpec& a,
                                  const std::vector<std::vector<double>>& samples,
                                  const std::vector<ScalarExpr>& probes) {
  DSquaredReport rep;
  rep.samples = samples.size();
  std::vector<AlgebroidForm> inputs;
  for (const auto& f : probes) inputs.push_back(AlgebroidForm::function(a.rank, f));
  for (std::size_t i = 0; i < a.rank; ++i) inputs.push_back(AlgebroidForm::dual(a.rank, static_cast<int>(i)));
  for (const auto& phi : inputs) {
    if (phi.degree() + 2 > static_cast<int>(a.rank)) continue;
    AlgebroidForm dd = ce_differential(a, ce_differential(a, phi));
    ++rep.probes;
    if (!dd.is_zero()) rep.symbolic_zero = false;
    for (const auto& x : samples) rep.max_residual = std::max(rep.max_residual, dd.max_abs_at(x));
  }
  return rep;
}

bool anchor_preserves_bracket(const AlgebroidSpec& a) {
  if (!a.structure) throw DomainError("algebroid has no structure functions");
  const auto& c = *a.structure;
  for (std::size_t i = 0; i < a.rank; ++i)
    for (std::size_t j = i + 1; j < a.rank; ++j) {
      VectorFieldExpr lhs(a.chart.dim());
      for (std::size_t k = 0; k < a.rank; ++k)
        if (!c[i][j][k].is_zero()) lhs = lhs + c[i][j][k] * a.anchor[k];
      if (!(lhs - calc::lie_bracket(a.anchor[i], a.anchor[j])).is_zero()) return false;
    }
  return true;
}

Ellipticity is_elliptic_at(const AlgebroidSpec& a, const std::vector<double>& x, double rank_tol) {
  Eigen::MatrixXcd A = anchor_matrix(a, x);
  const Eigen::Index m = A.rows();
  Eigen::MatrixXcd M(m, 2 * A.cols());
  M << A, A.conjugate();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  const auto& s = svd.singularValues();
  Ellipticity e;
  if (s.size() < m || s(0) == 0.0) return e;
  e.margin = s(m - 1) / s(0);
  e.elliptic = e.margin >= rank_tol;
  return e;
}

ScalarExpr poisson_bracket(const Bivector& pi, const ScalarExpr& f, const ScalarExpr& g) {
  ScalarExpr acc;
  std::size_t m = pi.size();
  for (std::size_t i = 0; i < m; ++i) {
    ScalarExpr fi = f.diff(i);
    if (fi.is_zero()) continue;
    for (std::size_t j = 0; j < m; ++j)
      if (!pi[i][j].is_zero()) acc += pi[i][j] * fi * g.diff(j);
  }
  return acc;
}

ScalarExpr jacobiator(const Bivector& pi, const ScalarExpr& f, const ScalarExpr& g, const ScalarExpr& h) {
  return poisson_bracket(pi, f, poisson_bracket(pi, g, h)) + poisson_bracket(pi, h, poisson_bracket(pi, f, g)) +
         poisson_bracket(pi, g, poisson_bracket(pi, h, f));
}

}  // namespace hb::alg

namespace hb::alg {

Bivector poisson_example_sigma(std::size_t k) {
  std::size_t n = 2 * k + 2;
  Chart c = Chart::complex_space(n);
  Bivector s(n, std::vector<ScalarExpr>(n));
  ScalarExpr z1 = ScalarExpr::complex_coord(c, 0);
  s[0][1] = z1;
  s[1][0] = -z1;
  for (std::size_t i = 1; i <= k; ++i) {
    s[2 * i][2 * i + 1] = ScalarExpr(1);
    s[2 * i + 1][2 * i] = ScalarExpr(-1);
  }
  return s;
}

}  // namespace hb::alg
