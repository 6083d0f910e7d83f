#include "hodgebench/calculus/fields.hpp"

#include <algorithm>

#include "hodgebench/error.hpp"

namespace hb::calc {

namespace {

void check_dim(std::size_t a, std::size_t b) {
  if (a != b)
    throw ChartMismatch("operands have dimensions " + std::to_string(a) + " and " +
                        std::to_string(b));
}

}  // namespace

// ---------------------------------------------------------------- vectors

VectorFieldExpr VectorFieldExpr::coordinate(std::size_t dim, std::size_t i) {
  VectorFieldExpr X(dim);
  X.c_[i] = ScalarExpr(1);
  return X;
}

bool VectorFieldExpr::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const ScalarExpr& e) { return e.is_zero(); });
}

VectorFieldExpr VectorFieldExpr::operator-() const {
  VectorFieldExpr r(dim());
  for (std::size_t i = 0; i < dim(); ++i) r.c_[i] = -c_[i];
  return r;
}

VectorFieldExpr operator+(const VectorFieldExpr& a, const VectorFieldExpr& b) {
  check_dim(a.dim(), b.dim());
  VectorFieldExpr r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r.c_[i] = a.c_[i] + b.c_[i];
  return r;
}

VectorFieldExpr operator-(const VectorFieldExpr& a, const VectorFieldExpr& b) {
  check_dim(a.dim(), b.dim());
  VectorFieldExpr r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r.c_[i] = a.c_[i] - b.c_[i];
  return r;
}

VectorFieldExpr operator*(const ScalarExpr& f, const VectorFieldExpr& X) {
  VectorFieldExpr r(X.dim());
  for (std::size_t i = 0; i < X.dim(); ++i) r.c_[i] = f * X.c_[i];
  return r;
}

bool operator==(const VectorFieldExpr& a, const VectorFieldExpr& b) {
  if (a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (!(a.c_[i] == b.c_[i])) return false;
  return true;
}

VectorFieldExpr VectorFieldExpr::conj() const {
  VectorFieldExpr r(dim());
  for (std::size_t i = 0; i < dim(); ++i) r.c_[i] = c_[i].conj();
  return r;
}

ScalarExpr VectorFieldExpr::apply(const ScalarExpr& f) const {
  ScalarExpr acc;
  for (std::size_t i = 0; i < dim(); ++i)
    if (!c_[i].is_zero()) acc += c_[i] * f.diff(i);
  return acc;
}

std::vector<cplx> VectorFieldExpr::eval(const std::vector<double>& x) const {
  std::vector<cplx> v(dim());
  for (std::size_t i = 0; i < dim(); ++i) v[i] = c_[i].eval(x);
  return v;
}

VectorFieldExpr lie_bracket(const VectorFieldExpr& X, const VectorFieldExpr& Y) {
  check_dim(X.dim(), Y.dim());
  VectorFieldExpr r(X.dim());
  for (std::size_t j = 0; j < X.dim(); ++j) r[j] = X.apply(Y[j]) - Y.apply(X[j]);
  return r;
}

VectorFieldExpr wirtinger(const Chart& chart, std::size_t i, bool anti) {
  if (!chart.has_complex()) throw DomainError("chart has no complex pairing");
  if (i >= chart.complex_dim()) throw DomainError("complex index out of range");
  const auto& p = chart.pairs()[i];
  VectorFieldExpr X(chart.dim());
  GaussianRational half(mpq_class(1, 2));
  X[p.re] = ScalarExpr(half);
  X[p.im] = ScalarExpr(GaussianRational(0, anti ? mpq_class(1, 2) : mpq_class(-1, 2)));
  return X;
}

// ---------------------------------------------------------------- forms

int permutation_sign(const FormExpr::Index& idx) {
  int sign = 1;
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      if (idx[a] == idx[b]) return 0;
      if (idx[a] > idx[b]) sign = -sign;
    }
  return sign;
}

FormExpr::FormExpr(std::size_t dim, int degree) : dim_(dim), deg_(degree) {
  if (degree < 0 || degree > 3) throw DomainError("form degree must lie in 0..3");
}

FormExpr FormExpr::function(std::size_t dim, const ScalarExpr& f) {
  FormExpr w(dim, 0);
  w.set({}, f);
  return w;
}

FormExpr FormExpr::differential(std::size_t dim, int i) {
  FormExpr w(dim, 1);
  w.set({i}, ScalarExpr(1));
  return w;
}

ScalarExpr FormExpr::at(const Index& idx) const {
  int s = permutation_sign(idx);
  if (s == 0) return ScalarExpr();
  Index sorted = idx;
  std::sort(sorted.begin(), sorted.end());
  auto it = c_.find(sorted);
  if (it == c_.end()) return ScalarExpr();
  return s > 0 ? it->second : -it->second;
}

void FormExpr::set(const Index& idx, const ScalarExpr& v) {
  if (static_cast<int>(idx.size()) != deg_) throw DomainError("index length does not match degree");
  if (v.is_zero()) c_.erase(idx);
  else c_[idx] = v;
}

void FormExpr::accumulate(const Index& idx, const ScalarExpr& v) {
  int s = permutation_sign(idx);
  if (s == 0 || v.is_zero()) return;
  Index sorted = idx;
  std::sort(sorted.begin(), sorted.end());
  ScalarExpr cur = c_.count(sorted) ? c_[sorted] : ScalarExpr();
  set(sorted, s > 0 ? cur + v : cur - v);
}

bool FormExpr::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

FormExpr FormExpr::operator-() const {
  FormExpr r(dim_, deg_);
  for (const auto& [k, v] : c_) r.c_[k] = -v;
  return r;
}

FormExpr operator+(const FormExpr& a, const FormExpr& b) {
  if (a.c_.empty() && a.deg_ != b.deg_) return b;
  if (b.c_.empty() && a.deg_ != b.deg_) return a;
  check_dim(a.dim_, b.dim_);
  if (a.deg_ != b.deg_) throw DomainError("adding forms of different degree");
  FormExpr r = a;
  for (const auto& [k, v] : b.c_) r.accumulate(k, v);
  return r;
}

FormExpr operator-(const FormExpr& a, const FormExpr& b) { return a + (-b); }

FormExpr operator*(const ScalarExpr& f, const FormExpr& w) {
  FormExpr r(w.dim_, w.deg_);
  for (const auto& [k, v] : w.c_) r.set(k, f * v);
  return r;
}

bool operator==(const FormExpr& a, const FormExpr& b) { return (a - b).is_zero(); }

FormExpr FormExpr::conj() const {
  FormExpr r(dim_, deg_);
  for (const auto& [k, v] : c_) r.c_[k] = v.conj();
  return r;
}

cplx FormExpr::eval(const std::vector<double>& x, const std::vector<std::vector<cplx>>& args) const {
  if (static_cast<int>(args.size()) != deg_) throw DomainError("wrong number of form arguments");
  cplx acc = 0;
  for (const auto& [I, v] : c_) {
    // determinant of args[a][I[b]]
    cplx det = 0;
    Index perm(deg_);
    for (int a = 0; a < deg_; ++a) perm[a] = a;
    do {
      cplx prod = permutation_sign(perm);
      for (int a = 0; a < deg_; ++a) prod *= args[a][I[perm[a]]];
      det += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    acc += v.eval(x) * det;
  }
  return acc;
}

FormExpr exterior_derivative(const FormExpr& w) {
  if (w.degree() >= 3) throw DomainError("exterior derivative would exceed degree 3");
  FormExpr r(w.dim(), w.degree() + 1);
  for (const auto& [I, v] : w.coefficients()) {
    for (std::size_t j = 0; j < w.dim(); ++j) {
      ScalarExpr dv = v.diff(j);
      if (dv.is_zero()) continue;
      FormExpr::Index idx{static_cast<int>(j)};
      idx.insert(idx.end(), I.begin(), I.end());
      r.accumulate(idx, dv);
    }
  }
  return r;
}

FormExpr interior(const VectorFieldExpr& X, const FormExpr& w) {
  if (w.degree() == 0) throw DomainError("interior product of a function");
  check_dim(X.dim(), w.dim());
  FormExpr r(w.dim(), w.degree() - 1);
  for (const auto& [I, v] : w.coefficients()) {
    // w(X, ...) : slot 0 takes X, remaining indices in order
    for (std::size_t p = 0; p < I.size(); ++p) {
      const ScalarExpr& xj = X[I[p]];
      if (xj.is_zero()) continue;
      FormExpr::Index rest;
      for (std::size_t q = 0; q < I.size(); ++q)
        if (q != p) rest.push_back(I[q]);
      ScalarExpr term = xj * v;
      r.accumulate(rest, (p % 2 == 0) ? term : -term);
    }
  }
  return r;
}

FormExpr lie_derivative(const VectorFieldExpr& X, const FormExpr& w) {
  FormExpr dw = exterior_derivative(w);
  FormExpr a = interior(X, dw);
  if (w.degree() == 0) return a;
  return a + exterior_derivative(interior(X, w));
}

FormExpr wedge(const FormExpr& a, const FormExpr& b) {
  check_dim(a.dim(), b.dim());
  if (a.degree() + b.degree() > 3) throw DomainError("wedge would exceed degree 3");
  FormExpr r(a.dim(), a.degree() + b.degree());
  for (const auto& [I, u] : a.coefficients())
    for (const auto& [J, v] : b.coefficients()) {
      FormExpr::Index idx = I;
      idx.insert(idx.end(), J.begin(), J.end());
      r.accumulate(idx, u * v);
    }
  return r;
}

// ---------------------------------------------------------------- generalized

GeneralizedSection courant_bracket(const GeneralizedSection& u, const GeneralizedSection& v,
                                   const FormExpr& H) {
  if (H.degree() != 3) throw DomainError("H must be a 3-form");
  if (u.covector.degree() != 1 || v.covector.degree() != 1)
    throw DomainError("covector parts must be 1-forms");
  check_dim(u.vector.dim(), v.vector.dim());
  GeneralizedSection r;
  r.vector = lie_bracket(u.vector, v.vector);
  FormExpr c = lie_derivative(u.vector, v.covector);
  c = c - interior(v.vector, exterior_derivative(u.covector));
  c = c - interior(v.vector, interior(u.vector, H));
  r.covector = c;
  return r;
}

ScalarExpr pairing(const GeneralizedSection& u, const GeneralizedSection& v) {
  ScalarExpr acc;
  for (std::size_t i = 0; i < u.vector.dim(); ++i) {
    int k = static_cast<int>(i);
    acc += u.covector.at({k}) * v.vector[i] + v.covector.at({k}) * u.vector[i];
  }
  return ScalarExpr(GaussianRational(mpq_class(1, 2))) * acc;
}

VectorFieldExpr contract(const Bivector& pi, const FormExpr& xi) {
  std::size_t m = pi.size();
  VectorFieldExpr r(m);
  for (std::size_t i = 0; i < m; ++i) {
    ScalarExpr xi_i = xi.at({static_cast<int>(i)});
    if (xi_i.is_zero()) continue;
    for (std::size_t j = 0; j < m; ++j)
      if (!pi[i][j].is_zero()) r[j] += pi[i][j] * xi_i;
  }
  return r;
}

}  // namespace hb::calc
