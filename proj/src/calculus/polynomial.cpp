#include "hodgebench/calculus/polynomial.hpp"

#include <algorithm>
#include <numeric>

#include "hodgebench/error.hpp"

namespace hb::calc {

std::size_t common_arity(std::size_t a, std::size_t b) {
  if (a == b || b == 0) return a;
  if (a == 0) return b;
  throw ChartMismatch("expressions live on charts of dimension " + std::to_string(a) + " and " +
                      std::to_string(b));
}

Polynomial Polynomial::constant(const GaussianRational& c, std::size_t nvars) {
  Polynomial p(nvars);
  if (!c.is_zero()) p.terms_.emplace(Exponents(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw DomainError("variable index out of range");
  Polynomial p(nvars);
  Exponents e(nvars, 0);
  e[index] = 1;
  p.terms_.emplace(std::move(e), GaussianRational(1));
  return p;
}

bool Polynomial::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](auto v) { return v == 0; });
}

GaussianRational Polynomial::constant_value() const {
  if (terms_.empty()) return GaussianRational(0);
  return terms_.begin()->second;
}

int Polynomial::total_degree() const {
  int best = 0;
  for (const auto& [e, c] : terms_) {
    int d = std::accumulate(e.begin(), e.end(), 0);
    best = std::max(best, d);
  }
  return best;
}

Polynomial Polynomial::lifted(std::size_t nvars) const {
  if (nvars == nvars_) return *this;
  if (nvars_ != 0) throw ChartMismatch("cannot lift a non-constant polynomial");
  return constant(constant_value(), nvars);
}

void Polynomial::add_term(const Exponents& e, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Polynomial Polynomial::operator-() const {
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, -c);
  return r;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::size_t n = common_arity(a.nvars_, b.nvars_);
  Polynomial r = a.lifted(n);
  for (const auto& [e, c] : b.lifted(n).terms_) r.add_term(e, c);
  return r;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  std::size_t n = common_arity(a.nvars_, b.nvars_);
  Polynomial la = a.lifted(n), lb = b.lifted(n);
  Polynomial r(n);
  Exponents e(n);
  for (const auto& [ea, ca] : la.terms_) {
    for (const auto& [eb, cb] : lb.terms_) {
      for (std::size_t k = 0; k < n; ++k) e[k] = static_cast<std::uint16_t>(ea[k] + eb[k]);
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Polynomial Polynomial::scaled(const GaussianRational& c) const {
  Polynomial r(nvars_);
  if (c.is_zero()) return r;
  for (const auto& [e, v] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, v * c);
  return r;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_) {
    if (a.is_constant() && b.is_constant()) return a.constant_value() == b.constant_value();
    return false;
  }
  return a.terms_ == b.terms_;
}

Polynomial Polynomial::conj() const {
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, c.conj());
  return r;
}

Polynomial Polynomial::diff(std::size_t var) const {
  Polynomial r(nvars_);
  if (var >= nvars_) return r;
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    r.add_term(d, c * GaussianRational(static_cast<long>(e[var])));
  }
  return r;
}

Exponents Polynomial::monomial_content() const {
  Exponents m(nvars_, 0);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (first) {
      m = e;
      first = false;
    } else {
      for (std::size_t k = 0; k < nvars_; ++k) m[k] = std::min(m[k], e[k]);
    }
  }
  return m;
}

Polynomial Polynomial::shifted_down(const Exponents& s) const {
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) {
    Exponents d = e;
    for (std::size_t k = 0; k < nvars_; ++k) d[k] -= s[k];
    r.terms_.emplace(std::move(d), c);
  }
  return r;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& b) const {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  std::size_t n = common_arity(nvars_, b.nvars_);
  Polynomial rem = lifted(n);
  Polynomial div = b.lifted(n);
  Polynomial q(n);
  if (rem.is_zero()) return q;
  const auto& [lb, cb] = div.leading();
  const int max_qdeg = rem.total_degree() - div.total_degree();
  if (max_qdeg < 0) return std::nullopt;
  Exponents qe(n);
  while (!rem.is_zero()) {
    const auto& [lr, cr] = rem.leading();
    int deg = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (lr[k] < lb[k]) return std::nullopt;
      qe[k] = static_cast<std::uint16_t>(lr[k] - lb[k]);
      deg += qe[k];
    }
    if (deg > max_qdeg) return std::nullopt;
    GaussianRational qc = cr / cb;
    Polynomial t(n);
    t.terms_.emplace(qe, qc);
    q.add_term(qe, qc);
    rem = rem - t * div;
  }
  return q;
}

namespace {

std::string monomial_string(const Exponents& e, const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (e[k] == 0) continue;
    if (!s.empty()) s += "*";
    s += k < names.size() ? names[k] : "x" + std::to_string(k + 1);
    if (e[k] > 1) s += "^" + std::to_string(e[k]);
  }
  return s;
}

}  // namespace

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono = monomial_string(e, names);
    bool negative_real = c.is_real() && sgn(c.re()) < 0;
    GaussianRational mag = negative_real ? -c : c;
    std::string term;
    if (mono.empty()) {
      term = mag.to_string();
    } else if (mag == GaussianRational(1)) {
      term = mono;
    } else {
      term = mag.to_string() + "*" + mono;
    }
    if (first) {
      if (negative_real) {
        // "-x^2" would parse as (-x)^2, so spell out the unit.
        out = mono.empty() ? "-" + term : (mag == GaussianRational(1) ? "-1*" + term : "-" + term);
      } else {
        out = term;
      }
      first = false;
    } else {
      out += negative_real ? " - " : " + ";
      out += term;
    }
  }
  return out;
}

}  // namespace hb::calc
