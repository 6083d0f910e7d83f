#include "hodgebench/calculus/expr.hpp"

#include <cctype>
#include <set>

#include "hodgebench/error.hpp"

namespace hb::calc {

// ---------------------------------------------------------------- Chart

Chart::Chart(std::size_t dim) {
  for (std::size_t k = 0; k < dim; ++k) names_.push_back("x" + std::to_string(k + 1));
  validate();
}

Chart::Chart(std::vector<std::string> names, std::vector<ComplexPair> pairs)
    : names_(std::move(names)), pairs_(std::move(pairs)) {
  validate();
}

Chart Chart::complex_space(std::size_t n) {
  std::vector<std::string> names;
  std::vector<ComplexPair> pairs;
  for (std::size_t k = 0; k < n; ++k) {
    names.push_back("x" + std::to_string(2 * k + 1));
    names.push_back("x" + std::to_string(2 * k + 2));
    pairs.push_back({"z" + std::to_string(k + 1), 2 * k, 2 * k + 1});
  }
  return Chart(std::move(names), std::move(pairs));
}

void Chart::validate() const {
  if (names_.empty()) throw DomainError("chart dimension must be positive");
  std::set<std::string> seen(names_.begin(), names_.end());
  if (seen.size() != names_.size()) throw DomainError("duplicate chart variable name");
  if (pairs_.empty()) return;
  if (names_.size() % 2 != 0 || pairs_.size() * 2 != names_.size())
    throw DomainError("complex pairing must cover an even-dimensional chart");
  std::set<std::size_t> used;
  for (const auto& p : pairs_) {
    if (p.re >= names_.size() || p.im >= names_.size() || p.re == p.im)
      throw DomainError("complex pair '" + p.name + "' has invalid indices");
    used.insert(p.re);
    used.insert(p.im);
  }
  if (used.size() != names_.size()) throw DomainError("complex pairing is not a bijection");
}

// ---------------------------------------------------------------- ScalarExpr

namespace {

struct EvalTerm {
  cplx c;
  std::vector<std::pair<std::uint16_t, std::uint16_t>> powers;
};

std::vector<EvalTerm> eval_table(const Polynomial& p) {
  std::vector<EvalTerm> out;
  out.reserve(p.terms().size());
  for (const auto& [e, c] : p.terms()) {
    EvalTerm t{c.to_complex(), {}};
    for (std::size_t k = 0; k < e.size(); ++k)
      if (e[k]) t.powers.emplace_back(static_cast<std::uint16_t>(k), e[k]);
    out.push_back(std::move(t));
  }
  return out;
}

cplx eval_terms(const std::vector<EvalTerm>& ts, const std::vector<double>& x) {
  cplx acc = 0;
  for (const auto& t : ts) {
    double m = 1;
    for (auto [k, p] : t.powers) {
      double v = x[k];
      for (int j = 0; j < p; ++j) m *= v;
    }
    acc += t.c * m;
  }
  return acc;
}

}  // namespace

struct ScalarExpr::Impl {
  Polynomial num, den;
  std::vector<EvalTerm> num_eval, den_eval;
  bool den_is_one = true;

  Impl(Polynomial n, Polynomial d) : num(std::move(n)), den(std::move(d)) {
    num_eval = eval_table(num);
    den_is_one = den.is_constant() && den.constant_value() == GaussianRational(1);
    if (!den_is_one) den_eval = eval_table(den);
  }
};

namespace {

std::pair<Polynomial, Polynomial> normalize(Polynomial num, Polynomial den) {
  if (den.is_zero()) throw DomainError("division by zero expression");
  std::size_t n = common_arity(num.nvars(), den.nvars());
  num = num.lifted(n);
  den = den.lifted(n);
  if (num.is_zero()) return {Polynomial(n), Polynomial::constant(1, n)};
  if (den.is_constant()) {
    GaussianRational c = den.constant_value();
    if (!(c == GaussianRational(1))) num = num.scaled(GaussianRational(1) / c);
    return {std::move(num), Polynomial::constant(1, n)};
  }
  Exponents mc = num.monomial_content();
  Exponents md = den.monomial_content();
  bool shift = false;
  for (std::size_t k = 0; k < n; ++k) {
    mc[k] = std::min(mc[k], md[k]);
    shift = shift || mc[k] != 0;
  }
  if (shift) {
    num = num.shifted_down(mc);
    den = den.shifted_down(mc);
    if (den.is_constant()) return normalize(std::move(num), std::move(den));
  }
  if (auto q = num.divide_exact(den)) return {std::move(*q), Polynomial::constant(1, n)};
  if (num.total_degree() > 0) {
    if (auto q = den.divide_exact(num)) {
      num = Polynomial::constant(1, n);
      den = std::move(*q);
      if (den.is_constant()) return normalize(std::move(num), std::move(den));
    }
  }
  GaussianRational lc = den.leading().second;
  if (!(lc == GaussianRational(1))) {
    GaussianRational inv = GaussianRational(1) / lc;
    num = num.scaled(inv);
    den = den.scaled(inv);
  }
  return {std::move(num), std::move(den)};
}

}  // namespace

ScalarExpr::ScalarExpr() : ScalarExpr(GaussianRational(0)) {}

ScalarExpr::ScalarExpr(const GaussianRational& c)
    : p_(std::make_shared<const Impl>(Polynomial::constant(c), Polynomial::constant(1))) {}

ScalarExpr::ScalarExpr(Polynomial num, Polynomial den) {
  auto [n, d] = normalize(std::move(num), std::move(den));
  p_ = std::make_shared<const Impl>(std::move(n), std::move(d));
}

ScalarExpr ScalarExpr::var(std::size_t nvars, std::size_t index) {
  return ScalarExpr(Polynomial::variable(nvars, index));
}

ScalarExpr ScalarExpr::complex_coord(const Chart& chart, std::size_t k, bool conjugate) {
  if (k >= chart.complex_dim()) throw DomainError("complex coordinate index out of range");
  const auto& p = chart.pairs()[k];
  ScalarExpr im = var(chart.dim(), p.im) * imag_unit();
  return conjugate ? var(chart.dim(), p.re) - im : var(chart.dim(), p.re) + im;
}

std::size_t ScalarExpr::nvars() const { return p_->num.nvars(); }
const Polynomial& ScalarExpr::numerator() const { return p_->num; }
const Polynomial& ScalarExpr::denominator() const { return p_->den; }
bool ScalarExpr::is_zero() const { return p_->num.is_zero(); }
bool ScalarExpr::is_constant() const { return p_->den_is_one && p_->num.is_constant(); }
bool ScalarExpr::is_polynomial() const { return p_->den_is_one; }

ScalarExpr ScalarExpr::operator-() const {
  return ScalarExpr(std::make_shared<const Impl>(-p_->num, p_->den));
}

ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return b;
  if (a.p_->den == b.p_->den) return ScalarExpr(a.p_->num + b.p_->num, a.p_->den);
  return ScalarExpr(a.p_->num * b.p_->den + b.p_->num * a.p_->den, a.p_->den * b.p_->den);
}

ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b) { return a + (-b); }

ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b) {
  if (a.is_zero() || b.is_zero()) {
    std::size_t n = common_arity(a.nvars(), b.nvars());
    return ScalarExpr(Polynomial(n));
  }
  if (a.p_->den_is_one && b.p_->den_is_one)
    return ScalarExpr(std::make_shared<const ScalarExpr::Impl>(
        a.p_->num * b.p_->num, Polynomial::constant(1, common_arity(a.nvars(), b.nvars()))));
  return ScalarExpr(a.p_->num * b.p_->num, a.p_->den * b.p_->den);
}

ScalarExpr operator/(const ScalarExpr& a, const ScalarExpr& b) {
  if (b.is_zero()) throw DomainError("division by zero expression");
  return ScalarExpr(a.p_->num * b.p_->den, a.p_->den * b.p_->num);
}

bool operator==(const ScalarExpr& a, const ScalarExpr& b) {
  if (a.p_ == b.p_) return true;
  return (a.p_->num * b.p_->den - b.p_->num * a.p_->den).is_zero();
}

ScalarExpr ScalarExpr::pow(int k) const {
  if (k < 0) return ScalarExpr(1) / pow(-k);
  ScalarExpr result(1), base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

ScalarExpr ScalarExpr::conj() const {
  return ScalarExpr(std::make_shared<const Impl>(p_->num.conj(), p_->den.conj()));
}

ScalarExpr ScalarExpr::diff(std::size_t var) const {
  if (p_->den_is_one)
    return ScalarExpr(std::make_shared<const Impl>(p_->num.diff(var), p_->den));
  const Polynomial& n = p_->num;
  const Polynomial& d = p_->den;
  return ScalarExpr(n.diff(var) * d - n * d.diff(var), d * d);
}

cplx ScalarExpr::eval(const std::vector<double>& x) const {
  if (x.size() < nvars()) throw DomainError("evaluation point has too few coordinates");
  cplx n = eval_terms(p_->num_eval, x);
  if (p_->den_is_one) return n;
  cplx d = eval_terms(p_->den_eval, x);
  if (d == cplx(0)) throw DomainError("denominator vanishes at evaluation point");
  return n / d;
}

std::string ScalarExpr::to_string(const std::vector<std::string>& names) const {
  std::string n = p_->num.to_string(names);
  if (p_->den_is_one) return n;
  return "(" + n + ")/(" + p_->den.to_string(names) + ")";
}

ScalarExpr conj(const ScalarExpr& e) { return e.conj(); }
ScalarExpr differentiate(const ScalarExpr& e, std::size_t var) { return e.diff(var); }

// ---------------------------------------------------------------- parser

namespace {

class Parser {
public:
  Parser(const std::string& text, const Chart& chart) : s_(text), chart_(chart) {}

  ScalarExpr parse() {
    ScalarExpr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ScalarExpr expr() {
    ScalarExpr acc = term();
    for (;;) {
      if (accept('+')) acc = acc + term();
      else if (accept('-')) acc = acc - term();
      else return acc;
    }
  }

  ScalarExpr term() {
    ScalarExpr acc = factor();
    for (;;) {
      if (accept('*')) {
        acc = acc * factor();
      } else if (accept('/')) {
        std::size_t at = pos_;
        ScalarExpr d = factor();
        if (d.is_zero()) throw ParseError("division by zero", at);
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  ScalarExpr factor() {
    ScalarExpr b = base();
    if (accept('^')) {
      skip();
      bool neg = false;
      if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) neg = s_[pos_++] == '-';
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected integer exponent");
      if (pos_ - start > 4) throw ParseError("exponent too large", start);
      int k = std::stoi(s_.substr(start, pos_ - start));
      if (neg && b.is_zero()) throw ParseError("negative power of zero", start);
      b = b.pow(neg ? -k : k);
    }
    return b;
  }

  ScalarExpr base() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '-') {
      ++pos_;
      return -base();
    }
    if (c == '(') {
      ++pos_;
      ScalarExpr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  ScalarExpr number() {
    std::size_t start = pos_;
    std::string digits;
    long frac = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) digits += s_[pos_++];
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        digits += s_[pos_++];
        ++frac;
      }
    }
    if (digits.empty()) throw ParseError("malformed number", start);
    long exp10 = 0;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t save = pos_++;
      bool neg = false;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) neg = s_[pos_++] == '-';
      std::size_t es = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (es == pos_ || pos_ - es > 4) {
        pos_ = save;
      } else {
        exp10 = std::stol(s_.substr(es, pos_ - es));
        if (neg) exp10 = -exp10;
      }
    }
    mpq_class v(mpz_class(digits, 10));
    long shift = exp10 - frac;
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    if (shift < 0) v /= p;
    else v *= p;
    return ScalarExpr(GaussianRational(v));
  }

  ScalarExpr identifier() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    std::string id = s_.substr(start, pos_ - start);
    if (id == "i") return ScalarExpr::imag_unit();
    if (id == "conj") {
      if (!accept('(')) fail("expected '(' after conj");
      ScalarExpr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e.conj();
    }
    const auto& names = chart_.names();
    for (std::size_t k = 0; k < names.size(); ++k)
      if (names[k] == id) return ScalarExpr::var(chart_.dim(), k);
    const auto& pairs = chart_.pairs();
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (pairs[k].name == id) return ScalarExpr::complex_coord(chart_, k, false);
      if (conjugate_name(pairs[k].name) == id) return ScalarExpr::complex_coord(chart_, k, true);
    }
    throw ParseError("unknown variable '" + id + "'", start);
  }

  static std::string conjugate_name(const std::string& n) {
    std::size_t cut = n.size();
    while (cut > 0 && std::isdigit(static_cast<unsigned char>(n[cut - 1]))) --cut;
    return n.substr(0, cut) + "b" + n.substr(cut);
  }

  const std::string& s_;
  const Chart& chart_;
  std::size_t pos_ = 0;
};

}  // namespace

ScalarExpr parse_expr(const std::string& text, const Chart& chart) {
  return Parser(text, chart).parse();
}

}  // namespace hb::calc
