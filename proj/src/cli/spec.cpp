#include "hodgebench/cli/spec.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "hodgebench/error.hpp"

namespace hb::cli {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Split on commas at parenthesis depth zero.
std::vector<std::string> split_list(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

double to_double(const std::string& v, std::size_t line) {
  try {
    std::size_t used = 0;
    double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ParseError("expected a number, got '" + v + "'", line);
  }
}

long long to_int(const std::string& v, std::size_t line) {
  try {
    std::size_t used = 0;
    long long d = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ParseError("expected an integer, got '" + v + "'", line);
  }
}

std::size_t to_count(const std::string& v, std::size_t line) {
  long long d = to_int(v, line);
  if (d < 0) throw ParseError("expected a nonnegative integer, got '" + v + "'", line);
  return static_cast<std::size_t>(d);
}

bool to_bool(const std::string& v, std::size_t line) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ParseError("expected true or false, got '" + v + "'", line);
}

// Key patterns allowed per algebroid kind.
const std::map<std::string, std::vector<std::string>>& kind_keys() {
  static const std::map<std::string, std::vector<std::string>> k{
      {"tangent", {}},
      {"antiholomorphic", {}},
      {"graph_bivector", {R"(pi\.\d+\.\d+)", R"(H\.\d+\.\d+\.\d+)"}},
      {"graph_two_form", {R"(omega\.\d+\.\d+)", "generalized_complex"}},
      {"holomorphic_poisson", {R"(sigma\.\d+\.\d+)", "example"}},
      {"custom", {R"(anchor\.\d+)", R"(structure\.\d+\.\d+\.\d+)"}},
  };
  return k;
}

std::vector<std::size_t> key_indices(const std::string& key) {
  std::vector<std::size_t> out;
  std::stringstream ss(key);
  std::string part;
  std::getline(ss, part, '.');
  while (std::getline(ss, part, '.')) out.push_back(std::stoul(part));
  return out;
}

}  // namespace

SpecFile parse_spec(const std::string& text) {
  SpecFile s;
  std::string section;
  std::set<std::string> seen;
  bool have_dim = false, have_names = false;
  std::size_t dim = 0;
  std::string complex_value;
  std::size_t complex_line = 0;
  bool radii_set = false;

  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    // strip a comment outside quotes
    bool q = false;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] == '"') q = !q;
      if (raw[i] == '#' && !q) {
        raw.resize(i);
        break;
      }
    }
    std::string l = trim(raw);
    if (l.empty()) continue;
    if (l.front() == '[') {
      if (l.back() != ']') throw ParseError("unterminated section header", line);
      section = trim(l.substr(1, l.size() - 2));
      if (section != "chart" && section != "boundary" && section != "algebroid" && section != "options")
        throw ParseError("unknown section [" + section + "]", line);
      continue;
    }
    auto eq = l.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value", line);
    if (section.empty()) throw ParseError("key outside any section", line);
    std::string key = trim(l.substr(0, eq)), val = trim(l.substr(eq + 1));
    if (val.size() >= 2 && val.front() == '"' && val.back() == '"') val = val.substr(1, val.size() - 2);
    else if (val.find('"') != std::string::npos) throw ParseError("unbalanced quote", line);
    std::string full = section + "." + key;
    if (key != "point" && !seen.insert(full).second) throw ParseError("duplicate key '" + key + "'", line);

    if (section == "chart") {
      if (key == "dim") {
        dim = to_count(val, line);
        have_dim = true;
      } else if (key == "names") {
        s.chart.names = split_list(val);
        have_names = true;
      } else if (key == "complex") {
        complex_value = val;
        complex_line = line;
      } else {
        throw ParseError("unknown key '" + key + "' in [chart]", line);
      }
    } else if (section == "boundary") {
      if (key == "r") s.boundary.r = val;
      else if (key == "sampler") {
        if (val != "sphere" && val != "spheres" && val != "points")
          throw ParseError("sampler must be sphere, spheres or points", line);
        s.boundary.sampler = val;
      } else if (key == "count") s.boundary.count = to_count(val, line);
      else if (key == "radii") {
        s.boundary.radii.clear();
        for (const auto& v : split_list(val)) s.boundary.radii.push_back(to_double(v, line));
        radii_set = true;
      } else if (key == "point") {
        bnd::Point p;
        for (const auto& v : split_list(val)) p.push_back(to_double(v, line));
        s.boundary.points.push_back(p);
      } else {
        throw ParseError("unknown key '" + key + "' in [boundary]", line);
      }
    } else if (section == "algebroid") {
      if (key == "kind") {
        if (!kind_keys().count(val)) throw ParseError("unknown algebroid kind '" + val + "'", line);
        s.algebroid.kind = val;
      } else {
        if (s.algebroid.kind.empty()) throw ParseError("kind must precede kind-specific keys", line);
        bool ok = false;
        for (const auto& pat : kind_keys().at(s.algebroid.kind))
          if (std::regex_match(key, std::regex(pat))) ok = true;
        if (!ok) throw ParseError("key '" + key + "' not valid for kind " + s.algebroid.kind, line);
        s.algebroid.entries[key] = val;
      }
    } else {
      auto& o = s.options;
      if (key == "name") o.name = val;
      else if (key == "seed") o.seed = static_cast<std::uint64_t>(to_int(val, line));
      else if (key == "q_min") o.q_min = static_cast<int>(to_int(val, line));
      else if (key == "q_max") o.q_max = static_cast<int>(to_int(val, line));
      else if (key == "rank_tol") o.tol.rank_tol = to_double(val, line);
      else if (key == "eig_zero_tol") o.tol.eig_zero_tol = to_double(val, line);
      else if (key == "boundary_tol") o.tol.boundary_tol = to_double(val, line);
      else if (key == "transition_band") o.tol.transition_band = to_double(val, line);
      else if (key == "hermitian_tol") o.tol.hermitian_tol = to_double(val, line);
      else throw ParseError("unknown key '" + key + "' in [options]", line);
    }
  }

  // chart: names default to x1..x_dim; `complex = n` pairs consecutive variables
  if (!have_names) {
    if (!have_dim) {
      if (complex_value.empty() || complex_value.find(':') != std::string::npos)
        throw ParseError("[chart] needs dim, names or complex = n", line);
      dim = 2 * to_count(complex_value, complex_line);
    }
    for (std::size_t k = 0; k < dim; ++k) s.chart.names.push_back("x" + std::to_string(k + 1));
  } else if (have_dim && dim != s.chart.names.size()) {
    throw ParseError("dim disagrees with the number of names", line);
  }
  if (!complex_value.empty()) {
    if (complex_value.find(':') == std::string::npos) {
      std::size_t n = to_count(complex_value, complex_line);
      if (2 * n != s.chart.names.size()) throw ParseError("complex = n needs 2n variables", complex_line);
      for (std::size_t k = 0; k < n; ++k) s.chart.pairs.push_back({"z" + std::to_string(k + 1), 2 * k, 2 * k + 1});
    } else {
      for (const auto& item : split_list(complex_value)) {
        auto parts = split_list(item, ':');
        if (parts.size() != 3) throw ParseError("complex pair must read name:re:im", complex_line);
        auto idx = [&](const std::string& nm) {
          auto it = std::find(s.chart.names.begin(), s.chart.names.end(), nm);
          if (it == s.chart.names.end()) throw ParseError("unknown variable '" + nm + "'", complex_line);
          return static_cast<std::size_t>(it - s.chart.names.begin());
        };
        s.chart.pairs.push_back({parts[0], idx(parts[1]), idx(parts[2])});
      }
    }
  }
  if (s.boundary.r.empty()) throw ParseError("[boundary] needs r", line);
  if (s.algebroid.kind.empty()) throw ParseError("[algebroid] needs kind", line);
  if (s.boundary.sampler == "points" && s.boundary.points.empty())
    throw ParseError("sampler = points needs at least one point", line);
  if (s.boundary.radii.empty() || (!radii_set && s.boundary.sampler == "spheres"))
    throw ParseError("sampler = spheres needs radii", line);
  for (const auto& p : s.boundary.points)
    if (p.size() != s.chart.names.size()) throw ParseError("point dimension disagrees with the chart", line);
  return s;
}

std::string print_spec(const SpecFile& s) {
  std::ostringstream o;
  o << "[chart]\n";
  o << "dim = " << s.chart.names.size() << "\n";
  o << "names = ";
  for (std::size_t i = 0; i < s.chart.names.size(); ++i) o << (i ? ", " : "") << s.chart.names[i];
  o << "\n";
  if (!s.chart.pairs.empty()) {
    o << "complex = ";
    for (std::size_t i = 0; i < s.chart.pairs.size(); ++i) {
      const auto& p = s.chart.pairs[i];
      o << (i ? ", " : "") << p.name << ":" << s.chart.names[p.re] << ":" << s.chart.names[p.im];
    }
    o << "\n";
  }
  o << "\n[boundary]\n";
  o << "r = \"" << s.boundary.r << "\"\n";
  o << "sampler = " << s.boundary.sampler << "\n";
  o << "count = " << s.boundary.count << "\n";
  o << "radii = ";
  for (std::size_t i = 0; i < s.boundary.radii.size(); ++i) o << (i ? ", " : "") << fmt(s.boundary.radii[i]);
  o << "\n";
  for (const auto& p : s.boundary.points) {
    o << "point = ";
    for (std::size_t i = 0; i < p.size(); ++i) o << (i ? ", " : "") << fmt(p[i]);
    o << "\n";
  }
  o << "\n[algebroid]\n";
  o << "kind = " << s.algebroid.kind << "\n";
  for (const auto& [k, v] : s.algebroid.entries) o << k << " = \"" << v << "\"\n";
  o << "\n[options]\n";
  if (!s.options.name.empty()) o << "name = " << s.options.name << "\n";
  o << "seed = " << s.options.seed << "\n";
  o << "q_min = " << s.options.q_min << "\n";
  o << "q_max = " << s.options.q_max << "\n";
  o << "rank_tol = " << fmt(s.options.tol.rank_tol) << "\n";
  o << "eig_zero_tol = " << fmt(s.options.tol.eig_zero_tol) << "\n";
  o << "boundary_tol = " << fmt(s.options.tol.boundary_tol) << "\n";
  o << "transition_band = " << fmt(s.options.tol.transition_band) << "\n";
  o << "hermitian_tol = " << fmt(s.options.tol.hermitian_tol) << "\n";
  return o.str();
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string spec_hash(const SpecFile& s) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(print_spec(s))));
  return buf;
}

SpecFile load_spec(const std::string& name_or_path) {
  auto names = gallery_names();
  if (std::find(names.begin(), names.end(), name_or_path) != names.end()) return parse_spec(gallery_text(name_or_path));
  std::ifstream f(name_or_path);
  if (!f) throw Error("cannot open spec '" + name_or_path + "' (not a file or gallery name)");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_spec(ss.str());
}

namespace {

calc::ScalarExpr expr(const std::string& key, const std::string& text, const calc::Chart& c) {
  try {
    return calc::parse_expr(text, c);
  } catch (const ParseError& e) {
    throw ParseError("in '" + key + "': " + e.what(), e.offset());
  }
}

calc::Bivector bivector_from(const SpecFile& s, const std::string& prefix, std::size_t n, const calc::Chart& c) {
  calc::Bivector pi(n, std::vector<calc::ScalarExpr>(n));
  for (const auto& [k, v] : s.algebroid.entries) {
    if (k.rfind(prefix + ".", 0) != 0) continue;
    auto ix = key_indices(k);
    if (ix[0] < 1 || ix[1] < 1 || ix[0] > n || ix[1] > n || ix[0] >= ix[1])
      throw DomainError("'" + k + "' needs 1 <= i < j <= " + std::to_string(n));
    auto e = expr(k, v, c);
    pi[ix[0] - 1][ix[1] - 1] = e;
    pi[ix[1] - 1][ix[0] - 1] = -e;
  }
  return pi;
}

std::optional<calc::FormExpr> form_from(const SpecFile& s, const std::string& prefix, int degree,
                                        const calc::Chart& c) {
  std::optional<calc::FormExpr> out;
  for (const auto& [k, v] : s.algebroid.entries) {
    if (k.rfind(prefix + ".", 0) != 0) continue;
    if (!out) out = calc::FormExpr(c.dim(), degree);
    calc::FormExpr::Index idx;
    for (auto i : key_indices(k)) {
      if (i < 1 || i > c.dim()) throw DomainError("'" + k + "' index outside the chart");
      idx.push_back(static_cast<int>(i - 1));
    }
    if (!std::is_sorted(idx.begin(), idx.end()) || std::adjacent_find(idx.begin(), idx.end()) != idx.end())
      throw DomainError("'" + k + "' indices must increase");
    out->set(idx, expr(k, v, c));
  }
  return out;
}

void require_complex_space(const calc::Chart& c, const std::string& kind) {
  if (!c.has_complex() || !(c == calc::Chart::complex_space(c.complex_dim())))
    throw ChartMismatch(kind + " needs the standard complex chart (complex = n)");
}

}  // namespace

BuiltSpec build(const SpecFile& s, std::optional<std::size_t> samples_override) {
  BuiltSpec b;
  calc::Chart chart(s.chart.names, s.chart.pairs);
  const std::string& kind = s.algebroid.kind;
  const auto& E = s.algebroid.entries;
  if (kind == "tangent") {
    b.algebroid = alg::make_tangent(chart);
  } else if (kind == "antiholomorphic") {
    require_complex_space(chart, kind);
    b.algebroid = alg::make_antiholomorphic(chart.complex_dim());
  } else if (kind == "graph_bivector") {
    b.algebroid = alg::make_graph_bivector(chart, bivector_from(s, "pi", chart.dim(), chart), form_from(s, "H", 3, chart));
  } else if (kind == "graph_two_form") {
    auto w = form_from(s, "omega", 2, chart);
    bool gc = E.count("generalized_complex") && to_bool(E.at("generalized_complex"), 0);
    b.algebroid = alg::make_graph_two_form(chart, w ? *w : calc::FormExpr(chart.dim(), 2), gc);
  } else if (kind == "holomorphic_poisson") {
    require_complex_space(chart, kind);
    std::size_t n = chart.complex_dim();
    calc::Bivector sigma;
    if (E.count("example")) {
      auto k = static_cast<std::size_t>(to_count(E.at("example"), 0));
      if (2 * k + 2 != n) throw ChartMismatch("example k needs complex dimension 2k+2");
      sigma = alg::poisson_example_sigma(k);
      for (const auto& [key, v] : E)
        if (key != "example") throw DomainError("example and explicit sigma entries are exclusive");
    } else {
      sigma = bivector_from(s, "sigma", n, chart);
    }
    b.algebroid = alg::make_holomorphic_poisson(n, sigma);
  } else if (kind == "custom") {
    std::vector<calc::VectorFieldExpr> anchor;
    std::size_t l = 0;
    for (const auto& [k, v] : E)
      if (k.rfind("anchor.", 0) == 0) l = std::max(l, key_indices(k)[0]);
    for (std::size_t i = 1; i <= l; ++i) {
      std::string key = "anchor." + std::to_string(i);
      if (!E.count(key)) throw DomainError("custom anchors must be numbered 1.." + std::to_string(l));
      std::string body = E.at(key);
      if (body.size() >= 2 && body.front() == '[' && body.back() == ']') body = body.substr(1, body.size() - 2);
      auto comps = split_list(body);
      if (comps.size() != chart.dim()) throw DomainError("'" + key + "' needs " + std::to_string(chart.dim()) + " components");
      std::vector<calc::ScalarExpr> c;
      for (const auto& t : comps) c.push_back(expr(key, t, chart));
      anchor.emplace_back(c);
    }
    std::optional<alg::StructureTable> table;
    for (const auto& [k, v] : E) {
      if (k.rfind("structure.", 0) != 0) continue;
      if (!table) table = alg::StructureTable(l, std::vector<std::vector<calc::ScalarExpr>>(l, std::vector<calc::ScalarExpr>(l)));
      auto ix = key_indices(k);
      if (ix[0] < 1 || ix[1] < 1 || ix[2] < 1 || ix[0] > l || ix[1] > l || ix[2] > l || ix[0] >= ix[1])
        throw DomainError("'" + k + "' needs 1 <= i < j <= rank and 1 <= k <= rank");
      auto e = expr(k, v, chart);
      (*table)[ix[0] - 1][ix[1] - 1][ix[2] - 1] = e;
      (*table)[ix[1] - 1][ix[0] - 1][ix[2] - 1] = -e;
    }
    b.algebroid = alg::make_custom(chart, anchor, table);
  } else {
    throw DomainError("unknown algebroid kind '" + kind + "'");
  }
  if (!s.options.name.empty()) b.algebroid.name = s.options.name;
  b.boundary = {expr("r", s.boundary.r, b.algebroid.chart), s.options.tol};

  std::size_t count = samples_override.value_or(s.boundary.count);
  const std::size_t m = chart.dim();
  if (s.boundary.sampler == "sphere") b.samples = bnd::sphere_lattice(m, count, s.boundary.radii.front());
  else if (s.boundary.sampler == "spheres") b.samples = bnd::multi_sphere_lattice(m, count, s.boundary.radii);
  b.lattice_count = b.samples.size();
  b.samples.insert(b.samples.end(), s.boundary.points.begin(), s.boundary.points.end());

  b.q_min = s.options.q_min;
  b.q_max = s.options.q_max < 0 ? static_cast<int>(b.algebroid.rank) : s.options.q_max;
  if (b.q_min < 0 || b.q_min > b.q_max) throw DomainError("q range is empty");
  return b;
}

}  // namespace hb::cli
