#include "hodgebench/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "hodgebench/error.hpp"
#include "hodgebench/hodge/hodge.hpp"
#include "hodgebench/parallel.hpp"
#include "hodgebench/sobolev/sobolev.hpp"

namespace hb::cli {

using nlohmann::ordered_json;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void dump_rec(const ordered_json& j, int indent, int level, std::string& out) {
  auto pad = [&](int l) { out += '\n' + std::string(static_cast<std::size_t>(indent * l), ' '); };
  if (j.is_object() || j.is_array()) {
    bool obj = j.is_object();
    if (j.empty()) {
      out += obj ? "{}" : "[]";
      return;
    }
    out += obj ? '{' : '[';
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out += ',';
      first = false;
      if (indent > 0) pad(level + 1);
      if (obj) {
        out += ordered_json(it.key()).dump();
        out += indent > 0 ? ": " : ":";
      }
      dump_rec(*it, indent, level + 1, out);
    }
    if (indent > 0) pad(level);
    out += obj ? '}' : ']';
  } else if (j.is_number_float()) {
    double v = j.get<double>();
    out += std::isfinite(v) ? fmt(v) : "null";
  } else {
    out += j.dump();
  }
}

ordered_json point_json(const bnd::Point& p) {
  ordered_json a = ordered_json::array();
  for (double v : p) a.push_back(v);
  return a;
}

ordered_json matrix_json(const Eigen::MatrixXcd& M) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index k = 0; k < M.cols(); ++k) row.push_back({M(i, k).real(), M(i, k).imag()});
    rows.push_back(row);
  }
  return rows;
}

ordered_json signature_json(const bnd::Signature& s) { return {s.pos, s.neg, s.zero}; }

std::string signature_text(const bnd::Signature& s) {
  return "(" + std::to_string(s.pos) + "," + std::to_string(s.neg) + "," + std::to_string(s.zero) + ")";
}

std::string point_text(const bnd::Point& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + fmt(p[i]);
  return s + "]";
}

ordered_json meta(const std::string& command, const SpecFile* spec, std::uint64_t seed) {
  ordered_json m;
  m["tool"] = "workbench";
  m["version"] = kToolVersion;
  m["command"] = command;
  if (spec) {
    m["spec"] = spec->options.name;
    m["spec_hash"] = spec_hash(*spec);
  }
  m["seed"] = seed;
  return m;
}

std::vector<std::string> point_columns(std::size_t m) {
  std::vector<std::string> c{"index"};
  for (std::size_t i = 1; i <= m; ++i) c.push_back("x" + std::to_string(i));
  return c;
}

std::vector<std::string> point_cells(std::size_t index, const bnd::Point& p) {
  std::vector<std::string> r{std::to_string(index)};
  for (double v : p) r.push_back(fmt(v));
  return r;
}

Eigen::MatrixXcd to_t01(const Eigen::MatrixXcd& V) {
  Eigen::MatrixXcd U(V.rows() / 2, V.cols());
  for (Eigen::Index a = 0; a < U.rows(); ++a) U.row(a) = V.row(2 * a) - calc::cplx(0, 1) * V.row(2 * a + 1);
  return U;
}

std::vector<bnd::Point> read_points(const std::string& path, std::size_t dim) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open point list '" + path + "'");
  std::vector<bnd::Point> pts;
  std::string line;
  std::size_t n = 0;
  while (std::getline(f, line)) {
    ++n;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    bnd::Point p;
    std::string tok;
    while (ss >> tok) {
      try {
        p.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw ParseError("bad number '" + tok + "' in point list", n);
      }
    }
    if (p.empty()) continue;
    if (p.size() != dim) throw ParseError("point has " + std::to_string(p.size()) + " coordinates, chart has " + std::to_string(dim), n);
    pts.push_back(p);
  }
  if (pts.empty()) throw Error("point list '" + path + "' is empty");
  return pts;
}

template <class F>
auto at_point(const bnd::Point& x, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw DomainError(std::string(e.what()) + " (at point " + point_text(x) + ")");
  }
}

std::uint64_t seed_of(const SpecFile* spec, const CommandOptions& o) {
  if (o.seed) return *o.seed;
  return spec ? spec->options.seed : 7;
}

}  // namespace

std::string dump_json(const ordered_json& j, int indent) {
  std::string out;
  dump_rec(j, indent, 0, out);
  return out + "\n";
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) o += c == '"' ? std::string("\"\"") : std::string(1, c);
  return o + "\"";
}

std::string Report::render(const std::string& format) const {
  if (format == "json") return dump_json(body);
  if (format != "csv") throw Error("unknown format '" + format + "' (json or csv)");
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + csv_escape(columns[i]);
  out += "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + csv_escape(r[i]);
    out += "\n";
  }
  return out;
}

Report cmd_classify(const SpecFile& spec, const CommandOptions& o) {
  BuiltSpec b = build(spec, o.samples);
  bnd::BoundaryContext ctx(b.algebroid, b.boundary);
  std::vector<bnd::Classification> cls(b.samples.size());
  parallel_for(b.samples.size(), [&](std::size_t i) {
    cls[i] = at_point(b.samples[i], [&] { return bnd::classify_point(ctx, b.samples[i]); });
  });
  const bool gc = b.algebroid.generalized_complex;
  std::vector<int> gc_agree(b.samples.size(), 1);
  if (gc)
    parallel_for(b.samples.size(), [&](std::size_t i) {
      gc_agree[i] = bnd::gc_ellipticity_via_bivector(ctx, b.samples[i]).elliptic() == cls[i].elliptic();
    });

  Report r;
  r.body["meta"] = meta("classify", &spec, seed_of(&spec, o));
  std::size_t ell = 0, lat_non = 0, exp_non = 0, near = 0;
  double mn = std::numeric_limits<double>::infinity(), mx = 0;
  ordered_json pts = ordered_json::array();
  r.columns = point_columns(ctx.dim());
  r.columns.insert(r.columns.end(), {"class", "margin", "near_transition"});
  for (std::size_t i = 0; i < cls.size(); ++i) {
    const auto& c = cls[i];
    if (c.elliptic()) ++ell;
    else if (i < b.lattice_count) ++lat_non;
    else ++exp_non;
    if (c.near_transition) ++near;
    mn = std::min(mn, c.margin);
    mx = std::max(mx, c.margin);
    std::string name = c.elliptic() ? "elliptic" : "non-elliptic";
    pts.push_back({{"index", i}, {"point", point_json(b.samples[i])}, {"class", name}, {"margin", c.margin},
                   {"near_transition", c.near_transition}});
    auto row = point_cells(i, b.samples[i]);
    row.insert(row.end(), {name, fmt(c.margin), c.near_transition ? "true" : "false"});
    r.rows.push_back(row);
  }
  const double n = static_cast<double>(cls.size());
  ordered_json s;
  s["samples"] = cls.size();
  s["lattice_samples"] = b.lattice_count;
  s["explicit_points"] = cls.size() - b.lattice_count;
  s["elliptic"] = ell;
  s["non_elliptic"] = cls.size() - ell;
  s["elliptic_fraction"] = n > 0 ? static_cast<double>(ell) / n : 0.0;
  s["lattice_non_elliptic"] = lat_non;
  s["explicit_non_elliptic"] = exp_non;
  s["min_margin"] = cls.empty() ? 0.0 : mn;
  s["max_margin"] = mx;
  s["near_transition"] = near;
  if (gc) s["gc_bivector_agreement"] = std::all_of(gc_agree.begin(), gc_agree.end(), [](int v) { return v != 0; });
  r.body["summary"] = s;
  r.body["points"] = pts;
  return r;
}

Report cmd_levi(const SpecFile& spec, const CommandOptions& o) {
  BuiltSpec b = build(spec, o.samples);
  bnd::BoundaryContext ctx(b.algebroid, b.boundary);
  std::vector<bnd::Point> pts = o.points_file.empty() ? b.samples : read_points(o.points_file, ctx.dim());
  const double tol = b.boundary.tol.eig_zero_tol;
  const bool hessian_route = b.algebroid.kind == alg::Kind::Antiholomorphic;

  struct Row {
    bnd::Classification cls;
    std::optional<bnd::LeviReport> generic;
    std::optional<Eigen::MatrixXcd> poisson, hessian;
    double route_diff = 0, cr_identity = 0;
    bool sig_agree = true;
    std::vector<double> eig;
  };
  std::vector<Row> rows(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    at_point(pts[i], [&] {
      Row& w = rows[i];
      w.cls = bnd::classify_point(ctx, pts[i]);
      if (w.cls.elliptic()) return 0;
      w.generic = bnd::levi_form_generic(ctx, pts[i]);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (w.generic->levi + w.generic->levi.adjoint()));
      for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) w.eig.push_back(es.eigenvalues()(k));
      if (ctx.has_poisson()) {
        w.poisson = bnd::levi_form_poisson(ctx, pts[i]);
        w.route_diff = std::max(w.route_diff, (*w.poisson - w.generic->levi).cwiseAbs().maxCoeff());
        w.sig_agree = w.sig_agree && bnd::eigen_signature(*w.poisson, tol) == w.generic->signature;
      }
      if (hessian_route) {
        Eigen::MatrixXcd U = to_t01(w.generic->cr_values);
        w.hessian = bnd::levi_form_complex_hessian(ctx, pts[i], U);
        w.route_diff = std::max(w.route_diff, (*w.hessian - w.generic->levi).cwiseAbs().maxCoeff());
        w.sig_agree = w.sig_agree && bnd::eigen_signature(*w.hessian, tol) == w.generic->signature;
        // Levi matrix against the Euclidean metric on the CR frame
        Eigen::MatrixXcd G = (U.adjoint() * U).transpose();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> gs(G);
        Eigen::MatrixXcd Gm = gs.operatorInverseSqrt();
        Eigen::MatrixXcd L = Gm * w.generic->levi * Gm;
        w.cr_identity = (L - Eigen::MatrixXcd::Identity(L.rows(), L.cols())).cwiseAbs().maxCoeff();
      }
      return 0;
    });
  });

  Report r;
  r.body["meta"] = meta("levi", &spec, seed_of(&spec, o));
  r.columns = point_columns(ctx.dim());
  r.columns.insert(r.columns.end(), {"class", "routes", "pos", "neg", "zero", "route_diff"});
  ordered_json out = ordered_json::array();
  std::map<std::string, std::size_t> hist;
  std::size_t non = 0;
  double max_diff = 0, max_herm = 0, max_cr = 0;
  bool agree = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& w = rows[i];
    ordered_json e{{"index", i}, {"point", point_json(pts[i])}, {"class", w.cls.elliptic() ? "elliptic" : "non-elliptic"},
                   {"margin", w.cls.margin}};
    auto row = point_cells(i, pts[i]);
    row.push_back(w.cls.elliptic() ? "elliptic" : "non-elliptic");
    if (w.generic) {
      ++non;
      const auto& g = *w.generic;
      hist[signature_text(g.signature)]++;
      max_diff = std::max(max_diff, w.route_diff);
      max_herm = std::max(max_herm, g.hermitian_defect);
      max_cr = std::max(max_cr, w.cr_identity);
      agree = agree && w.sig_agree;
      ordered_json routes;
      routes["generic"] = {{"signature", signature_json(g.signature)}, {"eigenvalues", w.eig},
                           {"hermitian_defect", g.hermitian_defect}, {"levi", matrix_json(g.levi)},
                           {"levi_unit", matrix_json(g.levi_unit)}};
      std::string names = "generic";
      if (w.poisson) {
        routes["poisson"] = {{"signature", signature_json(bnd::eigen_signature(*w.poisson, tol))},
                             {"levi", matrix_json(*w.poisson)}};
        names += "+poisson";
      }
      if (w.hessian) {
        routes["complex_hessian"] = {{"signature", signature_json(bnd::eigen_signature(*w.hessian, tol))},
                                     {"levi", matrix_json(*w.hessian)}};
        e["cr_identity_defect"] = w.cr_identity;
        names += "+complex_hessian";
      }
      e["routes"] = routes;
      e["route_max_entry_diff"] = w.route_diff;
      e["signatures_agree"] = w.sig_agree;
      row.insert(row.end(), {names, std::to_string(g.signature.pos), std::to_string(g.signature.neg),
                             std::to_string(g.signature.zero), fmt(w.route_diff)});
    } else {
      row.insert(row.end(), {"", "", "", "", ""});
    }
    out.push_back(e);
    r.rows.push_back(row);
  }
  ordered_json s;
  s["points"] = rows.size();
  s["non_elliptic"] = non;
  ordered_json h;
  for (const auto& [k, v] : hist) h[k] = v;
  s["signatures"] = h;
  s["max_route_entry_diff"] = max_diff;
  s["signatures_agree"] = agree;
  s["max_hermitian_defect"] = max_herm;
  if (hessian_route) s["max_cr_identity_defect"] = max_cr;
  s["routes_agree"] = agree && max_diff <= 1e-8;
  r.body["summary"] = s;
  r.body["points"] = out;
  if (!(agree && max_diff <= 1e-8)) r.exit_code = kVerdictFailure;
  return r;
}

Report cmd_convexity(const SpecFile& spec, const CommandOptions& o) {
  BuiltSpec b = build(spec, o.samples);
  bnd::BoundaryContext ctx(b.algebroid, b.boundary);
  bnd::ConvexityVerdict v = bnd::q_convex_set(ctx, b.samples);
  std::vector<int> qs;
  for (int q : v.q_set)
    if (q >= b.q_min && q <= b.q_max) qs.push_back(q);

  Report r;
  r.body["meta"] = meta("convexity", &spec, seed_of(&spec, o));
  ordered_json s;
  s["samples"] = v.samples;
  s["non_elliptic"] = v.non_elliptic;
  s["rank"] = b.algebroid.rank;
  s["q_range"] = {b.q_min, b.q_max};
  s["q_set"] = qs;
  s["certification"] = v.certification;
  ordered_json wit = ordered_json::array();
  for (const auto& [q, idx] : v.witness) {
    if (q < b.q_min || q > b.q_max) continue;
    const auto& rep = v.reports[idx];
    wit.push_back({{"q", q}, {"index", idx}, {"point", point_json(b.samples[idx])},
                   {"signature", signature_json(rep.signature)}});
  }
  s["witnesses"] = wit;
  if (o.require_q) {
    bool ok = std::find(qs.begin(), qs.end(), *o.require_q) != qs.end();
    s["required_q"] = *o.require_q;
    s["required_q_attained"] = ok;
    if (!ok) r.exit_code = kVerdictFailure;
  }
  r.body["summary"] = s;
  r.columns = point_columns(ctx.dim());
  r.columns.insert(r.columns.end(), {"class", "pos", "neg", "zero"});
  ordered_json pts = ordered_json::array();
  for (std::size_t i = 0; i < v.reports.size(); ++i) {
    const auto& rep = v.reports[i];
    bool ell = rep.cls.elliptic();
    ordered_json e{{"index", i}, {"class", ell ? "elliptic" : "non-elliptic"}};
    auto row = point_cells(i, b.samples[i]);
    row.push_back(ell ? "elliptic" : "non-elliptic");
    if (!ell) {
      e["signature"] = signature_json(rep.signature);
      row.insert(row.end(), {std::to_string(rep.signature.pos), std::to_string(rep.signature.neg),
                             std::to_string(rep.signature.zero)});
    } else {
      row.insert(row.end(), {"", "", ""});
    }
    pts.push_back(e);
    r.rows.push_back(row);
  }
  r.body["points"] = pts;
  return r;
}

Report cmd_dsq(const SpecFile& spec, const CommandOptions& o) {
  BuiltSpec b = build(spec, o.samples);
  std::size_t n = std::min<std::size_t>(b.samples.size(), 10);
  std::vector<bnd::Point> pts(b.samples.begin(), b.samples.begin() + static_cast<std::ptrdiff_t>(n));
  auto probes = alg::default_probes(b.algebroid.chart);
  auto d = alg::d_squared_residual(b.algebroid, pts, probes);

  Report r;
  r.body["meta"] = meta("dsq", &spec, seed_of(&spec, o));
  ordered_json s;
  s["kind"] = alg::kind_name(b.algebroid.kind);
  s["rank"] = b.algebroid.rank;
  s["symbolic_zero"] = d.symbolic_zero;
  s["max_residual"] = d.max_residual;
  s["probes"] = d.probes;
  s["samples"] = d.samples;
  r.columns = {"check", "value"};
  r.rows = {{"symbolic_zero", d.symbolic_zero ? "true" : "false"}, {"max_residual", fmt(d.max_residual)}};
  if (b.algebroid.kind == alg::Kind::GraphBivector && !b.algebroid.H) {
    // independent route: Jacobiator of the coordinate functions
    const std::size_t m = b.algebroid.chart.dim();
    bool zero = true;
    double mx = 0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        for (std::size_t k = j + 1; k < m; ++k) {
          auto J = alg::jacobiator(b.algebroid.pi, calc::ScalarExpr::var(m, i), calc::ScalarExpr::var(m, j),
                                   calc::ScalarExpr::var(m, k));
          zero = zero && J.is_zero();
          for (const auto& x : pts) mx = std::max(mx, std::abs(J.eval(x)));
        }
    s["jacobiator_zero"] = zero;
    s["jacobiator_max"] = mx;
    s["consistent"] = zero == d.symbolic_zero;
    r.rows.push_back({"jacobiator_zero", zero ? "true" : "false"});
    if (zero != d.symbolic_zero) r.exit_code = kVerdictFailure;
  }
  r.body["summary"] = s;
  return r;
}

Report cmd_sobolev(const CommandOptions& o) {
  std::uint64_t seed = o.seed.value_or(7);
  sob::BatteryOptions opt;
  opt.N = o.grid;
  opt.trials = o.trials;
  opt.seed = seed;
  Report r;
  r.body["meta"] = meta("sobolev", nullptr, seed);
  r.body["suite"] = o.suite;
  r.columns = {"suite", "form", "s", "k", "max_ratio"};
  ordered_json results = ordered_json::array();
  bool ok = true;

  auto run_battery = [&](sob::Inequality q) {
    auto rep = sob::leibniz_battery(q, opt);
    ok = ok && std::isfinite(rep.max_ratio);
    results.push_back(rep.to_json());
    for (const auto& c : rep.per_config)
      r.rows.push_back({rep.inequality, std::to_string(c.form), fmt(c.s), fmt(c.k), fmt(c.max_ratio)});
  };
  auto run_kernel = [&] {
    std::vector<double> ks{-2, -1, -0.5, 0, 0.5, 1, 2, 3};
    auto cfg = sob::SobolevConfig::for_dim(1);
    const char* names[] = {"kernel.i", "kernel.ii", "kernel.iii"};
    for (auto part : {sob::KernelPart::I, sob::KernelPart::II, sob::KernelPart::III}) {
      auto k = sob::kernel_lemma_check(part, ks, cfg);
      ok = ok && k.violations == 0;
      const char* nm = names[static_cast<int>(part)];
      results.push_back({{"inequality", nm}, {"tuples", k.tuples}, {"violations", k.violations},
                         {"max_violation", k.max_violation}});
      r.rows.push_back({nm, "", "", "", fmt(k.max_violation)});
    }
  };
  auto run_half = [&] {
    auto h = sob::half_space_sub_estimate(o.grid, std::max<std::size_t>(o.trials, 1), seed);
    ok = ok && std::isfinite(h.max_constant);
    results.push_back(h.to_json());
    r.rows.push_back({"half-space", "", "", "", fmt(h.max_constant)});
  };

  if (o.suite == "all") {
    for (auto q : sob::all_inequalities()) run_battery(q);
    run_kernel();
    run_half();
  } else if (o.suite == "kernel") {
    run_kernel();
  } else if (o.suite == "half-space") {
    run_half();
  } else {
    run_battery(sob::inequality_from_name(o.suite));
  }
  r.body["results"] = results;
  r.body["verdict"] = ok ? "pass" : "fail";
  if (!ok) r.exit_code = kVerdictFailure;
  return r;
}

Report cmd_hodge(const CommandOptions& o) {
  using namespace hb::hodge;
  std::uint64_t seed = o.seed.value_or(7);
  AnnulusGrid g{o.rho0, o.ntheta, o.nr};
  NeumannProblem p(g);
  ordered_json j = hodge_report(p, std::max<std::size_t>(o.trials, 1), seed);

  auto f = DiscreteForm::mode(g, 1, -1, [](double r) { return cplx(r); });
  auto u = solve_dbar(p, f);
  double oracle = p.norm(u - min_norm_oracle(p, f)) / p.norm(u);
  double resid = p.norm(p.apply_P(u) - f) / p.norm(f);
  j["primitive"] = {{"f", "zbar dzbar"}, {"oracle_diff", oracle}, {"residual", resid}};

  AnnulusGrid fg{o.rho0, 16, 32};
  auto bump = [](double r, double th) {
    double x = r * std::cos(th) - 0.75, y = r * std::sin(th);
    return std::exp(-(x * x + y * y) / 0.05);
  };
  auto fam = family_continuity(fg, bump, {1e-1, 1e-2, 1e-3});
  j["family"] = {{"grid", {{"ntheta", fg.ntheta}, {"nr", fg.nr}}}, {"profile", "gaussian bump at 0.75"},
                 {"eps", fam.eps}, {"diff", fam.diff}, {"slope", fam.slope}, {"constant", fam.constant},
                 {"min_eig", fam.min_eig}};

  const auto& id = j["identities"];
  bool ok = id["box_N_plus_pi"].get<double>() <= 1e-8 && id["N_pi"].get<double>() <= 1e-10 &&
            id["hodge_orthogonality"].get<double>() <= 1e-8 && p.harmonic_dim(1) == 0 && oracle <= 1e-8;
  Report r;
  r.body["meta"] = meta("hodge", nullptr, seed);
  for (auto it = j.begin(); it != j.end(); ++it) r.body[it.key()] = it.value();
  r.body["verdict"] = ok ? "pass" : "fail";
  if (!ok) r.exit_code = kVerdictFailure;

  r.columns = {"degree", "mode", "index", "lambda"};
  for (std::size_t b = 0; b < g.ntheta; ++b)
    for (int d : {0, 1}) {
      const auto& lam = d == 0 ? p.block(b).lam0 : p.block(b).lam1;
      int mode = g.mode0(b) + d;
      for (Eigen::Index k = 0; k < lam.size(); ++k)
        r.rows.push_back({std::to_string(d), std::to_string(mode), std::to_string(k), fmt(lam(k))});
    }
  return r;
}

std::vector<std::string> command_names() { return {"classify", "levi", "convexity", "dsq", "sobolev", "hodge"}; }

Report run_command(const std::string& command, const CommandOptions& o) {
  if (command == "sobolev" || command == "hodge") {
    CommandOptions oo = o;
    if (!oo.seed && !o.spec.empty()) oo.seed = load_spec(o.spec).options.seed;
    return command == "sobolev" ? cmd_sobolev(oo) : cmd_hodge(oo);
  }
  auto names = command_names();
  if (std::find(names.begin(), names.end(), command) == names.end()) throw Error("unknown command '" + command + "'");
  if (o.spec.empty()) throw Error(command + " needs --spec");
  SpecFile s = load_spec(o.spec);
  if (command == "classify") return cmd_classify(s, o);
  if (command == "levi") return cmd_levi(s, o);
  if (command == "convexity") return cmd_convexity(s, o);
  return cmd_dsq(s, o);
}

}  // namespace hb::cli
