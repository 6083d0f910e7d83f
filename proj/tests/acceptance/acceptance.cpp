// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "hodgebench/algebroid/algebroid.hpp"
#include "hodgebench/boundary/boundary.hpp"
#include "hodgebench/calculus/random.hpp"
#include "hodgebench/cli/commands.hpp"
#include "hodgebench/hodge/hodge.hpp"
#include "hodgebench/sobolev/sobolev.hpp"

using namespace hb;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using cplx = std::complex<double>;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Accumulates sub-checks; the first failing one is named in the detail.
struct Checks {
  bool ok = true;
  std::ostringstream msg;
  void need(bool cond, const std::string& what) {
    if (!cond && ok) msg << "failed: " << what << "; ";
    ok = ok && cond;
  }
  template <class T>
  void note(const std::string& k, const T& v) {
    msg << k << "=" << v << " ";
  }
  Outcome done() { return {ok, msg.str()}; }
};

std::string sig_str(const bnd::Signature& s) {
  return "(" + std::to_string(s.pos) + "," + std::to_string(s.neg) + "," + std::to_string(s.zero) + ")";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// d/dzbar coefficients of real-component vectors on C^n
MatrixXcd to_t01(const MatrixXcd& V) {
  MatrixXcd U(V.rows() / 2, V.cols());
  for (Eigen::Index a = 0; a < U.rows(); ++a) U.row(a) = V.row(2 * a) - cplx(0, 1) * V.row(2 * a + 1);
  return U;
}

std::set<int> q_set_of(const cli::Report& r) {
  std::set<int> s;
  for (const auto& q : r.body["summary"]["q_set"]) s.insert(q.get<int>());
  return s;
}

Outcome poisson_signatures() {
  Checks c;
  for (std::size_t k : {1u, 2u}) {
    auto t0 = std::chrono::steady_clock::now();
    auto b = cli::build(cli::load_spec(k == 1 ? "poisson_c4" : "poisson_c6"));
    bnd::BoundaryContext ctx(b.algebroid, b.boundary);
    bnd::Signature want{static_cast<int>(4 * k + 1), 1, 1};
    std::size_t n = 0, agree = 0;
    double diff = 0;
    for (std::size_t i = b.lattice_count; i < b.samples.size(); ++i) {
      const auto& x = b.samples[i];
      auto g = bnd::levi_form_generic(ctx, x);
      MatrixXcd p = bnd::levi_form_poisson(ctx, x);
      auto sg = bnd::eigen_signature(g.levi, 1e-8), sp = bnd::eigen_signature(p, 1e-8);
      diff = std::max(diff, (g.levi - p).cwiseAbs().maxCoeff());
      if (sg == want && sp == want) ++agree;
      ++n;
    }
    double dt = seconds_since(t0);
    c.need(n == 20, "20 locus points");
    c.need(agree == n, "signature " + sig_str(want) + " on both routes");
    c.need(dt < 10.0, "runtime under 10 s");
    c.note("k" + std::to_string(k) + "_points_" + sig_str(want), agree);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2fs", dt);
    c.note("time", buf);
    c.note("route_diff", diff);
  }
  return c.done();
}

Outcome poisson_convexity() {
  Checks c;
  cli::CommandOptions o;
  auto r = cli::cmd_convexity(cli::load_spec("poisson_c4"), o);
  auto qs = q_set_of(r);
  c.need(qs == std::set<int>{0, 3, 4, 5, 6, 7, 8}, "q_set {0,3..8}");
  std::size_t witnessed = 0;
  for (const auto& w : r.body["summary"]["witnesses"]) {
    int q = w["q"].get<int>();
    if ((q == 1 || q == 2) && w.contains("point") && w["point"].size() == 8) ++witnessed;
  }
  c.need(witnessed == 2, "explicit witnesses for q = 1, 2");
  std::string s;
  for (int q : qs) s += std::to_string(q) + ",";
  c.note("q_set", "{" + s.substr(0, s.size() - 1) + "}");
  c.note("witnesses", witnessed);
  return c.done();
}

Outcome ball_and_annulus() {
  Checks c;
  cli::CommandOptions o;
  for (std::size_t n : {2u, 3u}) {
    auto b = cli::build(cli::load_spec("ball_c" + std::to_string(n) + "_dbar"));
    bnd::BoundaryContext ctx(b.algebroid, b.boundary);
    auto v = bnd::q_convex_set(ctx, b.samples);
    std::set<int> qs(v.q_set.begin(), v.q_set.end());
    for (int q = 1; q <= static_cast<int>(n); ++q) c.need(qs.count(q) == 1, "ball q_set contains " + std::to_string(q));
    double defect = 0;
    std::size_t pd = 0;
    for (const auto& rep : v.reports) {
      // Levi matrix in a CR-orthonormal basis
      MatrixXcd U = to_t01(rep.cr_values);
      MatrixXcd G = (U.adjoint() * U).transpose();
      Eigen::SelfAdjointEigenSolver<MatrixXcd> es(G);
      MatrixXcd W = es.operatorInverseSqrt();
      defect = std::max(defect, (W * rep.levi * W - MatrixXcd::Identity(G.rows(), G.cols())).norm());
      if (rep.signature == bnd::Signature{static_cast<int>(n) - 1, 0, 0}) ++pd;
    }
    c.need(v.reports.size() >= 1000 && pd == v.reports.size(), "positive definite Levi matrices");
    c.need(defect <= 1e-8, "identity on CR");
    c.note("ball_c" + std::to_string(n) + "_cr_identity", defect);
  }
  auto r = cli::cmd_convexity(cli::load_spec("annulus_c3_dbar"), o);
  auto qs = q_set_of(r);
  bool pass1 = qs.count(1), pass2 = qs.count(2);
  c.need(pass1 && !pass2, "annulus passes q = 1 only among {1,2}");
  c.note("annulus_q1", pass1 ? "pass" : "fail");
  c.note("annulus_q2", pass2 ? "pass" : "fail");
  return c.done();
}

Outcome classification() {
  Checks c;
  cli::CommandOptions o;
  struct Want {
    const char* spec;
    bool elliptic;
  };
  for (Want w : {Want{"tangent_sphere", true}, Want{"ball_c2_dbar", false}, Want{"symplectic_gc", true}}) {
    auto s = cli::cmd_classify(cli::load_spec(w.spec), o).body["summary"];
    std::size_t total = s["samples"].get<std::size_t>();
    std::size_t hit = s[w.elliptic ? "elliptic" : "non_elliptic"].get<std::size_t>();
    c.need(total >= 1000 && hit == total, std::string(w.spec) + " all " + (w.elliptic ? "elliptic" : "non-elliptic"));
    c.need(s.contains("min_margin") && s.contains("max_margin"), "margins reported");
    c.note(w.spec, std::to_string(hit) + "/" + std::to_string(total));
  }
  return c.done();
}

Outcome route_agreement() {
  Checks c;
  cli::CommandOptions o;
  double worst = 0;
  for (const char* g : {"ball_c2_dbar", "ball_c3_dbar", "annulus_c3_dbar", "poisson_c4", "poisson_c6"}) {
    auto s = cli::cmd_levi(cli::load_spec(g), o).body["summary"];
    double d = s["max_route_entry_diff"].get<double>();
    worst = std::max(worst, d);
    c.need(d <= 1e-8 && s["signatures_agree"].get<bool>(), std::string(g) + " routes agree");
  }
  auto gc = cli::cmd_classify(cli::load_spec("symplectic_gc"), o).body["summary"];
  c.need(gc["gc_bivector_agreement"].get<bool>(), "symplectic_gc classification routes agree");
  c.note("max_entry_diff", worst);

  // invariants at a point of the Poisson locus
  auto b = cli::build(cli::load_spec("poisson_c4"));
  bnd::BoundaryContext ctx(b.algebroid, b.boundary);
  const auto& x = b.samples[b.lattice_count + 3];
  auto base = bnd::levi_form_generic(ctx, x);
  std::mt19937_64 rng(17);
  std::normal_distribution<double> gauss;
  Eigen::VectorXd gr = ctx.grad_at(x);
  const Eigen::Index m = gr.size();
  double proj = 0;
  for (int t = 0; t < 10; ++t) {
    VectorXcd v(m);
    for (Eigen::Index i = 0; i < m; ++i) v(i) = cplx(gauss(rng), gauss(rng));
    v -= gr.cast<cplx>() * (gr.cast<cplx>().dot(v)) / gr.squaredNorm();
    proj = std::max(proj, (bnd::levi_form_generic(ctx, x, std::nullopt, v).levi - base.levi).norm());
  }
  c.need(proj <= 1e-8, "projection independence");
  c.note("projection", proj);

  auto fields = bnd::adapted_fields(ctx, bnd::adapted_frame(ctx, x));
  auto jet0 = bnd::adapted_jet(ctx, x);
  auto r2 = ctx.boundary().r.pow(2);
  double ext = 0;
  for (int t = 0; t < 10; ++t) {
    auto perturbed = fields;
    for (auto& f : perturbed)
      for (std::size_t k = 0; k < ctx.rank(); ++k)
        f = f + (r2 * calc::random_polynomial(ctx.dim(), 1, rng)) * ctx.algebroid().anchor[k];
    auto rep = bnd::levi_form_generic(ctx, x, bnd::jet_from_fields(perturbed, jet0.transverse, x));
    ext = std::max(ext, (rep.levi - base.levi).norm());
  }
  c.need(ext <= 1e-8, "extension independence");
  c.note("extension", ext);
  return c.done();
}

Outcome symbolic_suite() {
  Checks c;
  std::mt19937_64 rng(2024);
  int zero = 0;
  for (int t = 0; t < 25; ++t) {
    auto X = calc::random_field(3, 1, rng), Y = calc::random_field(3, 1, rng);
    auto omega = calc::random_form(3, 2, 2, rng);
    auto H = calc::random_form(3, 3, 1, rng);
    calc::GeneralizedSection u{X, calc::interior(X, omega)}, v{Y, calc::interior(Y, omega)};
    auto XY = calc::lie_bracket(X, Y);
    calc::FormExpr rhs =
        calc::interior(XY, omega) + calc::interior(Y, calc::interior(X, calc::exterior_derivative(omega) - H));
    if ((calc::courant_bracket(u, v, H) - calc::GeneralizedSection{XY, rhs}).is_zero()) ++zero;
  }
  c.need(zero == 25, "graph-of-omega identity");
  c.note("courant_zero", std::to_string(zero) + "/25");

  cli::CommandOptions o;
  for (const char* g : {"tangent_sphere", "ball_c2_dbar", "poisson_c4"}) {
    auto s = cli::cmd_dsq(cli::load_spec(g), o).body["summary"];
    c.need(s["symbolic_zero"].get<bool>() && s["max_residual"].get<double>() == 0.0, std::string(g) + " d^2 = 0");
  }
  auto s = cli::cmd_dsq(cli::load_spec("graph_bivector_demo"), o).body["summary"];
  double res = s["max_residual"].get<double>();
  c.need(res > 1e-6 && !s["symbolic_zero"].get<bool>(), "non-Jacobi residual");
  c.need(!s["jacobiator_zero"].get<bool>() && s["consistent"].get<bool>(), "Jacobiator cross-check");
  // d^2 f(e_i, e_j) against {x_i, x_j, f}
  auto b = cli::build(cli::load_spec("graph_bivector_demo"));
  const auto& a = b.algebroid;
  std::size_t matched = 0, total = 0;
  for (int t = 0; t < 4; ++t) {
    auto f = calc::random_polynomial(3, 2, rng);
    auto dd = alg::ce_differential(a, alg::ce_differential(a, alg::AlgebroidForm::function(3, f)));
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j, ++total)
        if (dd.at({i, j}) == alg::jacobiator(a.pi, calc::ScalarExpr::var(3, i), calc::ScalarExpr::var(3, j), f))
          ++matched;
  }
  c.need(matched == total, "d^2 f equals the Jacobiator");
  c.note("non_jacobi_residual", res);
  c.note("jacobiator_matches", std::to_string(matched) + "/" + std::to_string(total));
  return c.done();
}

Outcome kernel_lemmas() {
  Checks c;
  std::vector<double> ks{-2, -1, -0.5, 0, 0.5, 1, 2, 3};
  auto cfg = sob::SobolevConfig::for_dim(1);
  const char* names[] = {"i", "ii", "iii"};
  for (auto part : {sob::KernelPart::I, sob::KernelPart::II, sob::KernelPart::III}) {
    auto k = sob::kernel_lemma_check(part, ks, cfg);
    const char* nm = names[static_cast<int>(part)];
    c.need(k.tuples > 0 && k.violations == 0, std::string("part ") + nm);
    c.note(std::string(nm) + "_violations", std::to_string(k.violations) + "/" + std::to_string(k.tuples));
  }
  return c.done();
}

Outcome leibniz_batteries() {
  Checks c;
  sob::BatteryOptions opt;
  double worst_drift = 0, worst_homog = 0;
  for (auto q : sob::all_inequalities()) {
    std::string nm = sob::inequality_name(q);
    auto r1 = sob::leibniz_battery(q, opt), r2 = sob::leibniz_battery(q, opt);
    c.need(std::isfinite(r1.max_ratio), nm + " finite");
    c.need(cli::dump_json(r1.to_json()) == cli::dump_json(r2.to_json()), nm + " byte-identical");
    auto d = sob::refinement_drift(q, opt);
    c.need(d.drift <= 0.2, nm + " drift");
    worst_drift = std::max(worst_drift, d.drift);
    double h = std::max(sob::homogeneity_factor(q, opt, 10.0), sob::homogeneity_factor(q, opt, 0.1));
    c.need(h <= 1 + 1e-9, nm + " homogeneity");
    worst_homog = std::max(worst_homog, h);
  }
  c.note("batteries", sob::all_inequalities().size());
  c.note("max_drift", worst_drift);
  c.note("max_homogeneity_factor", worst_homog);
  return c.done();
}

Outcome hodge_identities() {
  Checks c;
  hodge::NeumannProblem p(hodge::AnnulusGrid{0.5, 64, 64});
  double id = 0, npi = p.n_pi_defect(), orth = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    int d = static_cast<int>(s % 2);
    auto phi = hodge::DiscreteForm::random(p.grid(), d, 1000 + s);
    double n = p.norm(phi);
    id = std::max(id, p.norm(p.apply_box(p.apply_N(phi)) + p.apply_pi(phi) - phi) / n);
    npi = std::max({npi, p.norm(p.apply_N(p.apply_pi(phi))) / n, p.norm(p.apply_pi(p.apply_N(phi))) / n});
    auto sp = hodge::hodge_split(p, phi);
    double n2 = n * n;
    orth = std::max({orth, std::abs(p.inner(sp.harmonic, sp.imP)) / n2, std::abs(p.inner(sp.harmonic, sp.imPstar)) / n2,
                     std::abs(p.inner(sp.imP, sp.imPstar)) / n2});
  }
  c.need(id <= 1e-8, "box N + pi = id");
  c.need(npi <= 1e-10, "N pi = pi N = 0");
  c.need(orth <= 1e-8, "Hodge orthogonality");
  c.note("identity", id);
  c.note("N_pi", npi);
  c.note("orthogonality", orth);
  return c.done();
}

Outcome dbar_primitive() {
  Checks c;
  hodge::AnnulusGrid g{0.5, 64, 64};
  hodge::NeumannProblem p(g);
  auto f = hodge::DiscreteForm::mode(g, 1, -1, [](double r) { return cplx(r); });
  auto u = hodge::solve_dbar(p, f);
  double oracle = p.norm(u - hodge::min_norm_oracle(p, f)) / p.norm(u);
  c.need(oracle <= 1e-8, "oracle match");
  std::vector<std::size_t> nrs{32, 64, 128, 256};
  auto rep = hodge::dbar_convergence(0.5, 8, nrs);
  c.need(rep.slope >= 1.6 && rep.slope <= 2.4, "slope in [1.6, 2.4]");
  bool empty = p.harmonic_dim(1) == 0;
  for (std::size_t nr : nrs) empty = empty && hodge::NeumannProblem(hodge::AnnulusGrid{0.5, 8, nr}).harmonic_dim(1) == 0;
  c.need(empty, "no degree-1 harmonics");
  c.note("oracle_diff", oracle);
  c.note("slope", rep.slope);
  c.note("harmonic_dim_1", empty ? 0 : 1);
  return c.done();
}

Outcome basic_estimate_family() {
  Checks c;
  hodge::NeumannProblem a(hodge::AnnulusGrid{0.5, 64, 64}), b(hodge::AnnulusGrid{0.5, 64, 128});
  auto ra = hodge::basic_estimate_report(a, 16, 7), rb = hodge::basic_estimate_report(b, 16, 7);
  bool finite = std::isfinite(ra.c_e_vs_q) && std::isfinite(ra.c_d_vs_e) && std::isfinite(rb.c_e_vs_q) &&
                std::isfinite(rb.c_d_vs_e);
  c.need(finite, "finite ratios");
  double de = std::abs(ra.c_e_vs_q - rb.c_e_vs_q) / rb.c_e_vs_q;
  double dd = std::abs(ra.c_d_vs_e - rb.c_d_vs_e) / rb.c_d_vs_e;
  c.need(de <= 0.2 && dd <= 0.2, "refinement within 20%");
  c.note("C_E_vs_Q", ra.c_e_vs_q);
  c.note("C_D_vs_E", ra.c_d_vs_e);

  hodge::AnnulusGrid fg{0.5, 8, 32};
  auto one = [](double, double) { return 1.0; };
  MatrixXcd N0 = hodge::family_neumann(fg, one, 0.0);
  double scale = N0.norm(), oracle = 0;
  for (double e : {1e-1, 1e-2, 1e-3}) {
    MatrixXcd Ne = hodge::family_neumann(fg, one, e);
    oracle = std::max(oracle, (Ne - N0 / ((1 + e) * (1 + e))).norm() / scale);
  }
  c.need(oracle <= 1e-8, "a = 1 rescaling oracle");
  c.note("rescaling_diff", oracle);

  auto bump = [](double r, double th) {
    double x = r * std::cos(th) - 0.75, y = r * std::sin(th);
    return std::exp(-(x * x + y * y) / 0.05);
  };
  auto fam = hodge::family_continuity(hodge::AnnulusGrid{0.5, 16, 32}, bump, {1e-1, 1e-2, 1e-3});
  c.need(fam.slope >= 0.8 && fam.slope <= 1.2, "bump slope in [0.8, 1.2]");
  c.need(fam.diff.back() < fam.diff.front(), "difference decreases");
  c.note("bump_slope", fam.slope);
  return c.done();
}

}  // namespace

int main() {
  struct Criterion {
    const char* title;
    std::function<Outcome()> run;
  };
  const Criterion all[] = {
      {"Poisson Levi signature", poisson_signatures},
      {"Poisson convexity set", poisson_convexity},
      {"ball and annulus", ball_and_annulus},
      {"classification dichotomy", classification},
      {"route agreement", route_agreement},
      {"Courant and CE symbolic suite", symbolic_suite},
      {"kernel lemmas", kernel_lemmas},
      {"Leibniz batteries", leibniz_batteries},
      {"Hodge identities", hodge_identities},
      {"dbar primitive", dbar_primitive},
      {"basic estimate and family", basic_estimate_family},
  };
  int failed = 0, id = 0;
  for (const auto& cr : all) {
    ++id;
    auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = cr.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    if (!out.ok) ++failed;
    std::printf("%s %2d %s (%.1fs): %s\n", out.ok ? "PASS" : "FAIL", id, cr.title, seconds_since(t0), out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", id - failed, id);
  return failed == 0 ? 0 : 1;
}
