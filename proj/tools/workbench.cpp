// Batch front-end over the analysis modules.
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "hodgebench/cli/commands.hpp"
#include "hodgebench/error.hpp"

int main(int argc, char** argv) {
  using namespace hb::cli;
  CLI::App app{"workbench: boundary Levi forms, q-convexity, Sobolev batteries and a discrete dbar-Neumann solver"};
  app.set_version_flag("--version", kToolVersion);

  CommandOptions o;
  std::string command, out, format = "json";
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  int require_q = 0;
  bool print_spec_only = false, list = false;

  app.add_option("command", command, "classify | levi | convexity | dsq | sobolev | hodge")
      ->check(CLI::IsMember(command_names()));
  app.add_option("--spec", o.spec, "spec file or gallery name");
  auto* seed_opt = app.add_option("--seed", seed, "random seed (default: spec seed, else 7)");
  auto* samples_opt = app.add_option("--samples", samples, "boundary lattice size override");
  auto* q_opt = app.add_option("--require-q", require_q, "convexity: exit 2 unless q is attained");
  app.add_option("--out", out, "write the report here instead of stdout");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--points", o.points_file, "levi: file with one point per line");
  app.add_option("--suite", o.suite, "sobolev: all | kernel | half-space | A.i .. T.iv");
  app.add_option("--grid", o.grid, "sobolev: torus points per axis")->check(CLI::Range(16, 1024));
  app.add_option("--trials", o.trials, "sobolev/hodge: random trials")->check(CLI::Range(1, 100000));
  app.add_option("--nr", o.nr, "hodge: radial points")->check(CLI::Range(16, 4096));
  app.add_option("--ntheta", o.ntheta, "hodge: angular modes")->check(CLI::Range(2, 4096));
  app.add_option("--rho0", o.rho0, "hodge: inner radius");
  app.add_flag("--print-spec", print_spec_only, "print the normalized spec and exit");
  app.add_flag("--list-gallery", list, "list built-in specs and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }
  if (*seed_opt) o.seed = seed;
  if (*samples_opt) o.samples = samples;
  if (*q_opt) o.require_q = require_q;

  try {
    if (list) {
      for (const auto& n : gallery_names()) std::cout << n << "\n";
      return kOk;
    }
    if (print_spec_only) {
      if (o.spec.empty()) throw hb::Error("--print-spec needs --spec");
      std::cout << print_spec(load_spec(o.spec));
      return kOk;
    }
    if (command.empty()) throw hb::Error("missing command; see --help");
    Report r = run_command(command, o);
    std::string text = r.render(format);
    if (out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(out, std::ios::binary);
      if (!f) throw hb::Error("cannot write '" + out + "'");
      f << text;
    }
    return r.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "workbench " << (command.empty() ? "" : command + ": ") << e.what() << "\n";
    return kError;
  }
}
