#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hodgebench/cli/spec.hpp"

namespace hb::cli {

inline constexpr const char* kToolVersion = "1.0.0";

/// Exit codes of the front-end.
enum ExitCode : int { kOk = 0, kError = 1, kVerdictFailure = 2 };

struct CommandOptions {
  std::string spec;  // gallery name or path; optional for sobolev and hodge
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<int> require_q;
  std::string points_file;  // levi: one point per line, comma or space separated
  // sobolev
  std::string suite = "all";
  std::size_t grid = 64;
  std::size_t trials = 16;
  // hodge
  double rho0 = 0.5;
  std::size_t nr = 64, ntheta = 64;
};

struct Report {
  nlohmann::ordered_json body;
  std::vector<std::string> columns;  // CSV table
  std::vector<std::vector<std::string>> rows;
  int exit_code = kOk;

  std::string render(const std::string& format) const;
};

/// JSON with every float printed at 17 significant digits.
std::string dump_json(const nlohmann::ordered_json& j, int indent = 2);
std::string csv_escape(const std::string& s);

Report cmd_classify(const SpecFile& spec, const CommandOptions& o);
Report cmd_levi(const SpecFile& spec, const CommandOptions& o);
Report cmd_convexity(const SpecFile& spec, const CommandOptions& o);
Report cmd_dsq(const SpecFile& spec, const CommandOptions& o);
Report cmd_sobolev(const CommandOptions& o);
Report cmd_hodge(const CommandOptions& o);

std::vector<std::string> command_names();
/// Loads the spec when needed and dispatches. Errors propagate as exceptions.
Report run_command(const std::string& command, const CommandOptions& o);

}  // namespace hb::cli
