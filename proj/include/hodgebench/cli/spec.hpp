#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hodgebench/algebroid/algebroid.hpp"
#include "hodgebench/boundary/boundary.hpp"

namespace hb::cli {

/// Parsed spec file. Expression values are kept as text; `build` parses
/// them against the chart.
struct SpecFile {
  struct ChartSection {
    std::vector<std::string> names;
    std::vector<calc::ComplexPair> pairs;
  } chart;

  struct BoundarySection {
    std::string r;
    std::string sampler = "sphere";  // sphere | spheres | points
    std::size_t count = 1000;
    std::vector<double> radii{1.0};
    std::vector<bnd::Point> points;  // appended after the lattice
  } boundary;

  struct AlgebroidSection {
    std::string kind;
    std::map<std::string, std::string> entries;  // kind-specific, e.g. "pi.1.2"
  } algebroid;

  struct OptionsSection {
    std::string name;
    std::uint64_t seed = 7;
    int q_min = 0;
    int q_max = -1;  // -1: the rank
    bnd::Tolerances tol;
  } options;
};

/// Line-oriented `key = value` text under [section] headers. Errors carry the
/// 1-based line number as offset.
SpecFile parse_spec(const std::string& text);
/// Normalized text: fixed section and key order, floats at 17 digits.
std::string print_spec(const SpecFile& s);

std::uint64_t fnv1a(const std::string& s);
std::string spec_hash(const SpecFile& s);

/// Built-in examples; `gallery_text` throws for an unknown name.
std::vector<std::string> gallery_names();
std::string gallery_text(const std::string& name);
/// A gallery name or a path to a spec file.
SpecFile load_spec(const std::string& name_or_path);

struct BuiltSpec {
  alg::AlgebroidSpec algebroid;
  bnd::BoundaryData boundary;
  std::vector<bnd::Point> samples;
  std::size_t lattice_count = 0;  // samples before the explicit points
  int q_min = 0, q_max = 0;
};

/// Parses every expression against the chart and draws the samples.
BuiltSpec build(const SpecFile& s, std::optional<std::size_t> samples_override = std::nullopt);

}  // namespace hb::cli
