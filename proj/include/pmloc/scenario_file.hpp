#pragma once

#include <string>
#include <string_view>

#include "pmloc/analysis.hpp"

namespace pmloc {

struct OutputOptions {
  std::string dir = ".";
  bool export_grid = false;
  bool heatmap = false;
  friend bool operator==(const OutputOptions&, const OutputOptions&) = default;
};

struct ScenarioFile {
  Scenario scenario;
  OutputOptions output;
  friend bool operator==(const ScenarioFile&, const ScenarioFile&) = default;
};

/// Line-oriented scenario format:
///
///   # comment
///   [map]       rectangle <l1> <l2>   |  one `vertex <x1> <x2>` per corner (CCW)
///   [pose]      x1 <m> / x2 <m> / heading <deg>
///   [beams]     <angle deg> [<noise rms m>]      one line per beam
///   [grid]      n1, n2, nk, known_heading <deg>, bounds <x1min x1max x2min x2max>,
///               max_range <m>
///   [run]       seed <u64>, noise_free <true|false>
///   [output]    dir <path>, export_grid <bool>, heatmap <bool>
///
/// Errors are Error(parse) with "<source>:<line>: [section] key: reason".
ScenarioFile parse_scenario(std::string_view text, const std::string& source = "<scenario>");

/// Reads and parses a file; a missing file is also a parse error.
ScenarioFile load_scenario(const std::string& path);

/// Writes a file that parses back to an identical ScenarioFile.
std::string serialize_scenario(const ScenarioFile& file);

}  // namespace pmloc
