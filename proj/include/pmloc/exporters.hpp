#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pmloc/analysis.hpp"

namespace pmloc {

/// "1+2+3" style label for a beam subset.
std::string subset_label(const BeamSubset& subset);

std::string format_report(const EstimateReport& report, const BeamSubset& subset);
std::string report_json(const EstimateReport& report, const BeamSubset& subset);

/// Plain-text posterior grid: a header line `n1 n2 nk x1min x1max x2min x2max`
/// followed by one line of n1 linear weights per (heading, x2) row, x2 index
/// varying fastest within a heading block.
std::string format_grid(const WeightGrid& grid);

struct GridFile {
  int n1 = 0;
  int n2 = 0;
  int nk = 0;
  Box bounds;
  std::vector<double> weights;  // storage order of WeightGrid
};

/// Throws Error(parse) on malformed input.
GridFile parse_grid(const std::string& text);

/// Binary PGM (P5): x1 horizontal, x2 increasing upward, weights mapped
/// linearly so that the largest weight is white. Mass is summed over heading.
std::string heatmap_pgm(int n1, int n2, const std::vector<double>& position_weights);
std::string heatmap_pgm(const WeightGrid& grid);
std::string heatmap_pgm(const GridFile& grid);

std::string format_combo_table(const ComboTable& table);
std::string combo_table_json(const ComboTable& table);

std::string format_unconditional(const UnconditionalCov& cov, const BeamSubset& subset);
std::string unconditional_json(const UnconditionalCov& cov, const BeamSubset& subset);

}  // namespace pmloc
