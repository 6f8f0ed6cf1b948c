#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pmloc/filter.hpp"

namespace pmloc {

struct Beam {
  double angle_deg = 0.0;  // absolute when the heading is known, body-relative otherwise
  double noise_rms = 0.05;
  friend bool operator==(const Beam&, const Beam&) = default;
};

struct Scenario {
  RoomMap map = make_rectangle(4.0, 6.0);
  Pose true_pose{2.0, 3.0, 20.0};
  std::vector<Beam> beams;
  GridSpec grid;
  std::uint64_t seed = 0;
  bool noise_free = false;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Beam numbers are 1-based, matching how measurement combinations are named
/// ("1+3").
using BeamSubset = std::vector<int>;

/// Room 4 x 6 m, object at the center with K = 20 deg, beams toward the upper
/// left corner (326.3), the far wall (0) and the upper right corner (33.7),
/// 5 cm noise, 200 x 300 grid, exact ranges.
Scenario example_scenario();

/// The seven combinations 1, 2, 3, 1+2, 2+3, 1+3, 1+2+3.
const std::vector<BeamSubset>& table1_subsets();

/// Throws Error(invalid_argument) on a malformed scenario.
void validate(const Scenario& s);

/// Throws Error(invalid_argument) on an empty subset and
/// Error(invalid_index) on a beam number outside [1, beams].
void validate_subset(const Scenario& s, const BeamSubset& subset);

/// One realization of every beam in the scenario, drawn from an rng seeded
/// with s.seed (or exact ranges when s.noise_free).
std::vector<BeamMeasurement> realize_beams(const Scenario& s);

struct ScenarioRun {
  std::vector<BeamMeasurement> measurements;  // the selected beams
  WeightGrid posterior;
  EstimateReport report;
};

ScenarioRun run_scenario(const Scenario& s, const BeamSubset& subset,
                         Execution exec = Execution::parallel);

struct ComboRow {
  BeamSubset subset;
  double rms1 = 0.0;
  double rms2 = 0.0;
  EstimateReport report;
  std::optional<WeightGrid> posterior;  // kept on request
};

struct ComboTable {
  std::vector<ComboRow> rows;
};

/// Posterior RMS for each subset. All subsets share one prior and one
/// measurement realization.
ComboTable combo_study(const Scenario& s, const std::vector<BeamSubset>& subsets,
                       bool keep_posteriors = false);

struct UnconditionalCov {
  Eigen::MatrixXd matrix;                // mean of e e^T over used trials
  Eigen::MatrixXd mean_conditional_cov;  // mean of the per-trial posterior covariance
  int trials = 0;
  int skipped = 0;  // degenerate-posterior trials
};

/// Monte-Carlo estimate of the unconditional error covariance. Each trial
/// draws a true position uniformly over the room (heading fixed at the
/// scenario heading unless the heading is estimated), simulates noisy beams,
/// and filters them. Trial t uses an rng seeded from (s.seed, t), so the
/// result is independent of scheduling.
UnconditionalCov monte_carlo_covariance(const Scenario& s, const BeamSubset& subset, int trials,
                                        Execution exec = Execution::parallel);

/// Rng for Monte-Carlo trial `trial` of a study seeded with `seed`.
Rng trial_rng(std::uint64_t seed, std::uint64_t trial);

}  // namespace pmloc
