#include "pmloc/analysis.hpp"

#include <cmath>
#include <string>

#include "pmloc/error.hpp"

namespace pmloc {

Scenario example_scenario() {
  Scenario s;
  s.map = make_rectangle(4.0, 6.0);
  s.true_pose = Pose(2.0, 3.0, 20.0);
  s.beams = {{326.3, 0.05}, {0.0, 0.05}, {33.7, 0.05}};
  s.grid.n1 = 200;
  s.grid.n2 = 300;
  s.grid.nk = 1;
  s.grid.known_heading_deg = 20.0;
  s.seed = 2016;
  s.noise_free = true;
  return s;
}

const std::vector<BeamSubset>& table1_subsets() {
  static const std::vector<BeamSubset> subsets = {{1}, {2}, {3}, {1, 2}, {2, 3}, {1, 3}, {1, 2, 3}};
  return subsets;
}

void validate(const Scenario& s) {
  if (s.beams.empty()) throw Error(ErrorKind::invalid_argument, "scenario has no beams");
  for (std::size_t i = 0; i < s.beams.size(); ++i) {
    if (!(s.beams[i].noise_rms > 0.0)) {
      throw Error(ErrorKind::invalid_argument,
                  "beam " + std::to_string(i + 1) + " needs a positive noise RMS");
    }
  }
  if (!s.map.contains(s.true_pose.position())) {
    throw Error(ErrorKind::origin_outside, "true pose is not inside the room");
  }
  resolve_bounds(s.grid, s.map);
}

void validate_subset(const Scenario& s, const BeamSubset& subset) {
  if (subset.empty()) throw Error(ErrorKind::invalid_argument, "beam subset is empty");
  for (int b : subset) {
    if (b < 1 || b > static_cast<int>(s.beams.size())) {
      throw Error(ErrorKind::invalid_index, "beam " + std::to_string(b) +
                                                " is out of range (scenario has " +
                                                std::to_string(s.beams.size()) + " beams)");
    }
  }
}

namespace {

// With an estimated heading, beam angles are body offsets: simulate along
// heading + offset but report the offset.
std::vector<BeamMeasurement> simulate_beams(const Scenario& s, const Pose& pose, bool noise_free,
                                            Rng& rng) {
  std::vector<BeamMeasurement> out;
  out.reserve(s.beams.size());
  const bool relative = s.grid.heading_active();
  for (const Beam& b : s.beams) {
    const double angle = relative ? b.angle_deg + pose.heading_deg : b.angle_deg;
    BeamMeasurement m = simulate_measurement(s.map, pose, angle, noise_free ? 0.0 : b.noise_rms,
                                             rng, s.grid.max_range);
    m.noise_rms = b.noise_rms;
    m.angle_deg = relative ? normalize_degrees(b.angle_deg) : m.angle_deg;
    out.push_back(m);
  }
  return out;
}

std::vector<BeamMeasurement> select(const std::vector<BeamMeasurement>& all,
                                    const BeamSubset& subset) {
  std::vector<BeamMeasurement> out;
  out.reserve(subset.size());
  for (int b : subset) out.push_back(all[b - 1]);
  return out;
}

}  // namespace

std::vector<BeamMeasurement> realize_beams(const Scenario& s) {
  validate(s);
  Rng rng(s.seed);
  return simulate_beams(s, s.true_pose, s.noise_free, rng);
}

ScenarioRun run_scenario(const Scenario& s, const BeamSubset& subset, Execution exec) {
  validate(s);
  validate_subset(s, subset);
  auto measurements = select(realize_beams(s), subset);
  WeightGrid posterior = update(uniform_prior(s.grid, s.map), measurements, s.map, exec);
  EstimateReport report = estimate(posterior, measurements.size());
  return {std::move(measurements), std::move(posterior), std::move(report)};
}

ComboTable combo_study(const Scenario& s, const std::vector<BeamSubset>& subsets,
                       bool keep_posteriors) {
  validate(s);
  if (subsets.empty()) throw Error(ErrorKind::invalid_argument, "no beam subsets requested");
  for (const BeamSubset& subset : subsets) validate_subset(s, subset);

  const auto all = realize_beams(s);
  const WeightGrid prior = uniform_prior(s.grid, s.map);
  ComboTable table;
  for (const BeamSubset& subset : subsets) {
    const auto measurements = select(all, subset);
    WeightGrid posterior = update(prior, measurements, s.map);
    ComboRow row;
    row.subset = subset;
    row.report = estimate(posterior, measurements.size());
    row.rms1 = row.report.rms(0);
    row.rms2 = row.report.rms(1);
    if (keep_posteriors) row.posterior = std::move(posterior);
    table.rows.push_back(std::move(row));
  }
  return table;
}

Rng trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return Rng(seq);
}

namespace {

struct TrialResult {
  bool ok = false;
  Eigen::VectorXd error;
  Eigen::MatrixXd cov;
};

Pose draw_pose(const Scenario& s, Rng& rng) {
  const Box& box = s.map.bounding_box();
  std::uniform_real_distribution<double> u1(box.x1_min, box.x1_max);
  std::uniform_real_distribution<double> u2(box.x2_min, box.x2_max);
  std::uniform_real_distribution<double> uk(0.0, 360.0);
  for (;;) {
    const Vec2 p{u1(rng), u2(rng)};
    if (!s.map.contains(p)) continue;
    const double heading = s.grid.heading_active() ? uk(rng) : s.true_pose.heading_deg;
    return Pose(p.x1, p.x2, heading);
  }
}

TrialResult run_trial(const Scenario& s, const BeamSubset& subset, const WeightGrid& prior,
                      std::uint64_t t) {
  Rng rng = trial_rng(s.seed, t);
  const Pose truth = draw_pose(s, rng);
  const auto measurements = select(simulate_beams(s, truth, false, rng), subset);
  TrialResult r;
  try {
    const WeightGrid posterior = update(prior, measurements, s.map, Execution::serial);
    const EstimateReport rep = estimate(posterior, measurements.size());
    r.error = Eigen::VectorXd(rep.mean.size());
    r.error(0) = truth.x1 - rep.mean(0);
    r.error(1) = truth.x2 - rep.mean(1);
    if (rep.mean.size() == 3) {
      r.error(2) = std::remainder(truth.heading_deg - rep.mean(2), 360.0);
    }
    r.cov = rep.covariance;
    r.ok = true;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::degenerate_posterior) throw;
  }
  return r;
}

}  // namespace

UnconditionalCov monte_carlo_covariance(const Scenario& s, const BeamSubset& subset, int trials,
                                        Execution exec) {
  validate(s);
  validate_subset(s, subset);
  if (trials < 1) throw Error(ErrorKind::invalid_argument, "trials must be >= 1");

  const WeightGrid prior = uniform_prior(s.grid, s.map);
  std::vector<TrialResult> results(trials);
  bool failed = false;
  std::string failure;
  ErrorKind failure_kind = ErrorKind::invalid_argument;

#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel)
  for (int t = 0; t < trials; ++t) {
    try {
      results[t] = run_trial(s, subset, prior, static_cast<std::uint64_t>(t));
    } catch (const Error& e) {
#pragma omp critical
      {
        if (!failed) {
          failed = true;
          failure = e.what();
          failure_kind = e.kind();
        }
      }
    }
  }
  if (failed) throw Error(failure_kind, failure);

  const int dim = s.grid.heading_active() ? 3 : 2;
  UnconditionalCov out;
  out.matrix = Eigen::MatrixXd::Zero(dim, dim);
  out.mean_conditional_cov = Eigen::MatrixXd::Zero(dim, dim);
  out.trials = trials;
  int used = 0;
  for (const TrialResult& r : results) {
    if (!r.ok) {
      ++out.skipped;
      continue;
    }
    out.matrix += r.error * r.error.transpose();
    out.mean_conditional_cov += r.cov;
    ++used;
  }
  if (used == 0) {
    throw Error(ErrorKind::degenerate_posterior, "every Monte-Carlo trial was degenerate");
  }
  out.matrix /= used;
  out.mean_conditional_cov /= used;
  return out;
}

}  // namespace pmloc
