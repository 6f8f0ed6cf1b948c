#include <cmath>
#include <cstring>

#include "doctest.h"
#include "pmloc/analysis.hpp"
#include "pmloc/error.hpp"

using namespace pmloc;

namespace {

bool same_bits(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0;
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected pmloc::Error");
  return ErrorKind::parse;
}

double gap(const UnconditionalCov& u, int axis) {
  return std::abs(u.matrix(axis, axis) / u.mean_conditional_cov(axis, axis) - 1.0);
}

Scenario noisy_example() {
  Scenario s = example_scenario();
  s.noise_free = false;
  return s;
}

}  // namespace

TEST_CASE("example scenario configuration") {
  const Scenario s = example_scenario();
  CHECK(s.map == make_rectangle(4, 6));
  CHECK(s.true_pose == Pose(2, 3, 20));
  REQUIRE(s.beams.size() == 3);
  CHECK(s.beams[0].angle_deg == 326.3);
  CHECK(s.beams[1].angle_deg == 0.0);
  CHECK(s.beams[2].angle_deg == 33.7);
  for (const Beam& b : s.beams) CHECK(b.noise_rms == 0.05);
  CHECK(s.grid.n1 == 200);
  CHECK(s.grid.n2 == 300);
  CHECK(s.noise_free);
  CHECK(table1_subsets().size() == 7);
}

TEST_CASE("run_scenario") {
  const Scenario s = example_scenario();
  const ScenarioRun run = run_scenario(s, {2});
  CHECK(std::abs(run.report.rms(1) - 0.05) < 0.02);
  CHECK(run.report.n_measurements == 1);
  REQUIRE(run.measurements.size() == 1);
  CHECK(run.measurements[0].range == doctest::Approx(3.0));

  CHECK(kind_of([&] { run_scenario(s, {}); }) == ErrorKind::invalid_argument);
  CHECK(kind_of([&] { run_scenario(s, {9}); }) == ErrorKind::invalid_index);
  CHECK(kind_of([&] { run_scenario(s, {0}); }) == ErrorKind::invalid_index);

  const Scenario noisy = noisy_example();
  const ScenarioRun a = run_scenario(noisy, {1, 2, 3});
  const ScenarioRun b = run_scenario(noisy, {1, 2, 3});
  CHECK(same_bits(a.report.covariance, b.report.covariance));
  CHECK(same_bits(a.report.mean, b.report.mean));
  CHECK(a.measurements == b.measurements);
  CHECK(a.measurements[1].range != 3.0);
}

TEST_CASE("combo_study shares one realization") {
  const Scenario s = noisy_example();
  const ComboTable one = combo_study(s, {{2}});
  CHECK(one.rows.size() == 1);
  CHECK_FALSE(one.rows[0].posterior.has_value());

  const ComboTable t = combo_study(s, {{1, 3}, {3, 1}, {1, 2, 3}}, true);
  REQUIRE(t.rows.size() == 3);
  CHECK(t.rows[0].rms1 == t.rows[1].rms1);
  CHECK(t.rows[0].rms2 == t.rows[1].rms2);
  CHECK(t.rows[2].posterior.has_value());

  const ScenarioRun run = run_scenario(s, {1, 2, 3});
  CHECK(same_bits(run.report.covariance, t.rows[2].report.covariance));

  CHECK(kind_of([&] { combo_study(s, {}); }) == ErrorKind::invalid_argument);
}

TEST_CASE("table 1 columns from exact ranges") {
  const ComboTable t = combo_study(example_scenario(), table1_subsets());
  // published values, rows sqrt(P[1,1]) and sqrt(P[2,2])
  const double p1[] = {0.64, 1.1, 0.64, 0.63, 0.61, 0.02, 0.02};
  const double p2[] = {0.96, 0.05, 0.96, 0.03, 0.03, 0.87, 0.03};
  auto close = [](double got, double want) {
    return want <= 0.10 ? std::abs(got - want) <= 0.02 : std::abs(got - want) <= 0.2 * want;
  };
  for (int c = 0; c < 7; ++c) {
    CAPTURE(c);
    CHECK(close(t.rows[c].rms1, p1[c]));
    CHECK(close(t.rows[c].rms2, p2[c]));
  }
}

TEST_CASE("Monte-Carlo single trial") {
  Scenario s = noisy_example();
  s.grid.n1 = 50;
  s.grid.n2 = 75;
  s.beams = {{0.0, 0.2}, {90.0, 0.2}};
  const UnconditionalCov u = monte_carlo_covariance(s, {1, 2}, 1);
  CHECK(u.trials == 1);
  CHECK(u.skipped == 0);
  // e e^T is rank one
  CHECK(u.matrix(0, 1) * u.matrix(1, 0) == doctest::Approx(u.matrix(0, 0) * u.matrix(1, 1)));
  CHECK(u.matrix(0, 1) == u.matrix(1, 0));

  CHECK(kind_of([&] { monte_carlo_covariance(s, {1}, 0); }) == ErrorKind::invalid_argument);
}

TEST_CASE("Monte-Carlo is reproducible and schedule independent") {
  Scenario s = noisy_example();
  s.grid.n1 = 60;
  s.grid.n2 = 90;
  const UnconditionalCov a = monte_carlo_covariance(s, {1, 2, 3}, 40, Execution::parallel);
  const UnconditionalCov b = monte_carlo_covariance(s, {1, 2, 3}, 40, Execution::serial);
  const UnconditionalCov c = monte_carlo_covariance(s, {1, 2, 3}, 40);
  CHECK(same_bits(a.matrix, b.matrix));
  CHECK(same_bits(a.mean_conditional_cov, b.mean_conditional_cov));
  CHECK(same_bits(a.matrix, c.matrix));

  Rng r0 = trial_rng(s.seed, 0), r0b = trial_rng(s.seed, 0), r1 = trial_rng(s.seed, 1);
  CHECK(r0() == r0b());
  CHECK(trial_rng(s.seed, 0)() != r1());
  CHECK(trial_rng(s.seed + 1, 0)() != trial_rng(s.seed, 0)());
}

TEST_CASE("Monte-Carlo unconditional covariance on the example beams") {
  const Scenario s = noisy_example();
  const UnconditionalCov all = monte_carlo_covariance(s, {1, 2, 3}, 500);
  CHECK(all.skipped == 0);
  CHECK(gap(all, 0) < 0.15);
  CHECK(gap(all, 1) < 0.15);
  CHECK(all.matrix(0, 1) == all.matrix(1, 0));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(all.matrix);
  CHECK(eig.eigenvalues().minCoeff() >= 0.0);

  const UnconditionalCov far_wall = monte_carlo_covariance(s, {2}, 500);
  CHECK(std::abs(std::sqrt(far_wall.matrix(0, 0)) - 4.0 / std::sqrt(12.0)) < 0.1 * 1.1547);
  CHECK(std::abs(std::sqrt(far_wall.matrix(1, 1)) - 0.05) < 0.25 * 0.05);

  // three beams never do worse than one
  CHECK(all.matrix(0, 0) <= far_wall.matrix(0, 0));
  CHECK(all.matrix(1, 1) <= far_wall.matrix(1, 1));
}

TEST_CASE("Monte-Carlo gap shrinks with more trials") {
  Scenario s = noisy_example();
  s.grid.n1 = 100;
  s.grid.n2 = 150;
  double gap_small = 0.0, gap_large = 0.0;
  for (std::uint64_t seed : {101u, 202u, 303u}) {
    s.seed = seed;
    const UnconditionalCov small = monte_carlo_covariance(s, {1, 2, 3}, 100);
    const UnconditionalCov large = monte_carlo_covariance(s, {1, 2, 3}, 2000);
    gap_small += gap(small, 0) + gap(small, 1);
    gap_large += gap(large, 0) + gap(large, 1);
  }
  CHECK(gap_large < gap_small);
}

TEST_CASE("unknown-heading scenario") {
  Scenario s;
  s.map = RoomMap({{0, 0}, {4, 0}, {4, 2}, {2, 2}, {2, 6}, {0, 6}});
  s.true_pose = Pose(1.2, 4.1, 45.0);
  for (int k = 0; k < 12; ++k) s.beams.push_back({30.0 * k, 0.2});
  s.grid.n1 = 40;
  s.grid.n2 = 60;
  s.grid.nk = 72;
  s.noise_free = true;
  const ScenarioRun run = run_scenario(s, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12});
  // beams are stored body-relative
  CHECK(run.measurements[1].angle_deg == 30.0);
  CHECK(run.measurements[0].range == doctest::Approx(ray_cast(s.map, {1.2, 4.1}, 45.0).range));
  CHECK(std::abs(std::remainder(run.report.mean(2) - 45.0, 360.0)) < 5.0);
}
