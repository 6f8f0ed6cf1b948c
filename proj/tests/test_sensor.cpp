#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "pmloc/error.hpp"
#include "pmloc/sensor.hpp"

using namespace pmloc;

TEST_CASE("beam_angle steps by the scanner resolution") {
  CHECK(beam_angle(20, 1, 0.36) == doctest::Approx(20.0));
  CHECK(beam_angle(20, 2, 0.36) == doctest::Approx(20.36));
  CHECK(beam_angle(359.9, 2, 0.36) == doctest::Approx(0.26));
  CHECK(beam_angle(20, 2) == doctest::Approx(20.36));
  CHECK(LrfSpec{}.resolution_deg == 0.36);
  CHECK(LrfSpec{}.noise_rms == 0.05);
  try {
    beam_angle(20, 0, 0.36);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_index);
  }
}

TEST_CASE("simulate_measurement without noise is the geometric range") {
  const RoomMap room = make_rectangle(4, 6);
  const Pose pose(2, 3, 20);
  Rng rng(1);
  CHECK(simulate_measurement(room, pose, 0.0, 0.0, rng).range == doctest::Approx(3.0));
  const double corner = rad2deg(std::atan2(2.0, 3.0));
  CHECK(simulate_measurement(room, pose, corner, 0.0, rng).range ==
        doctest::Approx(std::sqrt(13.0)).epsilon(1e-12));
  // saturation
  CHECK(simulate_measurement(room, pose, 0.0, 0.0, rng, 2.5).range == 2.5);
}

TEST_CASE("simulated noise statistics over many seeds") {
  const RoomMap room = make_rectangle(4, 6);
  const Pose pose(2, 3, 20);
  const int n = 100000;
  double sum = 0.0, sum_sq = 0.0;
  for (int seed = 0; seed < n; ++seed) {
    Rng rng(static_cast<std::uint64_t>(seed));
    const double v = simulate_measurement(room, pose, 0.0, 0.05, rng).range - 3.0;
    sum += v;
    sum_sq += v * v;
  }
  CHECK(std::abs(sum / n) < 0.001);
  CHECK(std::abs(std::sqrt(sum_sq / n) - 0.05) < 0.002);
}

TEST_CASE("successive draws on one rng are independent") {
  const RoomMap room = make_rectangle(4, 6);
  const Pose pose(2, 3, 20);
  Rng rng(3);
  const int n = 20000;
  std::vector<double> v(n);
  for (double& x : v) x = simulate_measurement(room, pose, 90.0, 0.05, rng).range - 2.0;
  double lag = 0.0, var = 0.0;
  for (int i = 0; i + 1 < n; ++i) lag += v[i] * v[i + 1];
  for (double x : v) var += x * x;
  CHECK(std::abs(lag / var) < 0.05);
}

TEST_CASE("log_likelihood values") {
  const RoomMap room = make_rectangle(4, 6);
  const Pose at_center(2, 3, 20);
  const BeamMeasurement exact{0.0, 3.0, 0.05};
  const BeamMeasurement one_sigma{90.0, 2.05, 0.05};
  CHECK(log_likelihood(std::vector{exact}, at_center, room) == doctest::Approx(0.0));
  CHECK(log_likelihood(std::vector{one_sigma}, at_center, room) == doctest::Approx(-0.5));

  const BeamMeasurement a{33.7, 3.3, 0.05}, b{210.0, 1.0, 0.2};
  const double la = log_likelihood(std::vector{a}, at_center, room);
  const double lb = log_likelihood(std::vector{b}, at_center, room);
  const double lab = log_likelihood(std::vector{a, b}, at_center, room);
  CHECK(std::abs(lab - (la + lb)) <= 1e-12 * std::abs(lab));

  CHECK(log_likelihood(std::vector{exact}, Pose(5, 3, 0), room) == kImpossible);
  CHECK(log_likelihood(std::vector{exact}, Pose(0, 3, 0), room) == kImpossible);
}

TEST_CASE("log_likelihood properties") {
  const RoomMap room = make_rectangle(4, 6);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u1(0.1, 3.9), u2(0.1, 5.9), ua(0, 360), ur(0.5, 4),
      us(0.01, 0.3);
  for (int trial = 0; trial < 200; ++trial) {
    const Pose p(u1(rng), u2(rng), 0);
    std::vector<BeamMeasurement> ms;
    for (int k = 0; k < 4; ++k) ms.push_back({ua(rng), ur(rng), us(rng)});
    const double base = log_likelihood(ms, p, room);
    CHECK(base <= 0.0);

    // permutation invariance
    std::vector<BeamMeasurement> rev(ms.rbegin(), ms.rend());
    CHECK(log_likelihood(rev, p, room) == doctest::Approx(base).epsilon(1e-12));

    // doubling every rms scales by exactly a quarter
    std::vector<BeamMeasurement> wide = ms;
    for (auto& m : wide) m.noise_rms *= 2.0;
    CHECK(log_likelihood(wide, p, room) == base / 4.0);

    // zero residuals give the maximum, and growing one residual lowers it
    std::vector<BeamMeasurement> fit = ms;
    for (auto& m : fit) m.range = ray_cast(room, p.position(), m.angle_deg).range;
    CHECK(log_likelihood(fit, p, room) == doctest::Approx(0.0));
    double prev = 0.0;
    for (double res = 0.01; res < 1.0; res += 0.1) {
      fit[0].range = ray_cast(room, p.position(), fit[0].angle_deg).range + res;
      const double now = log_likelihood(fit, p, room);
      CHECK(now < prev);
      prev = now;
    }
  }
}

TEST_CASE("negative ranges are flagged but kept") {
  const BeamMeasurement m{0.0, -0.01, 0.05};
  CHECK(m.negative_range());
  const RoomMap room = make_rectangle(4, 6);
  CHECK(std::isfinite(log_likelihood(std::vector{m}, Pose(2, 3, 0), room)));
}
