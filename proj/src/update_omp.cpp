#include <atomic>
#include <cmath>
#include <vector>

#include "pmloc/error.hpp"
#include "pmloc/filter.hpp"

namespace pmloc {

namespace {

void check_measurements(std::span<const BeamMeasurement> measurements) {
  if (measurements.empty()) {
    throw Error(ErrorKind::invalid_argument, "update needs at least one measurement");
  }
  for (const BeamMeasurement& m : measurements) {
    if (!(m.noise_rms > 0.0)) {
      throw Error(ErrorKind::invalid_argument, "measurement noise RMS must be positive");
    }
  }
}

}  // namespace

WeightGrid update(const WeightGrid& grid, std::span<const BeamMeasurement> measurements,
                  const RoomMap& map, Execution exec) {
  check_measurements(measurements);
  const GridSpec& spec = grid.spec();
  const std::size_t n_beams = measurements.size();

  // Beam directions per heading slice.
  std::vector<Vec2> dirs(static_cast<std::size_t>(spec.nk) * n_beams);
  std::vector<double> inv_rms(n_beams);
  for (int m = 0; m < spec.nk; ++m) {
    const double offset = spec.heading_active() ? grid.heading(m) : 0.0;
    for (std::size_t b = 0; b < n_beams; ++b) {
      dirs[m * n_beams + b] = beam_direction(measurements[b].angle_deg + offset);
    }
  }
  for (std::size_t b = 0; b < n_beams; ++b) inv_rms[b] = 1.0 / measurements[b].noise_rms;

  WeightGrid out = grid;
  auto lw = out.log_weights();
  const auto max_range = spec.max_range;
  const int rows = spec.nk * spec.n2;
  std::atomic<bool> missed{false};

#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
  for (int row = 0; row < rows; ++row) {
    const int m = row / spec.n2;
    const int l = row % spec.n2;
    const Vec2* row_dirs = &dirs[m * n_beams];
    for (int j = 0; j < spec.n1; ++j) {
      double& w = lw[grid.index(j, l, m)];
      if (w == kImpossible) continue;
      const Vec2 p{grid.x1(j), grid.x2(l)};
      if (!map.contains(p)) {
        w = kImpossible;
        continue;
      }
      double sum = 0.0;
      for (std::size_t b = 0; b < n_beams; ++b) {
        RayHit hit;
        if (!detail::nearest_hit(map, p, row_dirs[b], hit)) {
          missed.store(true, std::memory_order_relaxed);
          continue;
        }
        const double predicted = max_range ? std::min(hit.range, *max_range) : hit.range;
        const double z = (measurements[b].range - predicted) * inv_rms[b];
        sum += z * z;
      }
      w += -0.5 * sum;
    }
  }

  if (missed.load()) throw Error(ErrorKind::map_integrity, "ray does not hit any wall");
  out.normalize();
  return out;
}

}  // namespace pmloc
