#include <cmath>
#include <vector>

#include "pmloc/error.hpp"
#include "pmloc/filter.hpp"

namespace pmloc::reference {

WeightGrid update(const WeightGrid& grid, std::span<const BeamMeasurement> measurements,
                  const RoomMap& map) {
  if (measurements.empty()) {
    throw Error(ErrorKind::invalid_argument, "update needs at least one measurement");
  }
  const GridSpec& spec = grid.spec();
  std::vector<double> lw(grid.log_weights().begin(), grid.log_weights().end());

  for (int m = 0; m < spec.nk; ++m) {
    std::vector<BeamMeasurement> absolute(measurements.begin(), measurements.end());
    if (spec.heading_active()) {
      for (BeamMeasurement& b : absolute) b.angle_deg += grid.heading(m);
    }
    for (int l = 0; l < spec.n2; ++l) {
      for (int j = 0; j < spec.n1; ++j) {
        const std::size_t i = grid.index(j, l, m);
        const Pose candidate(grid.x1(j), grid.x2(l), grid.heading(m));
        lw[i] += log_likelihood(absolute, candidate, map, spec.max_range);
      }
    }
  }

  WeightGrid out(spec, grid.bounds(), std::move(lw));
  out.normalize();
  return out;
}

}  // namespace pmloc::reference
