#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "pmloc/error.hpp"
#include "pmloc/filter.hpp"

namespace pmloc {

namespace {

void validate_spec(const GridSpec& spec) {
  if (spec.n1 < 2 || spec.n2 < 2 || spec.nk < 1) {
    throw Error(ErrorKind::invalid_argument, "grid needs n1 >= 2, n2 >= 2, nk >= 1");
  }
  const long long total = static_cast<long long>(spec.n1) * spec.n2 * spec.nk;
  if (total < 4) throw Error(ErrorKind::invalid_argument, "grid needs at least 4 points");
}

}  // namespace

Box resolve_bounds(const GridSpec& spec, const RoomMap& map) {
  validate_spec(spec);
  const Box b = spec.bounds.value_or(map.bounding_box());
  if (!(b.x1_max > b.x1_min) || !(b.x2_max > b.x2_min)) {
    throw Error(ErrorKind::invalid_argument, "grid bounds must have positive extent");
  }
  return b;
}

WeightGrid::WeightGrid(GridSpec spec, Box bounds, std::vector<double> log_weights)
    : spec_(std::move(spec)), bounds_(bounds), log_weights_(std::move(log_weights)) {
  validate_spec(spec_);
  const std::size_t expected = static_cast<std::size_t>(spec_.n1) * spec_.n2 * spec_.nk;
  if (log_weights_.size() != expected) {
    throw Error(ErrorKind::invalid_argument,
                "grid has " + std::to_string(log_weights_.size()) + " weights, expected " +
                    std::to_string(expected));
  }
}

std::vector<double> WeightGrid::weights() const {
  std::vector<double> w(log_weights_.size());
  std::transform(log_weights_.begin(), log_weights_.end(), w.begin(),
                 [](double lw) { return std::exp(lw); });
  return w;
}

void WeightGrid::normalize() {
  double peak = kImpossible;
  for (double lw : log_weights_) peak = std::max(peak, lw);
  if (!std::isfinite(peak)) {
    throw Error(ErrorKind::degenerate_posterior,
                "every grid point has zero weight; measurements are inconsistent with the map");
  }
  double sum = 0.0;
  for (double lw : log_weights_) sum += std::exp(lw - peak);
  const double shift = peak + std::log(sum);
  for (double& lw : log_weights_) lw -= shift;
}

WeightGrid uniform_prior(const GridSpec& spec, const RoomMap& map) {
  const Box bounds = resolve_bounds(spec, map);
  WeightGrid grid(spec, bounds,
                  std::vector<double>(static_cast<std::size_t>(spec.n1) * spec.n2 * spec.nk, 0.0));
  auto lw = grid.log_weights();
  std::size_t interior = 0;
  for (int l = 0; l < spec.n2; ++l) {
    for (int j = 0; j < spec.n1; ++j) {
      const bool inside = map.contains({grid.x1(j), grid.x2(l)});
      interior += inside ? 1 : 0;
      for (int m = 0; m < spec.nk; ++m) {
        lw[grid.index(j, l, m)] = inside ? 0.0 : kImpossible;
      }
    }
  }
  if (interior == 0) {
    throw Error(ErrorKind::empty_prior, "no grid point lies inside the room");
  }
  grid.normalize();
  return grid;
}

}  // namespace pmloc
