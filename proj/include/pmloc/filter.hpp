#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "pmloc/geometry.hpp"
#include "pmloc/sensor.hpp"

namespace pmloc {

/// Point-mass grid layout. Positions use cell-center placement over `bounds`;
/// headings (nk > 1) use cell centers over [0, 360).
struct GridSpec {
  int n1 = 200;
  int n2 = 300;
  int nk = 1;  // 1 = known heading
  std::optional<Box> bounds;  // empty -> bounding box of the map
  double known_heading_deg = 0.0;
  /// Optional rangefinder saturation applied to predicted ranges.
  std::optional<double> max_range;

  bool heading_active() const { return nk > 1; }
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

enum class Axis { x1, x2, heading };

enum class Execution { serial, parallel };

/// Log-scale point-mass weights. Storage index is (m * n2 + l) * n1 + j for
/// x1 index j, x2 index l, heading index m.
class WeightGrid {
 public:
  WeightGrid(GridSpec spec, Box bounds, std::vector<double> log_weights);

  const GridSpec& spec() const { return spec_; }
  const Box& bounds() const { return bounds_; }
  std::size_t size() const { return log_weights_.size(); }
  std::span<const double> log_weights() const { return log_weights_; }
  std::span<double> log_weights() { return log_weights_; }

  std::size_t index(int j, int l, int m = 0) const {
    return (static_cast<std::size_t>(m) * spec_.n2 + l) * spec_.n1 + j;
  }
  double cell1() const { return (bounds_.x1_max - bounds_.x1_min) / spec_.n1; }
  double cell2() const { return (bounds_.x2_max - bounds_.x2_min) / spec_.n2; }
  double cellk() const { return 360.0 / spec_.nk; }

  double x1(int j) const { return bounds_.x1_min + (j + 0.5) * cell1(); }
  double x2(int l) const { return bounds_.x2_min + (l + 0.5) * cell2(); }
  /// Heading of slice m; the known heading when nk == 1.
  double heading(int m) const {
    return spec_.heading_active() ? (m + 0.5) * cellk() : spec_.known_heading_deg;
  }

  /// Linear weights exp(log_weight); sums to 1 once normalized.
  std::vector<double> weights() const;

  /// Shifts log-weights so that sum(exp) == 1. Throws
  /// Error(degenerate_posterior) when every point is impossible.
  void normalize();

 private:
  GridSpec spec_;
  Box bounds_;
  std::vector<double> log_weights_;
};

/// Validates the spec and resolves its bounds against the map.
Box resolve_bounds(const GridSpec& spec, const RoomMap& map);

/// Equal mass on every grid point strictly inside the room.
/// Throws Error(empty_prior) if no grid point is interior.
WeightGrid uniform_prior(const GridSpec& spec, const RoomMap& map);

/// Multiplies in the likelihood of `measurements` and renormalizes. With
/// nk == 1 measurement angles are absolute; with nk > 1 they are offsets from
/// the body heading and each heading slice adds its own heading.
/// Results do not depend on the execution mode or thread count.
WeightGrid update(const WeightGrid& grid, std::span<const BeamMeasurement> measurements,
                  const RoomMap& map, Execution exec = Execution::parallel);

namespace reference {
/// Straightforward single-threaded update, kept as a cross-check for the
/// OpenMP kernel. Agrees with pmloc::update to rounding.
WeightGrid update(const WeightGrid& grid, std::span<const BeamMeasurement> measurements,
                  const RoomMap& map);
}  // namespace reference

struct EstimateReport {
  Eigen::VectorXd mean;        // (x1, x2[, heading deg])
  Eigen::MatrixXd covariance;  // m^2 on position entries, deg^2 on heading
  Eigen::VectorXd rms;
  std::size_t n_measurements = 0;
};

/// Posterior mean. Heading, when active, is the circular mean of the weighted
/// resultant vector.
Eigen::VectorXd mean_estimate(const WeightGrid& grid);

/// Second central moment about `mean`. Heading deviations are wrapped to
/// (-180, 180].
Eigen::MatrixXd covariance(const WeightGrid& grid, const Eigen::VectorXd& mean);

EstimateReport estimate(const WeightGrid& grid, std::size_t n_measurements = 0);

/// Marginal weights along one axis.
std::vector<double> marginal(const WeightGrid& grid, Axis axis);

/// Joint (x1, x2) weights summed over heading, indexed l * n1 + j.
std::vector<double> position_marginal(const WeightGrid& grid);

}  // namespace pmloc
