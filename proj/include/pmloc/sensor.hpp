#pragma once

#include <limits>
#include <optional>
#include <random>
#include <span>

#include "pmloc/geometry.hpp"

namespace pmloc {

/// Log-weight of a state the map rules out.
inline constexpr double kImpossible = -std::numeric_limits<double>::infinity();

struct BeamMeasurement {
  double angle_deg = 0.0;  // absolute direction (or body-relative, see filter)
  double range = 0.0;      // measured, meters; may be negative after noise
  double noise_rms = 0.05;

  bool negative_range() const { return range < 0.0; }
  friend bool operator==(const BeamMeasurement&, const BeamMeasurement&) = default;
};

/// Laser rangefinder parameters. Defaults describe a Hokuyo URG-04LX class
/// scanner with 5 cm range noise.
struct LrfSpec {
  double resolution_deg = 0.36;
  double noise_rms = 0.05;
  /// Saturation range for simulated and predicted readings; off by default.
  std::optional<double> max_range;
};

/// Direction of beam `index` (1-based) in a scan starting at `heading_deg`.
double beam_angle(double heading_deg, int index, double resolution_deg = 0.36);

using Rng = std::mt19937_64;

/// Noisy range reading of the wall along `angle_deg` from the true position.
/// noise_rms == 0 returns the exact geometric range without touching rng.
BeamMeasurement simulate_measurement(const RoomMap& map, const Pose& true_pose, double angle_deg,
                                     double noise_rms, Rng& rng,
                                     std::optional<double> max_range = std::nullopt);

/// -1/2 * sum_j (y_j - rho_j(candidate))^2 / r_j^2 with the normalizing
/// constant dropped. Measurement angles are absolute. Returns kImpossible for
/// a candidate outside the room.
double log_likelihood(std::span<const BeamMeasurement> measurements, const Pose& candidate,
                      const RoomMap& map, std::optional<double> max_range = std::nullopt);

}  // namespace pmloc
