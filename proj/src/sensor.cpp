#include "pmloc/sensor.hpp"

#include <algorithm>
#include <string>

#include "pmloc/error.hpp"

namespace pmloc {

double beam_angle(double heading_deg, int index, double resolution_deg) {
  if (index < 1) {
    throw Error(ErrorKind::invalid_index,
                "beam index must be >= 1, got " + std::to_string(index));
  }
  if (!(resolution_deg > 0.0)) {
    throw Error(ErrorKind::invalid_argument, "LRF resolution must be positive");
  }
  return normalize_degrees(heading_deg + (index - 1) * resolution_deg);
}

BeamMeasurement simulate_measurement(const RoomMap& map, const Pose& true_pose, double angle_deg,
                                     double noise_rms, Rng& rng,
                                     std::optional<double> max_range) {
  if (!(noise_rms >= 0.0)) {
    throw Error(ErrorKind::invalid_argument, "noise RMS must be non-negative");
  }
  const RayHit hit = ray_cast(map, true_pose.position(), angle_deg);
  double range = hit.range;
  if (max_range) range = std::min(range, *max_range);
  if (noise_rms > 0.0) {
    std::normal_distribution<double> noise(0.0, noise_rms);
    range += noise(rng);
  }
  return {normalize_degrees(angle_deg), range, noise_rms};
}

double log_likelihood(std::span<const BeamMeasurement> measurements, const Pose& candidate,
                      const RoomMap& map, std::optional<double> max_range) {
  const Vec2 origin = candidate.position();
  if (!map.contains(origin)) return kImpossible;
  double sum = 0.0;
  for (const BeamMeasurement& m : measurements) {
    if (!(m.noise_rms > 0.0)) {
      throw Error(ErrorKind::invalid_argument, "likelihood needs a positive noise RMS");
    }
    RayHit hit;
    if (!detail::nearest_hit(map, origin, beam_direction(m.angle_deg), hit)) {
      throw Error(ErrorKind::map_integrity, "ray does not hit any wall");
    }
    const double predicted = max_range ? std::min(hit.range, *max_range) : hit.range;
    const double z = (m.range - predicted) / m.noise_rms;
    sum += z * z;
  }
  return -0.5 * sum;
}

}  // namespace pmloc
