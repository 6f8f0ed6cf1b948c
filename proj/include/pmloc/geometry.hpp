#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pmloc {

inline constexpr double kPi = 3.14159265358979323846;

/// Interior test margin, meters.
inline constexpr double kInteriorMargin = 1e-9;
/// Ray / segment parameter tolerance.
inline constexpr double kParamTolerance = 1e-12;

inline constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

/// Wraps an angle in degrees into [0, 360).
double normalize_degrees(double deg);

struct Vec2 {
  double x1 = 0.0;
  double x2 = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x1, s * a.x2}; }
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

double dot(Vec2 a, Vec2 b);
double cross(Vec2 a, Vec2 b);
double norm(Vec2 a);

/// Unit beam direction (sin a, cos a): the angle is measured from the +x2
/// axis, increasing toward +x1.
Vec2 beam_direction(double angle_deg);

struct Segment {
  Vec2 a;
  Vec2 b;
};

/// Distance from p to the closed segment [s.a, s.b].
double distance_to_segment(Vec2 p, const Segment& s);

struct Box {
  double x1_min = 0.0;
  double x1_max = 0.0;
  double x2_min = 0.0;
  double x2_max = 0.0;

  friend bool operator==(const Box&, const Box&) = default;
};

/// Closed simple polygon, counterclockwise. Wall k joins vertex k to k+1 and
/// the last wall closes back to vertex 0.
class RoomMap {
 public:
  /// Validates the polygon; throws Error(invalid_map) on fewer than three
  /// vertices, a zero-length wall, a self-intersection, or clockwise order.
  explicit RoomMap(std::vector<Vec2> vertices);

  std::span<const Vec2> vertices() const { return vertices_; }
  std::span<const Segment> walls() const { return walls_; }
  const Box& bounding_box() const { return bbox_; }
  /// Largest vertex-to-vertex distance; bounds every interior ray range.
  double diameter() const { return diameter_; }

  /// True when p is inside the polygon and farther than `margin` from every
  /// wall.
  bool contains(Vec2 p, double margin = kInteriorMargin) const;

  friend bool operator==(const RoomMap& a, const RoomMap& b) {
    return a.vertices_ == b.vertices_;
  }

 private:
  std::vector<Vec2> vertices_;
  std::vector<Segment> walls_;
  Box bbox_;
  double diameter_ = 0.0;
};

/// Axis-aligned room with corners (0,0), (l1,0), (l1,l2), (0,l2).
RoomMap make_rectangle(double l1, double l2);

struct Pose {
  double x1 = 0.0;
  double x2 = 0.0;
  double heading_deg = 0.0;  // [0, 360)

  Pose() = default;
  Pose(double x1_, double x2_, double heading)
      : x1(x1_), x2(x2_), heading_deg(normalize_degrees(heading)) {}

  Vec2 position() const { return {x1, x2}; }
  friend bool operator==(const Pose&, const Pose&) = default;
};

struct RayHit {
  double range = 0.0;
  Vec2 hit_point;
  std::size_t wall_index = 0;
};

/// Range to the nearest wall along `angle_deg` from an interior origin.
/// Throws Error(origin_outside) when the origin is not strictly interior and
/// Error(map_integrity) when no wall is hit.
RayHit ray_cast(const RoomMap& map, Vec2 origin, double angle_deg);

namespace detail {
/// ray_cast without the interior check; `dir` must be a unit vector.
/// Returns false when nothing is hit.
bool nearest_hit(const RoomMap& map, Vec2 origin, Vec2 dir, RayHit& out);
}  // namespace detail

}  // namespace pmloc
