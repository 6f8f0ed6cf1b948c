#include "pmloc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "pmloc/error.hpp"

namespace pmloc {

double normalize_degrees(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r < 0.0) r += 360.0;
  // fmod of a tiny negative value can round up to exactly 360
  if (r >= 360.0) r = 0.0;
  return r;
}

double dot(Vec2 a, Vec2 b) { return a.x1 * b.x1 + a.x2 * b.x2; }
double cross(Vec2 a, Vec2 b) { return a.x1 * b.x2 - a.x2 * b.x1; }
double norm(Vec2 a) { return std::hypot(a.x1, a.x2); }

Vec2 beam_direction(double angle_deg) {
  const double a = deg2rad(normalize_degrees(angle_deg));
  return {std::sin(a), std::cos(a)};
}

double distance_to_segment(Vec2 p, const Segment& s) {
  const Vec2 ab = s.b - s.a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? dot(p - s.a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return norm(p - (s.a + t * ab));
}

namespace {

int orientation(Vec2 a, Vec2 b, Vec2 c) {
  const double v = cross(b - a, c - a);
  if (v > 0.0) return 1;
  if (v < 0.0) return -1;
  return 0;
}

bool on_segment(Vec2 p, const Segment& s) {
  return std::min(s.a.x1, s.b.x1) <= p.x1 && p.x1 <= std::max(s.a.x1, s.b.x1) &&
         std::min(s.a.x2, s.b.x2) <= p.x2 && p.x2 <= std::max(s.a.x2, s.b.x2);
}

// Closed-segment intersection, touching endpoints included.
bool segments_intersect(const Segment& p, const Segment& q) {
  const int o1 = orientation(p.a, p.b, q.a);
  const int o2 = orientation(p.a, p.b, q.b);
  const int o3 = orientation(q.a, q.b, p.a);
  const int o4 = orientation(q.a, q.b, p.b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(q.a, p)) return true;
  if (o2 == 0 && on_segment(q.b, p)) return true;
  if (o3 == 0 && on_segment(p.a, q)) return true;
  if (o4 == 0 && on_segment(p.b, q)) return true;
  return false;
}

}  // namespace

RoomMap::RoomMap(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  if (n < 3) {
    throw Error(ErrorKind::invalid_map, "room map needs at least 3 vertices");
  }
  for (const Vec2& v : vertices_) {
    if (!std::isfinite(v.x1) || !std::isfinite(v.x2)) {
      throw Error(ErrorKind::invalid_map, "room map vertex is not finite");
    }
  }

  walls_.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Segment w{vertices_[k], vertices_[(k + 1) % n]};
    if (!(norm(w.b - w.a) > 0.0)) {
      throw Error(ErrorKind::invalid_map, "wall " + std::to_string(k) + " has zero length");
    }
    walls_.push_back(w);
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (!adjacent) {
        if (segments_intersect(walls_[i], walls_[j])) {
          throw Error(ErrorKind::invalid_map, "walls " + std::to_string(i) + " and " +
                                                  std::to_string(j) + " intersect");
        }
        continue;
      }
      // Adjacent walls share one vertex; they must not fold back onto each other.
      const Segment& first = (j == i + 1) ? walls_[i] : walls_[j];
      const Segment& second = (j == i + 1) ? walls_[j] : walls_[i];
      const Vec2 u = first.a - first.b;
      const Vec2 v = second.b - second.a;
      if (cross(u, v) == 0.0 && dot(u, v) > 0.0) {
        throw Error(ErrorKind::invalid_map, "walls " + std::to_string(i) + " and " +
                                                std::to_string(j) + " overlap");
      }
    }
  }

  double twice_area = 0.0;
  for (const Segment& w : walls_) twice_area += cross(w.a, w.b);
  if (!(twice_area > 0.0)) {
    throw Error(ErrorKind::invalid_map, "room map vertices must be counterclockwise");
  }

  bbox_ = {vertices_[0].x1, vertices_[0].x1, vertices_[0].x2, vertices_[0].x2};
  for (const Vec2& v : vertices_) {
    bbox_.x1_min = std::min(bbox_.x1_min, v.x1);
    bbox_.x1_max = std::max(bbox_.x1_max, v.x1);
    bbox_.x2_min = std::min(bbox_.x2_min, v.x2);
    bbox_.x2_max = std::max(bbox_.x2_max, v.x2);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      diameter_ = std::max(diameter_, norm(vertices_[i] - vertices_[j]));
    }
  }
}

bool RoomMap::contains(Vec2 p, double margin) const {
  bool inside = false;
  for (const Segment& w : walls_) {
    const bool straddles = (w.a.x2 > p.x2) != (w.b.x2 > p.x2);
    if (straddles) {
      const double x_cross = w.a.x1 + (p.x2 - w.a.x2) * (w.b.x1 - w.a.x1) / (w.b.x2 - w.a.x2);
      if (p.x1 < x_cross) inside = !inside;
    }
  }
  if (!inside) return false;
  for (const Segment& w : walls_) {
    if (distance_to_segment(p, w) <= margin) return false;
  }
  return true;
}

RoomMap make_rectangle(double l1, double l2) {
  if (!(l1 > 0.0) || !(l2 > 0.0) || !std::isfinite(l1) || !std::isfinite(l2)) {
    throw Error(ErrorKind::invalid_map, "rectangle dimensions must be positive");
  }
  return RoomMap({{0.0, 0.0}, {l1, 0.0}, {l1, l2}, {0.0, l2}});
}

namespace detail {

bool nearest_hit(const RoomMap& map, Vec2 origin, Vec2 dir, RayHit& out) {
  double best_t = std::numeric_limits<double>::infinity();
  std::size_t best_wall = 0;
  const auto walls = map.walls();
  for (std::size_t k = 0; k < walls.size(); ++k) {
    const Vec2 edge = walls[k].b - walls[k].a;
    const double denom = cross(dir, edge);
    if (denom == 0.0) continue;  // parallel
    const Vec2 rel = walls[k].a - origin;
    const double t = cross(rel, edge) / denom;
    const double s = cross(rel, dir) / denom;
    if (t < kParamTolerance) continue;
    if (s < -kParamTolerance || s > 1.0 + kParamTolerance) continue;
    // Corner hits tie between two walls; keep the lower index.
    if (t < best_t - kParamTolerance) {
      best_t = t;
      best_wall = k;
    }
  }
  if (!std::isfinite(best_t)) return false;
  out.range = best_t;
  out.hit_point = origin + best_t * dir;
  out.wall_index = best_wall;
  return true;
}

}  // namespace detail

RayHit ray_cast(const RoomMap& map, Vec2 origin, double angle_deg) {
  if (!map.contains(origin)) {
    throw Error(ErrorKind::origin_outside, "ray origin is not strictly inside the room");
  }
  RayHit hit;
  if (!detail::nearest_hit(map, origin, beam_direction(angle_deg), hit)) {
    throw Error(ErrorKind::map_integrity, "ray does not hit any wall");
  }
  return hit;
}

}  // namespace pmloc
