#pragma once

#include <vector>

#include "geom/vec3.hpp"

namespace squall::guidance {

using geom::Vec3;

// Piecewise-linear spatially-parameterized reference path with a constant
// tangent speed and a constant yaw reference.
struct ReferencePath {
  std::vector<Vec3> waypoints;
  double v_ref = 0.5;    // m/s along the tangent
  double yaw_ref = 0.0;  // rad

  bool valid() const;
  double length() const;
  // Point and unit tangent at arc-length s (clamped to [0, length]).
  Vec3 point_at(double s) const;
  Vec3 tangent_at(double s) const;
};

struct GuidanceOutput {
  Vec3 p_ref;      // closest path point
  Vec3 v_ref_vec;  // tangent * v_ref, zero when at_end
  double s = 0.0;  // arc-length of the closest point
  bool at_end = false;
};

// Global closest point on the path; ties resolve to the smallest arc length.
// Beyond the final waypoint the output clamps there with zero velocity
// reference (hover at the terminus).
GuidanceOutput closest_point(const ReferencePath& path, const Vec3& p);

// Same search restricted to the arc-length window [s_lo, s_hi].
GuidanceOutput closest_point_windowed(const ReferencePath& path, const Vec3& p,
                                      double s_lo, double s_hi);

// Stateful wrapper that keeps the closest-point parameter from jumping
// backward between near-parallel legs: after the first query the search is
// restricted to [s_prev - 0.5 m, s_prev + 2 m].
class PathFollower {
 public:
  explicit PathFollower(ReferencePath path) : path_(std::move(path)) {}

  GuidanceOutput step(const Vec3& p);
  const ReferencePath& path() const { return path_; }

 private:
  ReferencePath path_;
  bool started_ = false;
  double s_prev_ = 0.0;
};

}  // namespace squall::guidance
