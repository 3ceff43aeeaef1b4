#pragma once

#include <optional>

#include "geom/quat.hpp"

namespace squall::control {

using geom::Quat;
using geom::Vec3;

struct AttitudeThrustCmd {
  double thrust = 0.0;  // N, clamped to [t_min, t_max]
  Quat q_ref;           // body -> world reference attitude
  bool thrust_saturated = false;
};

// Maps a desired acceleration to collective thrust plus a reference attitude
// with the requested yaw: t = m*(a_des - g), T = |t|, body z aligned with t.
// Fails when the desired thrust vector points downward (inverted flight).
std::optional<AttitudeThrustCmd> accel_to_attitude_thrust(
    const Vec3& a_des, double yaw_ref, double mass, const Vec3& gravity,
    double t_min, double t_max);

}  // namespace squall::control
