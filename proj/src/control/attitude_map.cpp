#include "control/attitude_map.hpp"

#include <algorithm>
#include <cmath>

namespace squall::control {

std::optional<AttitudeThrustCmd> accel_to_attitude_thrust(
    const Vec3& a_des, double yaw_ref, double mass, const Vec3& gravity,
    double t_min, double t_max) {
  const Vec3 t = (a_des - gravity) * mass;
  if (t.z <= 0.0) return std::nullopt;

  AttitudeThrustCmd cmd;
  const double T = t.norm();
  cmd.thrust = std::clamp(T, t_min, t_max);
  cmd.thrust_saturated = cmd.thrust != T;

  // Desired body axes: z along t, x as close to the yaw heading as possible.
  const Vec3 b3 = t / T;
  const Vec3 heading{std::cos(yaw_ref), std::sin(yaw_ref), 0.0};
  Vec3 b2 = b3.cross(heading);
  const double n2 = b2.norm();
  if (n2 < 1e-9) return std::nullopt;  // thrust parallel to the heading
  b2 = b2 / n2;
  const Vec3 b1 = b2.cross(b3);

  geom::Mat3 R;
  for (int i = 0; i < 3; ++i) {
    R.m[i][0] = b1[i];
    R.m[i][1] = b2[i];
    R.m[i][2] = b3[i];
  }
  // Rotation matrix -> quaternion (Shepperd's method, R is orthonormal).
  Quat q;
  const double tr = R(0, 0) + R(1, 1) + R(2, 2);
  if (tr > 0.0) {
    double s = std::sqrt(tr + 1.0) * 2.0;
    q = {0.25 * s, (R(2, 1) - R(1, 2)) / s, (R(0, 2) - R(2, 0)) / s,
         (R(1, 0) - R(0, 1)) / s};
  } else if (R(0, 0) > R(1, 1) && R(0, 0) > R(2, 2)) {
    double s = std::sqrt(1.0 + R(0, 0) - R(1, 1) - R(2, 2)) * 2.0;
    q = {(R(2, 1) - R(1, 2)) / s, 0.25 * s, (R(0, 1) + R(1, 0)) / s,
         (R(0, 2) + R(2, 0)) / s};
  } else if (R(1, 1) > R(2, 2)) {
    double s = std::sqrt(1.0 + R(1, 1) - R(0, 0) - R(2, 2)) * 2.0;
    q = {(R(0, 2) - R(2, 0)) / s, (R(0, 1) + R(1, 0)) / s, 0.25 * s,
         (R(1, 2) + R(2, 1)) / s};
  } else {
    double s = std::sqrt(1.0 + R(2, 2) - R(0, 0) - R(1, 1)) * 2.0;
    q = {(R(1, 0) - R(0, 1)) / s, (R(0, 2) + R(2, 0)) / s,
         (R(1, 2) + R(2, 1)) / s, 0.25 * s};
  }
  cmd.q_ref = q.normalized();
  return cmd;
}

}  // namespace squall::control
