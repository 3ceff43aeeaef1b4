#pragma once

#include <optional>

#include "geom/vec3.hpp"

namespace squall::geom {

// Euler angles follow the Z-Y-X (yaw-pitch-roll) convention throughout.
struct EulerZyx {
  double roll = 0.0;   // phi
  double pitch = 0.0;  // theta
  double yaw = 0.0;    // psi
};

// Unit quaternion, Hamilton convention, rotates body-frame vectors into the
// world frame: v_w = q * v_b * q^-1.
struct Quat {
  double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

  constexpr Quat() = default;
  constexpr Quat(double w_, double x_, double y_, double z_)
      : w(w_), x(x_), y(y_), z(z_) {}

  static Quat identity() { return {}; }

  Quat operator*(const Quat& o) const {
    return {w * o.w - x * o.x - y * o.y - z * o.z,
            w * o.x + x * o.w + y * o.z - z * o.y,
            w * o.y - x * o.z + y * o.w + z * o.x,
            w * o.z + x * o.y - y * o.x + z * o.w};
  }
  Quat conjugate() const { return {w, -x, -y, -z}; }
  double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }
  Quat normalized() const {
    const double n = norm();
    return {w / n, x / n, y / n, z / n};
  }
  Vec3 vec() const { return {x, y, z}; }
  bool finite() const {
    return std::isfinite(w) && std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }

  Vec3 rotate(const Vec3& v) const {
    const Vec3 u{x, y, z};
    const Vec3 t = u.cross(v) * 2.0;
    return v + t * w + u.cross(t);
  }
  Vec3 rotate_inverse(const Vec3& v) const { return conjugate().rotate(v); }

  Mat3 to_mat3() const {
    Mat3 r;
    const double ww = w * w, xx = x * x, yy = y * y, zz = z * z;
    r.m[0][0] = ww + xx - yy - zz;
    r.m[0][1] = 2.0 * (x * y - w * z);
    r.m[0][2] = 2.0 * (x * z + w * y);
    r.m[1][0] = 2.0 * (x * y + w * z);
    r.m[1][1] = ww - xx + yy - zz;
    r.m[1][2] = 2.0 * (y * z - w * x);
    r.m[2][0] = 2.0 * (x * z - w * y);
    r.m[2][1] = 2.0 * (y * z + w * x);
    r.m[2][2] = ww - xx - yy + zz;
    return r;
  }

  // Rotation angle in [0, pi].
  double angle() const {
    const double v = vec().norm();
    return 2.0 * std::atan2(v, std::abs(w));
  }
};

Quat quat_from_axis_angle(const Vec3& axis, double angle);
Quat quat_from_rotvec(const Vec3& rv);
Vec3 rotvec_from_quat(const Quat& q);

Quat quat_from_euler(const EulerZyx& e);
// Gimbal guard: fails within 1e-3 rad of |pitch| = pi/2.
std::optional<EulerZyx> euler_from_quat(const Quat& q);

// Modified Rodrigues parameters of the rotation error. The sign of q is
// flipped so the rotation angle stays <= pi (shadow-set switch), keeping
// |sigma| <= 1.
Vec3 mrp_from_quat(const Quat& q);
Quat quat_from_mrp(const Vec3& s);

// Angle of the relative rotation between two attitudes.
double rotation_distance(const Quat& a, const Quat& b);

// Rotation matrix for Z-Y-X Euler angles (body -> world).
Mat3 mat3_from_euler(const EulerZyx& e);

}  // namespace squall::geom
