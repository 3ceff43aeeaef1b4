#include "geom/quat.hpp"

namespace squall::geom {

Quat quat_from_axis_angle(const Vec3& axis, double angle) {
  const double h = 0.5 * angle;
  const double s = std::sin(h);
  const Vec3 a = axis.normalized();
  return {std::cos(h), a.x * s, a.y * s, a.z * s};
}

Quat quat_from_rotvec(const Vec3& rv) {
  const double angle = rv.norm();
  if (angle < 1e-12) {
    // Second-order small-angle expansion keeps the map smooth through zero.
    return Quat{1.0 - 0.125 * angle * angle, 0.5 * rv.x, 0.5 * rv.y, 0.5 * rv.z}
        .normalized();
  }
  return quat_from_axis_angle(rv / angle, angle);
}

Vec3 rotvec_from_quat(const Quat& q_in) {
  const Quat q = q_in.w < 0.0 ? Quat{-q_in.w, -q_in.x, -q_in.y, -q_in.z} : q_in;
  const double vn = q.vec().norm();
  if (vn < 1e-12) return q.vec() * 2.0;
  const double angle = 2.0 * std::atan2(vn, q.w);
  return q.vec() * (angle / vn);
}

Quat quat_from_euler(const EulerZyx& e) {
  const Quat qz = quat_from_axis_angle({0, 0, 1}, e.yaw);
  const Quat qy = quat_from_axis_angle({0, 1, 0}, e.pitch);
  const Quat qx = quat_from_axis_angle({1, 0, 0}, e.roll);
  return (qz * qy * qx).normalized();
}

std::optional<EulerZyx> euler_from_quat(const Quat& q_in) {
  const Quat q = q_in.normalized();
  const Mat3 R = q.to_mat3();
  const double sp = -R(2, 0);
  constexpr double kGuard = 1e-3;
  if (std::abs(sp) > std::sin(M_PI / 2.0 - kGuard)) return std::nullopt;
  EulerZyx e;
  e.pitch = std::asin(sp);
  e.roll = std::atan2(R(2, 1), R(2, 2));
  e.yaw = std::atan2(R(1, 0), R(0, 0));
  return e;
}

Vec3 mrp_from_quat(const Quat& q_in) {
  Quat q = q_in.normalized();
  if (q.w < 0.0) q = {-q.w, -q.x, -q.y, -q.z};
  return q.vec() / (1.0 + q.w);
}

Quat quat_from_mrp(const Vec3& s) {
  const double s2 = s.squaredNorm();
  const double inv = 1.0 / (1.0 + s2);
  return {(1.0 - s2) * inv, 2.0 * s.x * inv, 2.0 * s.y * inv, 2.0 * s.z * inv};
}

double rotation_distance(const Quat& a, const Quat& b) {
  return (a.conjugate() * b).angle();
}

Mat3 mat3_from_euler(const EulerZyx& e) {
  const double cr = std::cos(e.roll), sr = std::sin(e.roll);
  const double cp = std::cos(e.pitch), sp = std::sin(e.pitch);
  const double cy = std::cos(e.yaw), sy = std::sin(e.yaw);
  Mat3 R;
  R.m[0][0] = cy * cp;
  R.m[0][1] = cy * sp * sr - sy * cr;
  R.m[0][2] = cy * sp * cr + sy * sr;
  R.m[1][0] = sy * cp;
  R.m[1][1] = sy * sp * sr + cy * cr;
  R.m[1][2] = sy * sp * cr - cy * sr;
  R.m[2][0] = -sp;
  R.m[2][1] = cp * sr;
  R.m[2][2] = cp * cr;
  return R;
}

}  // namespace squall::geom
