#pragma once

#include "geom/quat.hpp"
#include "la/mat.hpp"

namespace squall::estimation {

using geom::EulerZyx;
using geom::Quat;
using geom::Vec3;

// Augmented filter state layout (18 error-state dimensions):
//   [ p(3)  v(3)  attitude(3)  omega_b(3)  f_ext(3)  eta_ext(3) ]
// The EKF carries attitude as Z-Y-X Euler angles; the UKF carries a unit
// quaternion mean with a multiplicative MRP error state in the same slots.
inline constexpr int kStateDim = 18;
inline constexpr int kMeasDim = 12;
inline constexpr int kP = 0;
inline constexpr int kV = 3;
inline constexpr int kAtt = 6;
inline constexpr int kOm = 9;
inline constexpr int kF = 12;
inline constexpr int kEta = 15;

// u = [T_hat, eta_prop_hat]: net thrust and body torque reconstructed from
// the ESC commands through the thrust/drag calibration.
struct FilterInput {
  double thrust = 0.0;  // N, >= 0
  Vec3 torque;          // N*m, body frame
};

// Pose/twist measurement from the state estimator, Euler form (EKF).
struct Measurement {
  Vec3 p;
  Vec3 v;
  EulerZyx att;
  Vec3 omega;

  la::Vec to_vec() const {
    la::Vec z(kMeasDim);
    z[0] = p.x; z[1] = p.y; z[2] = p.z;
    z[3] = v.x; z[4] = v.y; z[5] = v.z;
    z[6] = att.roll; z[7] = att.pitch; z[8] = att.yaw;
    z[9] = omega.x; z[10] = omega.y; z[11] = omega.z;
    return z;
  }
};

// Same measurement with the attitude as a quaternion (UKF).
struct MeasurementQ {
  Vec3 p;
  Vec3 v;
  Quat q;
  Vec3 omega;
};

struct WrenchEstimate {
  Vec3 f_ext;    // world frame, N
  Vec3 eta_ext;  // body frame, N*m
  la::Mat cov;   // 6x6 marginal [f; eta] covariance
};

}  // namespace squall::estimation
