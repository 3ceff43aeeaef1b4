#pragma once

#include "geom/quat.hpp"

namespace squall::control {

using geom::Vec3;

// Disturbance-feedforward position PID:
//   a_des_i = kp_i*ep_i + kd_i*ev_i + ki_i*int(ep_i) - f_ext_hat_i / m
// Gains are per-axis (defaulted equal across x/y; z is stiffer since thrust
// acts without attitude lag).
struct PidConfig {
  Vec3 k_p{6.0, 6.0, 18.0};
  Vec3 k_d{4.9, 4.9, 8.5};
  Vec3 k_i{1.5, 1.5, 4.0};
  double integ_limit = 2.0;  // m*s, per axis
  double a_max = 8.0;        // m/s^2, norm clamp on the output
};

struct PidOutput {
  Vec3 a_des;
  Vec3 integ;  // updated accumulated position error, m*s
};

PidOutput pid_step(const Vec3& e_p, const Vec3& e_v, const Vec3& integ,
                   const Vec3& f_ext_hat, const PidConfig& cfg, double mass,
                   double dt, bool compensation);

}  // namespace squall::control
