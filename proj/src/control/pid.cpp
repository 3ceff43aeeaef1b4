#include "control/pid.hpp"

#include <algorithm>

namespace squall::control {

PidOutput pid_step(const Vec3& e_p, const Vec3& e_v, const Vec3& integ,
                   const Vec3& f_ext_hat, const PidConfig& cfg, double mass,
                   double dt, bool compensation) {
  PidOutput out;
  out.integ = integ + e_p * dt;
  for (int i = 0; i < 3; ++i)
    out.integ[i] = std::clamp(out.integ[i], -cfg.integ_limit, cfg.integ_limit);

  for (int i = 0; i < 3; ++i) {
    out.a_des[i] = cfg.k_p[i] * e_p[i] + cfg.k_d[i] * e_v[i] +
                   cfg.k_i[i] * out.integ[i];
    if (compensation) out.a_des[i] -= f_ext_hat[i] / mass;
  }

  const double n = out.a_des.norm();
  if (n > cfg.a_max) out.a_des *= cfg.a_max / n;
  return out;
}

}  // namespace squall::control
