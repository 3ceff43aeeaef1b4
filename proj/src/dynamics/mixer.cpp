#include <algorithm>
#include <cmath>

#include "dynamics/vehicle.hpp"

namespace squall::dynamics {

// Plus layout, rotor order front(+x), right(-y), back(-x), left(+y).
// Front/back spin opposite to right/left, so drag torques about z alternate:
//   T     = f0 + f1 + f2 + f3
//   eta_x = L * (f3 - f1)
//   eta_y = L * (f2 - f0)
//   eta_z = c_tau * (f0 - f1 + f2 - f3)

MixResult mix_wrench(const BodyWrench& wrench, const VehicleParams& params) {
  const double L = params.arm_length;
  const double ct = params.drag_to_thrust;
  const double t4 = wrench.thrust / 4.0;
  const Vec3& eta = wrench.torque;

  // Exact inverse of the 4x4 allocation.
  std::array<double, 4> delta{-eta.y / (2.0 * L) + eta.z / (4.0 * ct),
                              -eta.x / (2.0 * L) - eta.z / (4.0 * ct),
                              +eta.y / (2.0 * L) + eta.z / (4.0 * ct),
                              +eta.x / (2.0 * L) - eta.z / (4.0 * ct)};

  MixResult out;
  double base = t4;
  if (base < params.f_min || base > params.f_max) {
    base = std::clamp(base, params.f_min, params.f_max);
    out.saturated = true;
  }

  // Collective thrust has priority: find the largest uniform torque scale
  // that keeps every rotor inside its limits.
  double gamma = 1.0;
  for (double d : delta) {
    if (d > 0.0) gamma = std::min(gamma, (params.f_max - base) / d);
    else if (d < 0.0) gamma = std::min(gamma, (params.f_min - base) / d);
  }
  gamma = std::clamp(gamma, 0.0, 1.0);
  if (gamma < 1.0) out.saturated = true;

  for (int i = 0; i < 4; ++i)
    out.f[i] = std::clamp(base + gamma * delta[i], params.f_min, params.f_max);
  return out;
}

BodyWrench wrench_from_rotors(const std::array<double, 4>& f,
                              const VehicleParams& params) {
  const double L = params.arm_length;
  const double ct = params.drag_to_thrust;
  BodyWrench w;
  w.thrust = f[0] + f[1] + f[2] + f[3];
  w.torque = {L * (f[3] - f[1]), L * (f[2] - f[0]),
              ct * (f[0] - f[1] + f[2] - f[3])};
  return w;
}

}  // namespace squall::dynamics
