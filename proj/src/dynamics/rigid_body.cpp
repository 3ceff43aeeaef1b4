#include <cmath>

#include "dynamics/vehicle.hpp"

namespace squall::dynamics {

std::optional<StateDerivative> state_derivative(const RigidBodyState& x,
                                                const BodyWrench& wrench,
                                                const Vec3& f_ext,
                                                const Vec3& eta_ext,
                                                const VehicleParams& params) {
  if (!x.finite() || !f_ext.finite() || !eta_ext.finite() ||
      !std::isfinite(wrench.thrust) || !wrench.torque.finite())
    return std::nullopt;
  if (std::abs(x.q.norm() - 1.0) > 1e-6) return std::nullopt;

  StateDerivative d;
  d.p_dot = x.v;
  const Vec3 thrust_w = x.q.rotate({0.0, 0.0, wrench.thrust});
  d.v_dot = (thrust_w + f_ext) / params.mass + params.gravity;
  // q_dot = 1/2 q (x) [0; omega_b]
  const Quat omega_q{0.0, x.omega_b.x, x.omega_b.y, x.omega_b.z};
  const Quat qd = x.q * omega_q;
  d.q_dot = {0.5 * qd.w, 0.5 * qd.x, 0.5 * qd.y, 0.5 * qd.z};
  const Vec3 J_omega = params.inertia * x.omega_b;
  d.omega_dot =
      params.inertia_inv() * (wrench.torque + eta_ext - x.omega_b.cross(J_omega));
  return d;
}

namespace {

RigidBodyState advance(const RigidBodyState& x, const StateDerivative& d,
                       double h) {
  RigidBodyState y;
  y.p = x.p + d.p_dot * h;
  y.v = x.v + d.v_dot * h;
  y.q = {x.q.w + d.q_dot.w * h, x.q.x + d.q_dot.x * h, x.q.y + d.q_dot.y * h,
         x.q.z + d.q_dot.z * h};
  y.q = y.q.normalized();
  y.omega_b = x.omega_b + d.omega_dot * h;
  return y;
}

}  // namespace

std::optional<RigidBodyState> integrate_rk4(const RigidBodyState& x,
                                            const BodyWrench& wrench,
                                            const Vec3& f_ext,
                                            const Vec3& eta_ext,
                                            const VehicleParams& params,
                                            double dt) {
  if (!(dt > 0.0) || dt > 0.01) return std::nullopt;

  const auto k1 = state_derivative(x, wrench, f_ext, eta_ext, params);
  if (!k1) return std::nullopt;
  const auto k2 =
      state_derivative(advance(x, *k1, 0.5 * dt), wrench, f_ext, eta_ext, params);
  if (!k2) return std::nullopt;
  const auto k3 =
      state_derivative(advance(x, *k2, 0.5 * dt), wrench, f_ext, eta_ext, params);
  if (!k3) return std::nullopt;
  const auto k4 =
      state_derivative(advance(x, *k3, dt), wrench, f_ext, eta_ext, params);
  if (!k4) return std::nullopt;

  const double h6 = dt / 6.0;
  RigidBodyState y;
  y.p = x.p + (k1->p_dot + 2.0 * k2->p_dot + 2.0 * k3->p_dot + k4->p_dot) * h6;
  y.v = x.v + (k1->v_dot + 2.0 * k2->v_dot + 2.0 * k3->v_dot + k4->v_dot) * h6;
  y.q = {x.q.w + (k1->q_dot.w + 2.0 * k2->q_dot.w + 2.0 * k3->q_dot.w + k4->q_dot.w) * h6,
         x.q.x + (k1->q_dot.x + 2.0 * k2->q_dot.x + 2.0 * k3->q_dot.x + k4->q_dot.x) * h6,
         x.q.y + (k1->q_dot.y + 2.0 * k2->q_dot.y + 2.0 * k3->q_dot.y + k4->q_dot.y) * h6,
         x.q.z + (k1->q_dot.z + 2.0 * k2->q_dot.z + 2.0 * k3->q_dot.z + k4->q_dot.z) * h6};
  y.q = y.q.normalized();
  y.omega_b =
      x.omega_b +
      (k1->omega_dot + 2.0 * k2->omega_dot + 2.0 * k3->omega_dot + k4->omega_dot) * h6;
  return y;
}

}  // namespace squall::dynamics
