#include "sim/attitude_loop.hpp"

namespace squall::sim {

dynamics::BodyWrench inner_attitude_loop(const dynamics::RigidBodyState& x,
                                         const control::AttitudeThrustCmd& cmd,
                                         const InnerLoopGains& gains) {
  // Body-frame attitude error, shortest direction.
  geom::Quat qe = x.q.conjugate() * cmd.q_ref;
  if (qe.w < 0.0) qe = {-qe.w, -qe.x, -qe.y, -qe.z};
  const geom::Vec3 e = qe.vec() * 2.0;  // ~rotation vector for small errors

  dynamics::BodyWrench w;
  w.thrust = cmd.thrust;
  w.torque = {gains.k_q.x * e.x - gains.k_omega.x * x.omega_b.x,
              gains.k_q.y * e.y - gains.k_omega.y * x.omega_b.y,
              gains.k_q.z * e.z - gains.k_omega.z * x.omega_b.z};
  return w;
}

}  // namespace squall::sim
