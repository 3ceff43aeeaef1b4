#pragma once

#include "control/attitude_map.hpp"
#include "dynamics/vehicle.hpp"

namespace squall::sim {

// Stand-in for the off-the-shelf inner attitude controller: quaternion-error
// P-D law producing a body torque, saturated through the rotor mixer by the
// caller. Gains default to a heavily overdamped response whose dominant pole
// matches the 0.2 s first-order constant the MPC model assumes.
struct InnerLoopGains {
  geom::Vec3 k_q{1.75, 1.75, 0.6};     // N*m/rad
  geom::Vec3 k_omega{0.385, 0.385, 0.18};  // N*m/(rad/s)
};

dynamics::BodyWrench inner_attitude_loop(const dynamics::RigidBodyState& x,
                                         const control::AttitudeThrustCmd& cmd,
                                         const InnerLoopGains& gains);

}  // namespace squall::sim
