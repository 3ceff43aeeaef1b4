#pragma once

#include <array>
#include <optional>

#include "geom/quat.hpp"

namespace squall::dynamics {

using geom::Mat3;
using geom::Quat;
using geom::Vec3;

// Quadratic ESC-command-to-thrust polynomial with a linear battery-voltage
// scale:  f(u, V) = (a*V + b) * (c2*u^2 + c1*u + c0).
struct ThrustMapCoeffs {
  double c2 = 3.0;
  double c1 = 1.5;
  double c0 = 0.0;
  double a = 0.05;
  double b = 0.445;
  double v_min = 9.6;   // calibrated voltage range
  double v_max = 12.8;

  // The map must be strictly increasing in u over [0,1] for every admissible
  // voltage; checked by sampling both range endpoints.
  bool valid() const;
};

enum class RotorLayout { kPlus };

struct VehicleParams {
  double mass = 0.7;  // kg
  Mat3 inertia = Mat3::diag(0.007, 0.007, 0.012);
  Vec3 gravity{0.0, 0.0, -9.81};
  double arm_length = 0.17;
  RotorLayout layout = RotorLayout::kPlus;
  double drag_to_thrust = 0.016;  // c_tau, m
  ThrustMapCoeffs thrust_map;
  double f_min = 0.0;  // per-rotor thrust limits, N
  double f_max = 4.5;

  bool valid() const;
  Mat3 inertia_inv() const { return inertia.inverse(); }
  double hover_thrust() const { return mass * gravity.norm(); }
};

struct RigidBodyState {
  Vec3 p;                   // world position, m
  Vec3 v;                   // world velocity, m/s
  Quat q;                   // body -> world
  Vec3 omega_b;             // body rates, rad/s

  bool finite() const {
    return p.finite() && v.finite() && q.finite() && omega_b.finite();
  }
};

struct RotorCommand {
  std::array<double, 4> u_esc{0, 0, 0, 0};  // normalized, clamped to [0,1]
  double v_batt = 11.1;
};

struct BodyWrench {
  double thrust = 0.0;  // collective, N, along body +z
  Vec3 torque;          // body frame, N*m
};

// --- thrust / torque maps ---------------------------------------------------

// Single-rotor thrust from a normalized ESC command. nullopt when the voltage
// is outside the calibrated range.
std::optional<double> esc_to_thrust(double u, double v_batt,
                                    const ThrustMapCoeffs& coeffs,
                                    double f_min = 0.0, double f_max = 1e9);

struct EscResult {
  double u = 0.0;
  bool saturated = false;
};

// Inverse of esc_to_thrust on the increasing branch. Thrust outside the
// achievable range clamps the command and sets the saturation flag.
std::optional<EscResult> thrust_to_esc(double f, double v_batt,
                                       const ThrustMapCoeffs& coeffs);

// --- rotor mixing -----------------------------------------------------------

struct MixResult {
  std::array<double, 4> f{0, 0, 0, 0};  // per-rotor thrusts, N
  bool saturated = false;
};

// Allocates a body wrench to four rotor thrusts (plus layout, order
// front/right/back/left). When a rotor would clip, collective thrust is
// preserved and the torque contributions are scaled down uniformly.
MixResult mix_wrench(const BodyWrench& wrench, const VehicleParams& params);

// Recombines rotor thrusts into the body wrench they produce (exact inverse
// of the allocation when unsaturated).
BodyWrench wrench_from_rotors(const std::array<double, 4>& f,
                              const VehicleParams& params);

// --- rigid-body dynamics ----------------------------------------------------

struct StateDerivative {
  Vec3 p_dot;
  Vec3 v_dot;
  Quat q_dot;  // unnormalized quaternion rate
  Vec3 omega_dot;
};

// f_ext in world frame, eta_ext in body frame. nullopt on non-finite input.
std::optional<StateDerivative> state_derivative(const RigidBodyState& x,
                                                const BodyWrench& wrench,
                                                const Vec3& f_ext,
                                                const Vec3& eta_ext,
                                                const VehicleParams& params);

// Classical RK4 step with quaternion renormalization. Inputs are held
// constant over the step. nullopt when dt is outside (0, 0.01] or the
// derivative rejects the state.
std::optional<RigidBodyState> integrate_rk4(const RigidBodyState& x,
                                            const BodyWrench& wrench,
                                            const Vec3& f_ext,
                                            const Vec3& eta_ext,
                                            const VehicleParams& params,
                                            double dt);

}  // namespace squall::dynamics
