#pragma once

#include <optional>
#include <vector>

#include "geom/vec3.hpp"

namespace squall::sim {

using geom::Vec3;

// Axis-aligned wind region with linear edge ramps and a lumped quadratic
// relative-velocity drag law: f = drag_coeff * |w_local - v| * (w_local - v).
struct WindGustField {
  Vec3 box_min{-1.0, -1.0, 0.9};
  Vec3 box_max{1.0, 1.0, 1.5};
  Vec3 w{10.0, 0.0, 0.0};       // m/s
  double edge_smoothing = 0.15;  // m
  double drag_coeff = 0.02;      // kg/m; 10 m/s on a hovering vehicle ~ 2 N

  bool valid() const;
};

Vec3 wind_force(const Vec3& p, const Vec3& v, const WindGustField& field);

// In-ground-effect thrust augmentation over a rectangular footprint:
//   df_z = T * (1 / (1 - (R/4h)^2) - 1),  h = height above the surface,
// h clamped at 1.1*R/4, faded out smoothly between 4.5R and 5R, zero outside
// the footprint (linear edge ramp).
struct GroundEffectZone {
  double z_surface = 0.6;  // m
  double x_min = 0.2, x_max = 1.6;
  double y_min = -0.5, y_max = 0.5;
  double rotor_radius = 0.1;  // m
  double edge_ramp = 0.2;     // m

  bool valid() const;
};

double ground_effect_force(const Vec3& p, double thrust,
                           const GroundEffectZone& zone);

// Weight attached to a body point during [t_on, t_off): a -m*g force step in
// world z plus the lever-arm torque in body frame.
struct WeightDropEvent {
  double t_on = 1.0;
  double t_off = 1e9;
  Vec3 lever_arm{0.08, -0.08, -0.05};  // body frame, m
  double mass = 0.1;                   // kg

  bool active(double t) const { return t >= t_on && t < t_off; }
};

}  // namespace squall::sim
