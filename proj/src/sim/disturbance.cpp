#include "sim/disturbance.hpp"

#include <algorithm>
#include <cmath>

namespace squall::sim {

namespace {

// 1 inside [lo+s, hi-s], linear ramp to 0 at the box faces.
double ramp1d(double x, double lo, double hi, double s) {
  if (x <= lo || x >= hi) return 0.0;
  if (s <= 0.0) return 1.0;
  return std::min({1.0, (x - lo) / s, (hi - x) / s});
}

}  // namespace

bool WindGustField::valid() const {
  for (int i = 0; i < 3; ++i)
    if (!(box_min[i] < box_max[i])) return false;
  double half = 1e300;
  for (int i = 0; i < 3; ++i)
    half = std::min(half, 0.5 * (box_max[i] - box_min[i]));
  return drag_coeff >= 0.0 && edge_smoothing >= 0.0 && edge_smoothing < half;
}

Vec3 wind_force(const Vec3& p, const Vec3& v, const WindGustField& field) {
  const double g = ramp1d(p.x, field.box_min.x, field.box_max.x, field.edge_smoothing) *
                   ramp1d(p.y, field.box_min.y, field.box_max.y, field.edge_smoothing) *
                   ramp1d(p.z, field.box_min.z, field.box_max.z, field.edge_smoothing);
  if (g <= 0.0) return {};
  const Vec3 w_local = field.w * g;
  const Vec3 rel = w_local - v;
  return rel * (field.drag_coeff * rel.norm());
}

bool GroundEffectZone::valid() const {
  return x_min < x_max && y_min < y_max && rotor_radius > 0.0 && edge_ramp >= 0.0;
}

double ground_effect_force(const Vec3& p, double thrust,
                           const GroundEffectZone& zone) {
  const double R = zone.rotor_radius;
  double h = p.z - zone.z_surface;
  if (h <= 0.0 || h > 5.0 * R || thrust <= 0.0) return 0.0;

  const double fx = ramp1d(p.x, zone.x_min, zone.x_max, zone.edge_ramp);
  const double fy = ramp1d(p.y, zone.y_min, zone.y_max, zone.edge_ramp);
  if (fx <= 0.0 || fy <= 0.0) return 0.0;

  h = std::max(h, 1.1 * R / 4.0);
  const double r = R / (4.0 * h);
  double gain = 1.0 / (1.0 - r * r) - 1.0;

  // Fade the (already tiny) tail to zero so the force is continuous at 5R.
  if (h > 4.5 * R) gain *= (5.0 * R - h) / (0.5 * R);
  return thrust * gain * fx * fy;
}

}  // namespace squall::sim
