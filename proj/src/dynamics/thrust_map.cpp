#include <algorithm>
#include <cmath>

#include "dynamics/vehicle.hpp"

namespace squall::dynamics {

namespace {
double poly(double u, const ThrustMapCoeffs& c) {
  return (c.c2 * u + c.c1) * u + c.c0;
}
double vscale(double v, const ThrustMapCoeffs& c) { return c.a * v + c.b; }
}  // namespace

bool ThrustMapCoeffs::valid() const {
  if (!(v_min < v_max)) return false;
  for (double v : {v_min, v_max}) {
    if (vscale(v, *this) <= 0.0) return false;
    double prev = vscale(v, *this) * poly(0.0, *this);
    for (int i = 1; i <= 20; ++i) {
      const double f = vscale(v, *this) * poly(i / 20.0, *this);
      if (f <= prev) return false;
      prev = f;
    }
  }
  return true;
}

bool VehicleParams::valid() const {
  if (!(mass > 0.0)) return false;
  if (!(f_max > f_min) || f_min < 0.0) return false;
  // inertia symmetric positive definite
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(inertia(i, j) - inertia(j, i)) > 1e-12) return false;
  const double a = inertia(0, 0);
  const double d2 = a * inertia(1, 1) - inertia(0, 1) * inertia(1, 0);
  const double d3 = a * (inertia(1, 1) * inertia(2, 2) - inertia(1, 2) * inertia(2, 1)) -
                    inertia(0, 1) * (inertia(1, 0) * inertia(2, 2) - inertia(1, 2) * inertia(2, 0)) +
                    inertia(0, 2) * (inertia(1, 0) * inertia(2, 1) - inertia(1, 1) * inertia(2, 0));
  if (!(a > 0.0 && d2 > 0.0 && d3 > 0.0)) return false;
  return thrust_map.valid();
}

std::optional<double> esc_to_thrust(double u, double v_batt,
                                    const ThrustMapCoeffs& coeffs, double f_min,
                                    double f_max) {
  if (v_batt < coeffs.v_min || v_batt > coeffs.v_max) return std::nullopt;
  u = std::clamp(u, 0.0, 1.0);
  const double f = vscale(v_batt, coeffs) * poly(u, coeffs);
  return std::clamp(f, f_min, f_max);
}

std::optional<EscResult> thrust_to_esc(double f, double v_batt,
                                       const ThrustMapCoeffs& coeffs) {
  if (v_batt < coeffs.v_min || v_batt > coeffs.v_max) return std::nullopt;
  const double s = vscale(v_batt, coeffs);
  const double f_lo = s * poly(0.0, coeffs);
  const double f_hi = s * poly(1.0, coeffs);

  EscResult out;
  if (f <= f_lo) {
    out.u = 0.0;
    out.saturated = f < f_lo;
    return out;
  }
  if (f >= f_hi) {
    out.u = 1.0;
    out.saturated = f > f_hi;
    return out;
  }

  const double c = coeffs.c0 - f / s;
  if (std::abs(coeffs.c2) < 1e-12) {
    out.u = -c / coeffs.c1;
  } else {
    // Larger root of c2 u^2 + c1 u + c = 0 lies on the increasing branch.
    const double disc = coeffs.c1 * coeffs.c1 - 4.0 * coeffs.c2 * c;
    out.u = (-coeffs.c1 + std::sqrt(std::max(disc, 0.0))) / (2.0 * coeffs.c2);
  }
  out.u = std::clamp(out.u, 0.0, 1.0);
  return out;
}

}  // namespace squall::dynamics
