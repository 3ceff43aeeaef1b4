#include "guidance/path.hpp"

#include <algorithm>
#include <cmath>

namespace squall::guidance {

bool ReferencePath::valid() const {
  if (waypoints.size() < 2) return false;
  for (size_t i = 1; i < waypoints.size(); ++i)
    if ((waypoints[i] - waypoints[i - 1]).norm() < 1e-9) return false;
  return v_ref >= 0.0;
}

double ReferencePath::length() const {
  double s = 0.0;
  for (size_t i = 1; i < waypoints.size(); ++i)
    s += (waypoints[i] - waypoints[i - 1]).norm();
  return s;
}

Vec3 ReferencePath::point_at(double s) const {
  s = std::clamp(s, 0.0, length());
  for (size_t i = 1; i < waypoints.size(); ++i) {
    const double seg = (waypoints[i] - waypoints[i - 1]).norm();
    if (s <= seg || i + 1 == waypoints.size()) {
      const double t = std::clamp(s / seg, 0.0, 1.0);
      return waypoints[i - 1] + (waypoints[i] - waypoints[i - 1]) * t;
    }
    s -= seg;
  }
  return waypoints.back();
}

Vec3 ReferencePath::tangent_at(double s) const {
  s = std::clamp(s, 0.0, length());
  for (size_t i = 1; i < waypoints.size(); ++i) {
    const double seg = (waypoints[i] - waypoints[i - 1]).norm();
    if (s <= seg || i + 1 == waypoints.size())
      return (waypoints[i] - waypoints[i - 1]).normalized();
    s -= seg;
  }
  return (waypoints.back() - waypoints[waypoints.size() - 2]).normalized();
}

GuidanceOutput closest_point_windowed(const ReferencePath& path, const Vec3& p,
                                      double s_lo, double s_hi) {
  const double total = path.length();
  s_lo = std::clamp(s_lo, 0.0, total);
  s_hi = std::clamp(s_hi, 0.0, total);

  GuidanceOutput best;
  double best_d2 = 1e300;
  double seg_start = 0.0;

  for (size_t i = 1; i < path.waypoints.size(); ++i) {
    const Vec3& a = path.waypoints[i - 1];
    const Vec3& b = path.waypoints[i];
    const Vec3 ab = b - a;
    const double seg_len = ab.norm();
    const double seg_end = seg_start + seg_len;

    // Portion of this segment inside the window.
    const double lo = std::max(s_lo, seg_start);
    const double hi = std::min(s_hi, seg_end);
    if (lo <= hi) {
      double t = ab.dot(p - a) / (seg_len * seg_len);  // unclamped projection
      double s = seg_start + t * seg_len;
      s = std::clamp(s, lo, hi);
      const Vec3 c = a + ab * ((s - seg_start) / seg_len);
      const double d2 = (p - c).squaredNorm();
      // Strict improvement keeps ties at the smallest arc length.
      if (d2 < best_d2 - 1e-15 || (std::abs(d2 - best_d2) <= 1e-15 && s < best.s)) {
        best_d2 = d2;
        best.p_ref = c;
        best.s = s;
        best.v_ref_vec = ab.normalized() * path.v_ref;
      }
    }
    seg_start = seg_end;
  }

  best.at_end = best.s >= total - 1e-12;
  if (best.at_end) {
    best.p_ref = path.waypoints.back();
    best.v_ref_vec = {};
  }
  return best;
}

GuidanceOutput closest_point(const ReferencePath& path, const Vec3& p) {
  return closest_point_windowed(path, p, 0.0, path.length());
}

GuidanceOutput PathFollower::step(const Vec3& p) {
  GuidanceOutput out;
  if (!started_) {
    out = closest_point(path_, p);
    started_ = true;
  } else {
    out = closest_point_windowed(path_, p, s_prev_ - 0.5, s_prev_ + 2.0);
  }
  s_prev_ = out.s;
  return out;
}

}  // namespace squall::guidance
