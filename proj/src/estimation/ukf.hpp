#pragma once

#include <vector>

#include "dynamics/vehicle.hpp"
#include "estimation/noise.hpp"
#include "estimation/types.hpp"
#include "support/expected.hpp"

namespace squall::estimation {

// Quaternion-attitude disturbance-wrench UKF. The mean attitude is a unit
// quaternion; rotational uncertainty goes through the unscented transform as
// a multiplicative MRP error. The error state uses 4*MRP components, which
// equal a rotation vector to first order, so the attitude blocks of Q and R
// carry the same radian units as the EKF's Euler representation.
struct UkfMean {
  Vec3 p;
  Vec3 v;
  Quat q;
  Vec3 omega;
  Vec3 f_ext;
  Vec3 eta_ext;
};

struct UkfState {
  UkfMean mean;
  la::Mat cov;  // 18x18 error-state covariance
};

class Ukf {
 public:
  static constexpr int kNumSigma = 2 * kStateDim + 1;

  Ukf(const dynamics::VehicleParams& params, const NoiseConfig& noise);

  UkfState init(const MeasurementQ& z0) const;

  Expected<UkfState> predict(const UkfState& s, const FilterInput& u,
                             double dt);
  Expected<UkfState> update(const UkfState& s, const MeasurementQ& z);

  // 2n+1 weighted sigma points; attitude columns applied multiplicatively.
  Expected<std::vector<UkfMean>> sigma_points(const UkfMean& mean,
                                              const la::Mat& cov);
  const la::Vec& weights_mean() const { return wm_; }
  const la::Vec& weights_cov() const { return wc_; }

  // Discrete sigma-point dynamics (same forward-Euler translation step as the
  // EKF; exact-rotation quaternion step for attitude).
  UkfMean propagate(const UkfMean& x, const FilterInput& u, double dt) const;

 private:
  Expected<bool> fill_sigma(const UkfMean& mean, const la::Mat& cov);

  dynamics::VehicleParams params_;
  NoiseConfig noise_;
  geom::Mat3 J_, Jinv_;
  double lambda_ = 0.0;
  la::Vec wm_, wc_;

  // workspaces
  std::vector<UkfMean> sig_;
  la::Mat Sfac_, Xres_, Zres_, ZresW_, S_, Pxz_, K_, KS_, KSK_;
};

WrenchEstimate wrench_from_filter(const UkfState& s);

}  // namespace squall::estimation
