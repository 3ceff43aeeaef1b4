#pragma once

#include "dynamics/vehicle.hpp"
#include "estimation/noise.hpp"
#include "estimation/types.hpp"
#include "support/expected.hpp"

namespace squall::estimation {

// Euler-attitude disturbance-wrench EKF. Forward-Euler discrete dynamics with
// the external wrench modeled as a Gaussian random walk; analytic Jacobian
// (finite differences stay in the tests as the oracle).
struct EkfState {
  la::Vec mean;  // 18
  la::Mat cov;   // 18x18

  geom::EulerZyx att() const {
    return {mean[kAtt], mean[kAtt + 1], mean[kAtt + 2]};
  }
  Vec3 seg3(int at) const { return {mean[at], mean[at + 1], mean[at + 2]}; }
};

class Ekf {
 public:
  Ekf(const dynamics::VehicleParams& params, const NoiseConfig& noise);

  // Filter state seeded at a measurement with zero twist-rate/wrench mean.
  EkfState init(const Measurement& z0) const;

  Expected<EkfState> predict(const EkfState& s, const FilterInput& u,
                             double dt);
  Expected<EkfState> update(const EkfState& s, const Measurement& z);

  // Forward-Euler discrete step of the mean (public for the FD oracle).
  la::Vec discrete_step(const la::Vec& mean, const FilterInput& u,
                        double dt) const;
  // Analytic Jacobian of discrete_step w.r.t. the state.
  la::Mat discrete_jacobian(const la::Vec& mean, const FilterInput& u, double dt);

  const NoiseConfig& noise() const { return noise_; }

 private:
  void build_blocks(const la::Vec& mean, const FilterInput& u);
  // dst = A * src with the block-sparse continuous Jacobian A (rows f/eta zero).
  void apply_A(la::Mat& dst, const la::Mat& src) const;

  dynamics::VehicleParams params_;
  NoiseConfig noise_;
  geom::Mat3 J_, Jinv_;
  bool r_diagonal_ = false;

  // continuous Jacobian blocks, rebuilt each predict
  geom::Mat3 dvdatt_, dattdatt_, E_, domdom_;

  // workspaces
  la::Mat S1_, S1t_, S2_, K_, N_, NK_, KR_, KRK_, S_, PHt_;
};

WrenchEstimate wrench_from_filter(const EkfState& s);

}  // namespace squall::estimation
