#pragma once

#include <random>

#include "dynamics/vehicle.hpp"
#include "estimation/noise.hpp"
#include "estimation/types.hpp"

namespace squall::sim {

// Corrupts the truth state with the preset's Gaussian noise. Attitude noise
// is drawn as a rotation vector and applied multiplicatively, so the Euler
// and quaternion forms of one measurement come from the same draw.
class SensorModel {
 public:
  explicit SensorModel(const estimation::SensorNoise& noise) : noise_(noise) {}

  struct Sample {
    estimation::Measurement euler;
    estimation::MeasurementQ quat;
    bool euler_ok = true;  // false near gimbal lock (quat form still valid)
  };

  Sample measure(const dynamics::RigidBodyState& truth, std::mt19937_64& rng);

  const estimation::SensorNoise& noise() const { return noise_; }

 private:
  estimation::SensorNoise noise_;
};

}  // namespace squall::sim
