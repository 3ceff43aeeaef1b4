#pragma once

#include <string>

#include "estimation/types.hpp"

namespace squall::estimation {

// Per-channel measurement noise standard deviations plus rate. Two presets
// emulate indoor motion-capture and outdoor GPS state estimation; the values
// are synthetic presets (ordered gps >> mocap), not identified hardware.
struct SensorNoise {
  std::string preset = "mocap";
  double pos_std = 0.002;    // m
  double vel_std = 0.02;     // m/s
  double att_std = 0.0035;   // rad (~0.2 deg)
  double rate_std = 0.01;    // rad/s
  double rate_hz = 100.0;

  static SensorNoise mocap();
  static SensorNoise gps();
  static SensorNoise by_name(const std::string& name);
};

struct NoiseConfig {
  la::Mat Q;  // 18x18 process intensity (applied as Q*dt per step)
  la::Mat R;  // 12x12 measurement covariance
  double ukf_alpha = 0.1;
  double ukf_beta = 2.0;
  double ukf_kappa = 0.0;

  bool valid() const;
};

// Random-walk intensities for the disturbance wrench. Defaults are the
// in-repo calibration that lands the weight-drop force t90 at 1.1 s and the
// torque t90 at 1.0 s with the mocap preset at 100 Hz (see `squall calibrate`).
struct ProcessIntensities {
  double q_pos = 1e-6;
  double q_vel = 1e-4;
  double q_att = 1e-6;
  double q_rate = 1e-4;
  double v_f = 0.36;     // N^2/s, force random walk
  double v_eta = 0.0040; // (N*m)^2/s, torque random walk
};

NoiseConfig make_noise_config(const SensorNoise& sensor,
                              const ProcessIntensities& proc);

// Initial covariance: pose/twist blocks seeded from R, wrench blocks fixed.
la::Mat initial_covariance(const NoiseConfig& noise);

}  // namespace squall::estimation
