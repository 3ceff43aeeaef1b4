#include "estimation/noise.hpp"

#include <stdexcept>

namespace squall::estimation {

SensorNoise SensorNoise::mocap() { return SensorNoise{}; }

SensorNoise SensorNoise::gps() {
  SensorNoise s;
  s.preset = "gps";
  s.pos_std = 0.3;
  s.vel_std = 0.035;
  s.att_std = 0.0175;  // ~1 deg
  s.rate_std = 0.05;
  s.rate_hz = 50.0;
  return s;
}

SensorNoise SensorNoise::by_name(const std::string& name) {
  if (name == "mocap") return mocap();
  if (name == "gps") return gps();
  throw std::runtime_error("unknown sensor preset: " + name);
}

bool NoiseConfig::valid() const {
  if (Q.rows() != kStateDim || Q.cols() != kStateDim) return false;
  if (R.rows() != kMeasDim || R.cols() != kMeasDim) return false;
  if (!(ukf_alpha > 0.0 && ukf_alpha <= 1.0) || ukf_beta < 0.0) return false;
  la::Mat qs = Q, rs = R;
  qs.symmetrize();
  rs.symmetrize();
  if ((qs - Q).max_abs() > 1e-9 || (rs - R).max_abs() > 1e-9) return false;
  return la::sym_min_eigenvalue(Q) >= -1e-9 && la::sym_min_eigenvalue(R) >= -1e-9;
}

NoiseConfig make_noise_config(const SensorNoise& sensor,
                              const ProcessIntensities& proc) {
  NoiseConfig n;
  n.Q.resize(kStateDim, kStateDim);
  for (int i = 0; i < 3; ++i) {
    n.Q(kP + i, kP + i) = proc.q_pos;
    n.Q(kV + i, kV + i) = proc.q_vel;
    n.Q(kAtt + i, kAtt + i) = proc.q_att;
    n.Q(kOm + i, kOm + i) = proc.q_rate;
    n.Q(kF + i, kF + i) = proc.v_f;
    n.Q(kEta + i, kEta + i) = proc.v_eta;
  }
  n.R.resize(kMeasDim, kMeasDim);
  for (int i = 0; i < 3; ++i) {
    n.R(i, i) = sensor.pos_std * sensor.pos_std;
    n.R(3 + i, 3 + i) = sensor.vel_std * sensor.vel_std;
    n.R(6 + i, 6 + i) = sensor.att_std * sensor.att_std;
    n.R(9 + i, 9 + i) = sensor.rate_std * sensor.rate_std;
  }
  return n;
}

la::Mat initial_covariance(const NoiseConfig& noise) {
  la::Mat P(kStateDim, kStateDim);
  for (int i = 0; i < kMeasDim; ++i) P(i, i) = noise.R(i, i);
  for (int i = 0; i < 3; ++i) {
    P(kF + i, kF + i) = 1.0;    // N^2
    P(kEta + i, kEta + i) = 0.1;  // (N*m)^2
  }
  return P;
}

}  // namespace squall::estimation
