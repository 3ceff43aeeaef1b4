#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "control/mpc_model.hpp"
#include "control/pid.hpp"
#include "dynamics/vehicle.hpp"
#include "estimation/noise.hpp"
#include "guidance/path.hpp"
#include "sim/attitude_loop.hpp"
#include "sim/disturbance.hpp"

namespace squall::sim {

enum class ControllerKind { kPid, kMpc, kMpcSlack };
enum class EstimatorKind { kEkf, kUkf, kNone };

ControllerKind controller_from_string(const std::string& s);
EstimatorKind estimator_from_string(const std::string& s);
std::string to_string(ControllerKind c);
std::string to_string(EstimatorKind e);

// Declarative experiment description; everything a run needs, serializable to
// the JSON scenario schema (cli module).
struct ScenarioConfig {
  std::string name = "scenario";
  double duration = 8.0;      // s
  std::uint64_t seed = 1;
  double truth_dt = 1e-3;     // s

  dynamics::VehicleParams vehicle;
  estimation::SensorNoise sensors;
  estimation::ProcessIntensities process;
  double ukf_alpha = 0.1, ukf_beta = 2.0, ukf_kappa = 0.0;

  EstimatorKind estimator = EstimatorKind::kEkf;
  double estimator_rate_hz = 100.0;

  ControllerKind controller = ControllerKind::kPid;
  double controller_rate_hz = 100.0;
  bool compensation = true;
  control::PidConfig pid;
  control::MpcConfig mpc;
  InnerLoopGains inner_loop;

  guidance::ReferencePath path;
  geom::Vec3 start_position;
  double start_yaw = 0.0;

  std::vector<WindGustField> winds;
  std::vector<GroundEffectZone> ground_effects;
  std::optional<WeightDropEvent> weight_drop;

  double battery_v0 = 11.1;   // V
  double battery_sag = 0.0;   // V/s

  // Validation error text, or nullopt when the config is usable.
  std::optional<std::string> validate() const;
};

}  // namespace squall::sim
