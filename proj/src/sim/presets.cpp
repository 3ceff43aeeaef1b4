#include "sim/presets.hpp"

namespace squall::sim::presets {

namespace {

ScenarioConfig base() {
  ScenarioConfig c;
  c.sensors = estimation::SensorNoise::mocap();
  c.estimator = EstimatorKind::kEkf;
  c.estimator_rate_hz = 100.0;
  c.controller = ControllerKind::kPid;
  c.controller_rate_hz = 100.0;
  c.compensation = true;
  return c;
}

}  // namespace

ScenarioConfig hover() {
  ScenarioConfig c = base();
  c.name = "hover";
  c.duration = 5.0;
  c.start_position = {0.0, 0.0, 1.0};
  c.path.waypoints = {{0.0, 0.0, 1.0}, {0.01, 0.0, 1.0}};
  c.path.v_ref = 0.0;
  return c;
}

ScenarioConfig step_response() {
  ScenarioConfig c = hover();
  c.name = "step_response";
  c.duration = 8.0;
  c.compensation = false;  // pure estimation experiment
  WeightDropEvent w;
  w.t_on = 1.0;
  w.t_off = 1e9;
  w.mass = 0.1;
  w.lever_arm = {0.08, -0.08, -0.05};
  c.weight_drop = w;
  return c;
}

ScenarioConfig gps_degraded() {
  ScenarioConfig c = step_response();
  c.name = "gps_degraded";
  c.sensors = estimation::SensorNoise::gps();
  return c;
}

ScenarioConfig ground_effect() {
  ScenarioConfig c = base();
  c.name = "ground_effect";
  c.duration = 13.0;
  c.start_position = {-0.8, 0.0, 0.68};
  c.path.waypoints = {{-0.8, 0.0, 0.68}, {2.0, 0.0, 0.68}};
  c.path.v_ref = 0.3;
  GroundEffectZone z;
  z.z_surface = 0.6;
  z.x_min = 0.3;
  z.x_max = 1.5;
  z.y_min = -0.5;
  z.y_max = 0.5;
  z.rotor_radius = 0.1;
  z.edge_ramp = 0.2;
  c.ground_effects.push_back(z);
  return c;
}

ScenarioConfig gust(double wind_speed) {
  ScenarioConfig c = base();
  c.name = "gust_" + std::to_string(static_cast<int>(wind_speed));
  c.duration = 8.0;
  c.start_position = {0.0, 0.0, 2.2};
  c.path.waypoints = {{0.0, 0.0, 2.2}, {0.0, 0.0, 0.3}};
  c.path.v_ref = 0.5;
  WindGustField w;
  w.box_min = {-1.0, -1.0, 0.9};
  w.box_max = {1.0, 1.0, 1.5};
  w.w = {wind_speed, 0.0, 0.0};
  w.edge_smoothing = 0.15;
  w.drag_coeff = 0.02;
  c.winds.push_back(w);
  return c;
}

std::vector<std::pair<std::string, ScenarioConfig>> all() {
  return {{"hover", hover()},
          {"step_response", step_response()},
          {"gps_degraded", gps_degraded()},
          {"ground_effect", ground_effect()},
          {"gust_3", gust(3.0)},
          {"gust_10", gust(10.0)},
          {"gust_12", gust(12.0)}};
}

}  // namespace squall::sim::presets
