#pragma once

#include "sim/scenario.hpp"

namespace squall::sim::presets {

// Desk-scale experiment definitions. These are the source of truth; the JSON
// files under scenarios/ are generated from them (`squall emit-scenarios`)
// and verified equal in the tests.

// Hover regulation, no disturbance.
ScenarioConfig hover();

// Weight attach/hold at a lever arm: the estimator step-response experiment.
ScenarioConfig step_response();

// step_response with the gps sensor preset.
ScenarioConfig gps_degraded();

// Slow horizontal pass 8 cm above a table surface, hover at the far end.
ScenarioConfig ground_effect();

// Vertical landing through a horizontal wind region (3/10/12 m/s equivalent).
ScenarioConfig gust(double wind_speed);

std::vector<std::pair<std::string, ScenarioConfig>> all();

}  // namespace squall::sim::presets
