#pragma once

#include "sim/scenario.hpp"
#include "sim/trace.hpp"

namespace squall::sim {

struct RunSummary {
  int truth_steps = 0;
  int estimator_cycles = 0;
  int controller_cycles = 0;
  int measurement_count = 0;
  int error_count = 0;
};

struct SimResult {
  SimTrace trace;
  RunSummary summary;
};

// Deterministic multi-rate closed-loop run: truth at 1/truth_dt (RK4), the
// estimator and controller on their own clocks, zero-order hold between
// cycles. Identical config + seed gives a bitwise-identical trace.
SimResult run_scenario(const ScenarioConfig& cfg);

}  // namespace squall::sim
