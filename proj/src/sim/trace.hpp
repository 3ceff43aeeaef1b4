#pragma once

#include <string>
#include <vector>

#include "geom/quat.hpp"

namespace squall::sim {

// One record per truth tick. Every reported metric is computed from these
// rows; the CSV round-trips them exactly (shortest-roundtrip formatting).
struct TraceRow {
  double t = 0.0;
  // truth
  geom::Vec3 p, v;
  geom::Quat q;
  geom::Vec3 omega;
  // true external wrench
  geom::Vec3 f_ext_true, eta_ext_true;
  // latest measurement (euler attitude), fresh flag set on arrival ticks
  int meas_fresh = 0;
  geom::Vec3 z_p, z_v, z_att, z_omega;
  // wrench estimate and marginal variances
  geom::Vec3 f_hat, eta_hat;
  geom::Vec3 var_f, var_eta;
  // controller command (reference euler angles + collective thrust)
  double cmd_thrust = 0.0;
  geom::Vec3 cmd_att;
  // actuation
  double esc[4] = {0, 0, 0, 0};
  int saturated = 0;
  // solver diagnostics (controller ticks only)
  int ctrl_event = 0, est_event = 0;
  int qp_iterations = 0;
  double kkt_residual = 0.0;
  double max_slack = 0.0;
  int error_flag = 0;
  // wall-clock iteration times, microseconds (serialized to the timing
  // sidecar, excluded from the deterministic trace file)
  double est_us = 0.0;
  double ctrl_us = 0.0;
};

struct SimTrace {
  std::vector<TraceRow> rows;

  void write_csv(const std::string& path) const;     // deterministic columns
  void write_timing_csv(const std::string& path) const;
  static SimTrace read_csv(const std::string& path);

  static const char* csv_header();
};

}  // namespace squall::sim
