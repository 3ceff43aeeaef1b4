#include "sim/runner.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "control/mpc.hpp"
#include "estimation/ekf.hpp"
#include "estimation/ukf.hpp"
#include "sim/sensors.hpp"

namespace squall::sim {

namespace {

using Clock = std::chrono::steady_clock;

double wrap_pi(double a) {
  while (a > M_PI) a -= 2.0 * M_PI;
  while (a <= -M_PI) a += 2.0 * M_PI;
  return a;
}

double us_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::micro>(Clock::now() - t0).count();
}

struct Schedule {
  double period;
  double next = 0.0;
  int count = 0;

  explicit Schedule(double rate_hz) : period(1.0 / rate_hz) {}
  bool due(double t) {
    if (t >= next - 1e-9) {
      next += period;
      ++count;
      return true;
    }
    return false;
  }
};

}  // namespace

ControllerKind controller_from_string(const std::string& s) {
  if (s == "pid") return ControllerKind::kPid;
  if (s == "mpc") return ControllerKind::kMpc;
  if (s == "mpc-slack" || s == "mpc_slack") return ControllerKind::kMpcSlack;
  throw std::runtime_error("unknown controller: " + s);
}

EstimatorKind estimator_from_string(const std::string& s) {
  if (s == "ekf") return EstimatorKind::kEkf;
  if (s == "ukf") return EstimatorKind::kUkf;
  if (s == "none") return EstimatorKind::kNone;
  throw std::runtime_error("unknown estimator: " + s);
}

std::string to_string(ControllerKind c) {
  switch (c) {
    case ControllerKind::kPid: return "pid";
    case ControllerKind::kMpc: return "mpc";
    case ControllerKind::kMpcSlack: return "mpc-slack";
  }
  return "?";
}

std::string to_string(EstimatorKind e) {
  switch (e) {
    case EstimatorKind::kEkf: return "ekf";
    case EstimatorKind::kUkf: return "ukf";
    case EstimatorKind::kNone: return "none";
  }
  return "?";
}

std::optional<std::string> ScenarioConfig::validate() const {
  if (!(duration > 0.0)) return "duration must be positive";
  if (!(truth_dt > 0.0) || truth_dt > 0.01) return "truth_dt out of (0, 0.01]";
  if (!vehicle.valid()) return "vehicle parameters invalid";
  if (!path.valid()) return "path invalid (needs >= 2 distinct waypoints)";
  if (!mpc.valid()) return "mpc config invalid";
  const double truth_rate = 1.0 / truth_dt;
  if (sensors.rate_hz <= 0.0 ||
      std::abs(std::remainder(truth_rate, sensors.rate_hz)) > 1e-6)
    return "sensor rate must divide the truth rate";
  if (estimator_rate_hz <= 0.0 || controller_rate_hz <= 0.0)
    return "rates must be positive";
  if (estimator_rate_hz > truth_rate || controller_rate_hz > truth_rate)
    return "estimator/controller rates cannot exceed the truth rate";
  for (const auto& wf : winds)
    if (!wf.valid()) return "wind field invalid";
  for (const auto& gz : ground_effects)
    if (!gz.valid()) return "ground-effect zone invalid";
  if (weight_drop && !(weight_drop->t_on < duration))
    return "weight_drop.t_on outside scenario duration";
  return std::nullopt;
}

SimResult run_scenario(const ScenarioConfig& cfg) {
  if (const auto err = cfg.validate())
    throw std::runtime_error("scenario '" + cfg.name + "': " + *err);

  std::mt19937_64 rng(cfg.seed);
  SensorModel sensor(cfg.sensors);

  dynamics::RigidBodyState truth;
  truth.p = cfg.start_position;
  truth.q = geom::quat_from_euler({0.0, 0.0, cfg.start_yaw});

  // Filters (only the selected one is used).
  estimation::NoiseConfig noise =
      estimation::make_noise_config(cfg.sensors, cfg.process);
  noise.ukf_alpha = cfg.ukf_alpha;
  noise.ukf_beta = cfg.ukf_beta;
  noise.ukf_kappa = cfg.ukf_kappa;
  estimation::Ekf ekf(cfg.vehicle, noise);
  estimation::Ukf ukf(cfg.vehicle, noise);
  estimation::EkfState ekf_state;
  estimation::UkfState ukf_state;
  bool filter_ready = false;
  estimation::WrenchEstimate wrench{};
  wrench.cov.resize(6, 6);

  control::ModelParams model{cfg.vehicle.mass, cfg.vehicle.gravity};
  control::MpcConfig mpc_cfg = cfg.mpc;
  mpc_cfg.soft_constraints = cfg.controller == ControllerKind::kMpcSlack;
  control::MpcController mpc(mpc_cfg, model);
  geom::Vec3 pid_integ;

  guidance::PathFollower follower(cfg.path);

  // Hover command until the first controller cycle.
  control::AttitudeThrustCmd cmd;
  cmd.thrust = cfg.vehicle.hover_thrust();
  cmd.q_ref = truth.q;
  geom::Vec3 cmd_att{0.0, 0.0, cfg.start_yaw};

  Schedule meas_sched(cfg.sensors.rate_hz);
  Schedule est_sched(cfg.estimator_rate_hz);
  Schedule ctrl_sched(cfg.controller_rate_hz);

  SensorModel::Sample latest_meas;
  bool have_meas = false;
  bool fresh_for_filter = false;

  std::array<double, 4> esc{0, 0, 0, 0};
  double applied_thrust = cfg.vehicle.hover_thrust();

  const int n_steps = static_cast<int>(std::llround(cfg.duration / cfg.truth_dt));
  SimResult out;
  out.trace.rows.reserve(n_steps);

  for (int step = 0; step < n_steps; ++step) {
    const double t = step * cfg.truth_dt;
    const double v_batt =
        std::clamp(cfg.battery_v0 - cfg.battery_sag * t,
                   cfg.vehicle.thrust_map.v_min, cfg.vehicle.thrust_map.v_max);
    TraceRow row;
    row.t = t;

    // True external wrench at this tick.
    geom::Vec3 f_ext, eta_ext;
    for (const auto& wf : cfg.winds) f_ext += wind_force(truth.p, truth.v, wf);
    for (const auto& gz : cfg.ground_effects)
      f_ext.z += ground_effect_force(truth.p, applied_thrust, gz);
    if (cfg.weight_drop && cfg.weight_drop->active(t)) {
      const geom::Vec3 fw{0.0, 0.0, -cfg.weight_drop->mass * cfg.vehicle.gravity.norm()};
      f_ext += fw;
      eta_ext += cfg.weight_drop->lever_arm.cross(truth.q.rotate_inverse(fw));
    }

    // Measurement.
    if (meas_sched.due(t)) {
      latest_meas = sensor.measure(truth, rng);
      have_meas = true;
      fresh_for_filter = true;
      row.meas_fresh = 1;
      ++out.summary.measurement_count;
    }
    if (have_meas) {
      row.z_p = latest_meas.quat.p;
      row.z_v = latest_meas.quat.v;
      row.z_att = {latest_meas.euler.att.roll, latest_meas.euler.att.pitch,
                   latest_meas.euler.att.yaw};
      row.z_omega = latest_meas.quat.omega;
    }

    // Estimator cycle: predict + (if a fresh measurement arrived) update.
    if (cfg.estimator != EstimatorKind::kNone && est_sched.due(t)) {
      row.est_event = 1;
      const auto t0 = Clock::now();
      if (!filter_ready) {
        if (have_meas) {
          if (cfg.estimator == EstimatorKind::kEkf)
            ekf_state = ekf.init(latest_meas.euler);
          else
            ukf_state = ukf.init(latest_meas.quat);
          filter_ready = true;
          fresh_for_filter = false;
        }
      } else {
        // Input wrench reconstructed from the ESC commands via the maps.
        estimation::FilterInput u_hat;
        std::array<double, 4> f_hat;
        for (int i = 0; i < 4; ++i)
          f_hat[i] = esc_to_thrust(esc[i], v_batt, cfg.vehicle.thrust_map,
                                   cfg.vehicle.f_min, cfg.vehicle.f_max)
                         .value_or(0.0);
        const auto w_hat = dynamics::wrench_from_rotors(f_hat, cfg.vehicle);
        u_hat.thrust = w_hat.thrust;
        u_hat.torque = w_hat.torque;

        const double dt_est = est_sched.period;
        bool err = false;
        if (cfg.estimator == EstimatorKind::kEkf) {
          auto pred = ekf.predict(ekf_state, u_hat, dt_est);
          if (pred) {
            ekf_state = std::move(*pred);
            if (fresh_for_filter && latest_meas.euler_ok) {
              auto upd = ekf.update(ekf_state, latest_meas.euler);
              if (upd) ekf_state = std::move(*upd);
              else err = true;
              fresh_for_filter = false;
            }
          } else {
            err = true;
          }
          if (!err) wrench = estimation::wrench_from_filter(ekf_state);
        } else {
          auto pred = ukf.predict(ukf_state, u_hat, dt_est);
          if (pred) {
            ukf_state = std::move(*pred);
            if (fresh_for_filter) {
              auto upd = ukf.update(ukf_state, latest_meas.quat);
              if (upd) ukf_state = std::move(*upd);
              else err = true;
              fresh_for_filter = false;
            }
          } else {
            err = true;
          }
          if (!err) wrench = estimation::wrench_from_filter(ukf_state);
        }
        if (err) {
          row.error_flag |= 1;
          ++out.summary.error_count;
        }
      }
      row.est_us = us_since(t0);
    }

    // Controller cycle.
    if (have_meas && ctrl_sched.due(t)) {
      row.ctrl_event = 1;
      const geom::Vec3 f_comp = cfg.compensation ? wrench.f_ext : geom::Vec3{};
      const auto t0 = Clock::now();
      const auto ref = follower.step(latest_meas.quat.p);
      bool err = false;
      if (cfg.controller == ControllerKind::kPid) {
        const geom::Vec3 e_p = ref.p_ref - latest_meas.quat.p;
        const geom::Vec3 e_v = ref.v_ref_vec - latest_meas.quat.v;
        const auto pid = control::pid_step(e_p, e_v, pid_integ, f_comp, cfg.pid,
                                           cfg.vehicle.mass,
                                           ctrl_sched.period, cfg.compensation);
        pid_integ = pid.integ;
        const auto c = control::accel_to_attitude_thrust(
            pid.a_des, cfg.path.yaw_ref, cfg.vehicle.mass, cfg.vehicle.gravity,
            mpc_cfg.t_min, mpc_cfg.t_max);
        if (c) {
          cmd = *c;
          if (const auto e = geom::euler_from_quat(cmd.q_ref))
            cmd_att = {e->roll, e->pitch, e->yaw};
        } else {
          err = true;
        }
      } else {
        la::Vec x_now(control::kNx);
        x_now[0] = latest_meas.quat.p.x;
        x_now[1] = latest_meas.quat.p.y;
        x_now[2] = latest_meas.quat.p.z;
        x_now[3] = latest_meas.quat.v.x;
        x_now[4] = latest_meas.quat.v.y;
        x_now[5] = latest_meas.quat.v.z;
        x_now[6] = latest_meas.euler.att.roll;
        x_now[7] = latest_meas.euler.att.pitch;
        x_now[8] = latest_meas.euler.att.yaw;
        control::MpcStats stats;
        auto c = mpc.step(x_now, ref, cfg.path.yaw_ref, f_comp, &stats);
        if (c) {
          cmd = *c;
          cmd_att = {mpc.horizon_inputs()[0][1], mpc.horizon_inputs()[0][2],
                     cfg.path.yaw_ref};
          row.qp_iterations = stats.qp_iterations;
          row.kkt_residual = stats.kkt_residual;
          row.max_slack = stats.max_slack;
          if (stats.suboptimal) row.error_flag |= 4;
        } else {
          err = true;
        }
      }
      row.ctrl_us = us_since(t0);
      if (err) {
        row.error_flag |= 2;
        ++out.summary.error_count;  // keep last valid command
      }
    }

    // Inner attitude loop at the truth rate, then actuation through the maps.
    const auto wrench_cmd = inner_attitude_loop(truth, cmd, cfg.inner_loop);
    const auto mix = dynamics::mix_wrench(wrench_cmd, cfg.vehicle);
    row.saturated = mix.saturated ? 1 : 0;
    for (int i = 0; i < 4; ++i) {
      const auto e = dynamics::thrust_to_esc(mix.f[i], v_batt, cfg.vehicle.thrust_map);
      esc[i] = e ? e->u : 0.0;
    }
    const auto applied = dynamics::wrench_from_rotors(mix.f, cfg.vehicle);
    applied_thrust = applied.thrust;

    // Log, then integrate.
    row.p = truth.p;
    row.v = truth.v;
    row.q = truth.q;
    row.omega = truth.omega_b;
    row.f_ext_true = f_ext;
    row.eta_ext_true = eta_ext;
    row.f_hat = wrench.f_ext;
    row.eta_hat = wrench.eta_ext;
    if (filter_ready) {
      row.var_f = {wrench.cov(0, 0), wrench.cov(1, 1), wrench.cov(2, 2)};
      row.var_eta = {wrench.cov(3, 3), wrench.cov(4, 4), wrench.cov(5, 5)};
    }
    row.cmd_thrust = cmd.thrust;
    row.cmd_att = {cmd_att.x, cmd_att.y, wrap_pi(cmd_att.z)};
    for (int i = 0; i < 4; ++i) row.esc[i] = esc[i];
    out.trace.rows.push_back(row);

    const auto next = dynamics::integrate_rk4(truth, applied, f_ext, eta_ext,
                                              cfg.vehicle, cfg.truth_dt);
    if (!next)
      throw std::runtime_error("truth integration failed at t=" + std::to_string(t));
    truth = *next;
  }

  out.summary.truth_steps = n_steps;
  out.summary.estimator_cycles =
      cfg.estimator == EstimatorKind::kNone ? 0 : est_sched.count;
  out.summary.controller_cycles = ctrl_sched.count;
  return out;
}

}  // namespace squall::sim
