#include "control/mpc.hpp"

#include <algorithm>
#include <cmath>

namespace squall::control {

la::Vec mpc_reference(const guidance::GuidanceOutput& ref, double yaw_ref) {
  la::Vec x(kNx);
  x[0] = ref.p_ref.x;
  x[1] = ref.p_ref.y;
  x[2] = ref.p_ref.z;
  x[3] = ref.v_ref_vec.x;
  x[4] = ref.v_ref_vec.y;
  x[5] = ref.v_ref_vec.z;
  x[8] = yaw_ref;
  return x;
}

void cross_error_axes(const Vec3& tangent, Vec3& n1, Vec3& n2) {
  const Vec3 t = tangent.norm() > 1e-9 ? tangent.normalized() : Vec3{0, 0, -1};
  Vec3 c = t.cross({0.0, 0.0, 1.0});
  if (c.norm() < 1e-6) {
    n1 = {1.0, 0.0, 0.0};
    n2 = {0.0, 1.0, 0.0};
    return;
  }
  n1 = c.normalized();
  n2 = t.cross(n1).normalized();
}

MpcController::MpcController(const MpcConfig& cfg, const ModelParams& model)
    : cfg_(cfg), model_(model) {
  X_.assign(cfg_.horizon_n + 1, la::Vec(kNx));
  U_.assign(cfg_.horizon_n, la::Vec(kNu));
}

void MpcController::reset() { warm_ = false; }

void MpcController::cold_start(const la::Vec& x_ref_like) {
  const double t_hover =
      std::clamp(model_.mass * model_.gravity.norm(), cfg_.t_min, cfg_.t_max);
  for (auto& x : X_) x = x_ref_like;
  for (auto& u : U_) {
    u.setZero();
    u[0] = t_hover;
  }
}

void MpcController::clamp_inputs() {
  for (auto& u : U_) {
    u[0] = std::clamp(u[0], cfg_.t_min, cfg_.t_max);
    u[1] = std::clamp(u[1], -cfg_.phi_max, cfg_.phi_max);
    u[2] = std::clamp(u[2], -cfg_.theta_max, cfg_.theta_max);
  }
}

Expected<AttitudeThrustCmd> MpcController::step(
    const la::Vec& x_now, const guidance::GuidanceOutput& ref, double yaw_ref,
    const Vec3& f_ext_hat, MpcStats* stats) {
  const int N = cfg_.horizon_n;
  const la::Vec x_ref = mpc_reference(ref, yaw_ref);

  if (!warm_) {
    cold_start(x_ref);
    warm_ = true;
  } else {
    // Shift the previous solution by one interval.
    for (int k = 0; k + 1 <= N; ++k) X_[k] = X_[k + 1];
    for (int k = 0; k + 1 < N; ++k) U_[k] = U_[k + 1];
  }
  X_[0] = x_now;
  clamp_inputs();

  OcpProblem ocp;
  ocp.x0 = x_now;
  ocp.x_ref.assign(N + 1, x_ref);
  la::Vec u_ref(kNu);
  u_ref[0] = model_.mass * model_.gravity.norm();
  ocp.u_ref.assign(N, u_ref);
  ocp.f_ext_hat = f_ext_hat;
  ocp.model = model_;
  ocp.cfg = cfg_;
  if (cfg_.soft_constraints) {
    const Vec3 tangent = ref.at_end ? Vec3{0, 0, -1} : ref.v_ref_vec;
    cross_error_axes(tangent, ocp.cross_n1, ocp.cross_n2);
  }

  QpSubproblem qp = transcribe(ocp, X_, U_);

  // Feasible start: du = 0, slack lifted to cover current violations.
  la::Vec z0(qp.num_vars());
  if (qp.n_slack > 0) {
    for (int r = 0; r < qp.bin.size(); ++r) {
      // Row r couples slack (N*kNu + stage); recover the stage from the -1.
      for (int k = 0; k < qp.n_slack; ++k) {
        if (qp.Ain(r, N * kNu + k) == -1.0) {
          const double viol = -qp.bin[r];  // a.z0 - b with du = 0, eps = 0
          if (viol > z0[N * kNu + k]) z0[N * kNu + k] = viol;
          break;
        }
      }
    }
    // The lift changes a.z0 because eps has coefficient -1 in its rows only.
  }

  auto qsol = solve_qp(qp, z0, cfg_.qp_max_iter);
  if (!qsol) return qsol.error();

  double defect_inf = 0.0;
  for (const auto& d : qp.d) defect_inf = std::max(defect_inf, d.inf_norm());

  // Apply the full Gauss-Newton step: U += du, X += dx.
  la::Vec dx = qp.c[0];
  for (int k = 0; k < N; ++k) {
    for (int j = 0; j < kNu; ++j) U_[k][j] += qsol->z[k * kNu + j];
    la::Vec dxn(kNx);
    la::mul_vec_into(dxn, qp.A[k], dx);
    for (int i = 0; i < kNx; ++i)
      for (int j = 0; j < kNu; ++j) dxn[i] += qp.B[k](i, j) * qsol->z[k * kNu + j];
    dxn += qp.d[k];
    for (int i = 0; i < kNx; ++i) X_[k + 1][i] += dxn[i];
    dx = dxn;
  }
  clamp_inputs();

  if (stats) {
    stats->qp_iterations = qsol->iterations;
    stats->suboptimal = qsol->suboptimal;
    stats->kkt_residual = qsol->kkt_residual();
    stats->defect_inf = defect_inf;
    stats->step_inf = qsol->z.inf_norm();
    stats->max_slack = 0.0;
    stats->active_soft_rows = 0;
    for (int k = 0; k < qp.n_slack; ++k) {
      const double e = qsol->z[N * kNu + k];
      stats->max_slack = std::max(stats->max_slack, e);
      if (e > 1e-8) ++stats->active_soft_rows;
    }
  }

  AttitudeThrustCmd cmd;
  cmd.thrust = U_[0][0];
  cmd.q_ref = geom::quat_from_euler({U_[0][1], U_[0][2], yaw_ref});
  return cmd;
}

}  // namespace squall::control
