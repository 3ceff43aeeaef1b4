#pragma once

#include <vector>

#include "control/attitude_map.hpp"
#include "control/qp.hpp"
#include "guidance/path.hpp"

namespace squall::control {

struct MpcStats {
  int qp_iterations = 0;
  bool suboptimal = false;
  double kkt_residual = 0.0;   // QP KKT residual at the applied step
  double defect_inf = 0.0;     // shooting defect before the step
  double step_inf = 0.0;       // applied primal step size
  double max_slack = 0.0;
  int active_soft_rows = 0;
};

// Real-time-iteration nonlinear MPC: one Gauss-Newton SQP iteration per call
// (transcribe + condensed QP + first-input extraction) on a shift-initialized
// warm start.
class MpcController {
 public:
  MpcController(const MpcConfig& cfg, const ModelParams& model);

  // x_now: [p v phi theta psi]. References are held constant across the
  // horizon. f_ext_hat is zero when compensation is off.
  Expected<AttitudeThrustCmd> step(const la::Vec& x_now,
                                   const guidance::GuidanceOutput& ref,
                                   double yaw_ref, const Vec3& f_ext_hat,
                                   MpcStats* stats = nullptr);

  void reset();
  const MpcConfig& config() const { return cfg_; }
  const std::vector<la::Vec>& horizon_states() const { return X_; }
  const std::vector<la::Vec>& horizon_inputs() const { return U_; }

 private:
  void cold_start(const la::Vec& x_ref_like);
  void clamp_inputs();

  MpcConfig cfg_;
  ModelParams model_;
  bool warm_ = false;
  std::vector<la::Vec> X_, U_;
};

// Builds the state-reference vector for a guidance output.
la::Vec mpc_reference(const guidance::GuidanceOutput& ref, double yaw_ref);

// Path-aligned cross-error axes for the soft constraint: two unit vectors
// orthogonal to the tangent (world x/y for vertical tangents).
void cross_error_axes(const Vec3& tangent, Vec3& n1, Vec3& n2);

}  // namespace squall::control
