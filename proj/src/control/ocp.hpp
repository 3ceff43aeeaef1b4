#pragma once

#include <vector>

#include "control/mpc_model.hpp"

namespace squall::control {

// Multiple-shooting OCP data around a nominal trajectory (X, U). References
// are held constant across the horizon (closest path point + tangent speed).
struct OcpProblem {
  la::Vec x0;                    // 9, current state estimate
  std::vector<la::Vec> x_ref;    // N+1 stage references
  std::vector<la::Vec> u_ref;    // N input references
  Vec3 f_ext_hat;                // constant over the horizon
  Vec3 cross_n1, cross_n2;       // path-aligned cross-error axes (soft mode)
  ModelParams model;
  MpcConfig cfg;
};

// Condensed Gauss-Newton quadratic subproblem in z = [du_0..du_{N-1} | eps_*]:
//   min 1/2 z^T H z + g^T z   s.t.  lb <= z <= ub,  Ain z <= bin
// plus the shooting data needed to recover the state correction.
struct QpSubproblem {
  la::Mat H;
  la::Vec g;
  la::Vec lb, ub;
  la::Mat Ain;
  la::Vec bin;
  int n_stages = 0;
  int n_slack = 0;  // one eps per stage when soft constraints are on

  std::vector<la::Mat> A, B;   // stage sensitivities
  std::vector<la::Vec> d;      // defects F(X_k,U_k) - X_{k+1}
  std::vector<la::Vec> c;      // free response of dx (c_0 = x0 - X_0)

  int num_vars() const { return n_stages * kNu + n_slack; }
};

// Linearizes the shooting problem around (X, U) and condenses it.
QpSubproblem transcribe(const OcpProblem& ocp, const std::vector<la::Vec>& X,
                        const std::vector<la::Vec>& U);

}  // namespace squall::control
