#pragma once

#include "control/ocp.hpp"
#include "support/expected.hpp"

namespace squall::control {

// Dense primal active-set QP solver for the condensed subproblem:
//   min 1/2 z^T H z + g^T z   s.t.  lb <= z <= ub,  Ain z <= bin
// H must be positive definite (Gauss-Newton Hessian + positive input cost).
// The Hessian is factorized once; working-set changes maintain a Schur
// complement incrementally. Ties break to the lowest constraint index, which
// makes the solve deterministic.
struct QpSolution {
  la::Vec z;
  int iterations = 0;
  bool suboptimal = false;  // iteration cap hit; best iterate returned
  double kkt_stationarity = 0.0;
  double kkt_feasibility = 0.0;
  double kkt_complementarity = 0.0;

  double kkt_residual() const {
    return std::max({kkt_stationarity, kkt_feasibility, kkt_complementarity});
  }
};

// z0 must be feasible; lift slack variables before calling (the MPC wrapper
// does). Infeasible hard constraints at z0 produce an error.
Expected<QpSolution> solve_qp(const QpSubproblem& qp, const la::Vec& z0,
                              int max_iter);

}  // namespace squall::control
