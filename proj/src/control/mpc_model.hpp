#pragma once

#include "geom/quat.hpp"
#include "la/mat.hpp"

namespace squall::control {

using geom::Vec3;

// Prediction-model state: [p(3) v(3) phi theta psi], input: [T phi_ref theta_ref].
inline constexpr int kNx = 9;
inline constexpr int kNu = 3;

struct MpcConfig {
  int horizon_n = 20;
  double dt = 0.1;  // horizon_n * dt = 2 s

  la::Vec q_x{20.0, 20.0, 40.0, 2.0, 2.0, 4.0, 1.0, 1.0, 1.0};  // diag of Q_x
  la::Vec r_u{0.5, 10.0, 10.0};                                  // diag of R_u
  la::Vec p_n{20.0, 20.0, 40.0, 2.0, 2.0, 4.0, 1.0, 1.0, 1.0};  // diag of P_N

  double t_min = 0.5;   // N
  double t_max = 13.0;  // N
  double phi_max = 0.6;   // rad
  double theta_max = 0.6; // rad

  // First-order inner-loop attitude model (identified; see `squall identify`).
  double k_phi = 1.0, tau_phi = 0.2;
  double k_theta = 1.0, tau_theta = 0.2;

  // Soft cross-error constraint |e_xy| <= e_max + eps.
  bool soft_constraints = false;
  double e_max = 0.05;        // m
  double slack_weight = 1e4;  // quadratic penalty on eps

  int qp_max_iter = 200;

  bool valid() const {
    if (horizon_n < 1 || !(dt > 0.0)) return false;
    if (!(t_min < t_max)) return false;
    if (!(phi_max > 0.0 && phi_max < M_PI / 2) ||
        !(theta_max > 0.0 && theta_max < M_PI / 2))
      return false;
    for (int i = 0; i < kNx; ++i)
      if (q_x[i] < 0.0 || p_n[i] < 0.0) return false;
    for (int i = 0; i < kNu; ++i)
      if (!(r_u[i] > 0.0)) return false;
    return tau_phi > 0.0 && tau_theta > 0.0;
  }
};

struct ModelParams {
  double mass = 0.7;
  Vec3 gravity{0.0, 0.0, -9.81};
};

// Continuous-time prediction model: first-order attitude response, constant
// disturbance force over the horizon, yaw held.
la::Vec mpc_model_derivative(const la::Vec& x, const la::Vec& u,
                             const Vec3& f_ext_hat, const ModelParams& mp,
                             const MpcConfig& cfg);

// Jacobians of the derivative.
void mpc_model_jacobians(const la::Vec& x, const la::Vec& u,
                         const ModelParams& mp, const MpcConfig& cfg,
                         la::Mat& fx, la::Mat& fu);

// One RK4 step of length dt with sensitivities dF/dx, dF/du propagated by the
// chain rule through the stages.
void rk4_step_with_sens(const la::Vec& x, const la::Vec& u,
                        const Vec3& f_ext_hat, const ModelParams& mp,
                        const MpcConfig& cfg, double dt, la::Vec& x_next,
                        la::Mat& A, la::Mat& B);

}  // namespace squall::control
