#include <cmath>

#include "control/ocp.hpp"

namespace squall::control {

namespace {
constexpr double kInf = 1e30;
}

QpSubproblem transcribe(const OcpProblem& ocp, const std::vector<la::Vec>& X,
                        const std::vector<la::Vec>& U) {
  const MpcConfig& cfg = ocp.cfg;
  const int N = cfg.horizon_n;
  const int nu = kNu;
  const int nz_u = N * nu;
  const int n_slack = cfg.soft_constraints ? N : 0;
  const int nz = nz_u + n_slack;

  QpSubproblem qp;
  qp.n_stages = N;
  qp.n_slack = n_slack;
  qp.A.resize(N);
  qp.B.resize(N);
  qp.d.resize(N);
  qp.c.resize(N + 1);
  qp.H.resize(nz, nz);
  qp.g.resize(nz);
  qp.lb.resize(nz);
  qp.ub.resize(nz);

  // Stage sensitivities and defects.
  la::Vec x_next(kNx);
  for (int k = 0; k < N; ++k) {
    rk4_step_with_sens(X[k], U[k], ocp.f_ext_hat, ocp.model, cfg, cfg.dt,
                       x_next, qp.A[k], qp.B[k]);
    qp.d[k] = x_next - X[k + 1];
  }

  // Free response c_{k+1} = A_k c_k + d_k, c_0 = x0 - X_0.
  qp.c[0] = ocp.x0 - X[0];
  for (int k = 0; k < N; ++k) {
    qp.c[k + 1].resize(kNx);
    la::mul_vec_into(qp.c[k + 1], qp.A[k], qp.c[k]);
    qp.c[k + 1] += qp.d[k];
  }

  // G_k maps stacked du to dx_k; built forward as G_{k+1} = A_k G_k + [.. B_k ..].
  // Only the first k block-columns of G_k are nonzero.
  std::vector<la::Mat> G(N + 1);
  G[0].resize(kNx, nz_u);
  la::Mat GA(kNx, nz_u);
  for (int k = 0; k < N; ++k) {
    GA.resize(kNx, nz_u);
    if (k > 0)
      kernels::ops().gemm_nn(kNx, k * nu, kNx, 1.0, qp.A[k].data(), kNx,
                             G[k].data(), nz_u, 0.0, GA.data(), nz_u);
    G[k + 1] = GA;
    for (int i = 0; i < kNx; ++i)
      for (int j = 0; j < nu; ++j) G[k + 1](i, k * nu + j) = qp.B[k](i, j);
  }

  // Gauss-Newton Hessian and gradient. Stage state costs use dt*Q_x for
  // k = 0..N-1 and P_N at the terminal node; input costs use dt*R_u.
  la::Mat WG(kNx, nz_u);
  for (int k = 0; k <= N; ++k) {
    const la::Vec& w = (k == N) ? cfg.p_n : cfg.q_x;
    const double scale = (k == N) ? 1.0 : cfg.dt;
    if (k == 0) continue;  // dx_0 is fixed by the initial condition
    // WG = diag(w)*scale * G_k ; offset = X_k + c_k - x_ref_k
    for (int i = 0; i < kNx; ++i) {
      const double wi = 2.0 * scale * w[i];
      for (int j = 0; j < nz_u; ++j) WG(i, j) = wi * G[k](i, j);
    }
    kernels::ops().gemm_tn(nz_u, nz_u, kNx, 1.0, G[k].data(), nz_u, WG.data(),
                           nz_u, 1.0, qp.H.data(), nz);
    la::Vec off = X[k] + qp.c[k] - ocp.x_ref[k];
    // g += 2*scale * G^T diag(w) * off  (WG already carries 2*scale*w)
    kernels::ops().gemm_tn(nz_u, 1, kNx, 1.0, WG.data(), nz_u, off.data(), 1,
                           1.0, qp.g.data(), 1);
  }
  // Hessian rows were accumulated with leading dim nz but width nz_u; when
  // slack is present the tail columns stay zero, which is what we want.

  for (int k = 0; k < N; ++k) {
    for (int j = 0; j < nu; ++j) {
      const int idx = k * nu + j;
      qp.H(idx, idx) += 2.0 * cfg.dt * cfg.r_u[j];
      qp.g[idx] += 2.0 * cfg.dt * cfg.r_u[j] * (U[k][j] - ocp.u_ref[k][j]);
    }
  }

  // Box bounds on inputs (du such that u stays in the input set).
  for (int k = 0; k < N; ++k) {
    const int idx = k * nu;
    qp.lb[idx + 0] = cfg.t_min - U[k][0];
    qp.ub[idx + 0] = cfg.t_max - U[k][0];
    qp.lb[idx + 1] = -cfg.phi_max - U[k][1];
    qp.ub[idx + 1] = cfg.phi_max - U[k][1];
    qp.lb[idx + 2] = -cfg.theta_max - U[k][2];
    qp.ub[idx + 2] = cfg.theta_max - U[k][2];
  }

  if (cfg.soft_constraints) {
    // Slack cost and eps >= 0 bounds.
    for (int k = 0; k < N; ++k) {
      const int idx = nz_u + k;
      qp.H(idx, idx) = 2.0 * cfg.dt * cfg.slack_weight;
      qp.lb[idx] = 0.0;
      qp.ub[idx] = kInf;
    }
    // |n_a . (p_k - p_ref)| <= e_max + eps_{k-1}: two half-spaces per axis per
    // stage, stage k coupled to the slack of the input interval ending at k.
    const int rows = 4 * N;
    qp.Ain.resize(rows, nz);
    qp.bin.resize(rows);
    int r = 0;
    for (int k = 1; k <= N; ++k) {
      const Vec3 axes[2] = {ocp.cross_n1, ocp.cross_n2};
      for (const Vec3& n : axes) {
        const double base = n.x * (X[k][0] + qp.c[k][0] - ocp.x_ref[k][0]) +
                            n.y * (X[k][1] + qp.c[k][1] - ocp.x_ref[k][1]) +
                            n.z * (X[k][2] + qp.c[k][2] - ocp.x_ref[k][2]);
        for (int sgn = 0; sgn < 2; ++sgn) {
          const double s = sgn == 0 ? 1.0 : -1.0;
          for (int j = 0; j < nz_u; ++j)
            qp.Ain(r, j) =
                s * (n.x * G[k](0, j) + n.y * G[k](1, j) + n.z * G[k](2, j));
          qp.Ain(r, nz_u + (k - 1)) = -1.0;
          qp.bin[r] = cfg.e_max - s * base;
          ++r;
        }
      }
    }
  }

  qp.H.symmetrize();
  return qp;
}

}  // namespace squall::control
