#include "control/mpc_model.hpp"

#include <cmath>

namespace squall::control {

la::Vec mpc_model_derivative(const la::Vec& x, const la::Vec& u,
                             const Vec3& f_ext_hat, const ModelParams& mp,
                             const MpcConfig& cfg) {
  const double phi = x[6], theta = x[7], psi = x[8];
  const double cphi = std::cos(phi), sphi = std::sin(phi);
  const double ct = std::cos(theta), st = std::sin(theta);
  const double cy = std::cos(psi), sy = std::sin(psi);
  const Vec3 ez_w{cphi * st * cy + sphi * sy, cphi * st * sy - sphi * cy,
                  cphi * ct};

  la::Vec dx(kNx);
  dx[0] = x[3];
  dx[1] = x[4];
  dx[2] = x[5];
  const Vec3 a = ez_w * (u[0] / mp.mass) + f_ext_hat / mp.mass + mp.gravity;
  dx[3] = a.x;
  dx[4] = a.y;
  dx[5] = a.z;
  dx[6] = (cfg.k_phi * u[1] - phi) / cfg.tau_phi;
  dx[7] = (cfg.k_theta * u[2] - theta) / cfg.tau_theta;
  dx[8] = 0.0;
  return dx;
}

void mpc_model_jacobians(const la::Vec& x, const la::Vec& u,
                         const ModelParams& mp, const MpcConfig& cfg,
                         la::Mat& fx, la::Mat& fu) {
  const double phi = x[6], theta = x[7], psi = x[8];
  const double cphi = std::cos(phi), sphi = std::sin(phi);
  const double ct = std::cos(theta), st = std::sin(theta);
  const double cy = std::cos(psi), sy = std::sin(psi);
  const double Tm = u[0] / mp.mass;

  fx.resize(kNx, kNx);
  fu.resize(kNx, kNu);
  for (int i = 0; i < 3; ++i) fx(i, 3 + i) = 1.0;

  // d(v_dot)/d(phi,theta,psi)
  fx(3, 6) = Tm * (-sphi * st * cy + cphi * sy);
  fx(4, 6) = Tm * (-sphi * st * sy - cphi * cy);
  fx(5, 6) = Tm * (-sphi * ct);
  fx(3, 7) = Tm * (cphi * ct * cy);
  fx(4, 7) = Tm * (cphi * ct * sy);
  fx(5, 7) = Tm * (-cphi * st);
  fx(3, 8) = Tm * (-cphi * st * sy + sphi * cy);
  fx(4, 8) = Tm * (cphi * st * cy + sphi * sy);

  fx(6, 6) = -1.0 / cfg.tau_phi;
  fx(7, 7) = -1.0 / cfg.tau_theta;

  fu(3, 0) = (cphi * st * cy + sphi * sy) / mp.mass;
  fu(4, 0) = (cphi * st * sy - sphi * cy) / mp.mass;
  fu(5, 0) = (cphi * ct) / mp.mass;
  fu(6, 1) = cfg.k_phi / cfg.tau_phi;
  fu(7, 2) = cfg.k_theta / cfg.tau_theta;
}

void rk4_step_with_sens(const la::Vec& x, const la::Vec& u,
                        const Vec3& f_ext_hat, const ModelParams& mp,
                        const MpcConfig& cfg, double dt, la::Vec& x_next,
                        la::Mat& A, la::Mat& B) {
  la::Mat fx(kNx, kNx), fu(kNx, kNu);
  la::Mat dkx[4], dku[4];
  la::Vec k[4];
  la::Vec xs = x;

  const double stage_h[4] = {0.0, 0.5 * dt, 0.5 * dt, dt};
  for (int s = 0; s < 4; ++s) {
    if (s > 0) {
      xs = x;
      kernels::ops().axpy(kNx, stage_h[s], k[s - 1].data(), xs.data());
    }
    k[s] = mpc_model_derivative(xs, u, f_ext_hat, mp, cfg);
    mpc_model_jacobians(xs, u, mp, cfg, fx, fu);
    if (s == 0) {
      dkx[s] = fx;
      dku[s] = fu;
    } else {
      // dk_s/dx = fx * (I + h * dk_{s-1}/dx),  dk_s/du = fu + fx * h * dk_{s-1}/du
      la::Mat tmp = la::Mat::identity(kNx);
      kernels::ops().axpy(kNx * kNx, stage_h[s], dkx[s - 1].data(), tmp.data());
      dkx[s].resize(kNx, kNx);
      la::mul_into(dkx[s], fx, tmp);
      dku[s] = fu;
      la::Mat tmpu(kNx, kNu);
      la::mul_into(tmpu, fx, dku[s - 1]);
      kernels::ops().axpy(kNx * kNu, stage_h[s], tmpu.data(), dku[s].data());
    }
  }

  x_next = x;
  const double h6 = dt / 6.0;
  kernels::ops().axpy(kNx, h6, k[0].data(), x_next.data());
  kernels::ops().axpy(kNx, 2.0 * h6, k[1].data(), x_next.data());
  kernels::ops().axpy(kNx, 2.0 * h6, k[2].data(), x_next.data());
  kernels::ops().axpy(kNx, h6, k[3].data(), x_next.data());

  A = la::Mat::identity(kNx);
  B.resize(kNx, kNu);
  B.setZero();
  const double wts[4] = {h6, 2.0 * h6, 2.0 * h6, h6};
  for (int s = 0; s < 4; ++s) {
    kernels::ops().axpy(kNx * kNx, wts[s], dkx[s].data(), A.data());
    kernels::ops().axpy(kNx * kNu, wts[s], dku[s].data(), B.data());
  }
}

}  // namespace squall::control
