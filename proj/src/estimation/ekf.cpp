#include "estimation/ekf.hpp"

#include <cmath>

#include "la/factor.hpp"

namespace squall::estimation {

namespace {

constexpr double kGimbalMargin = M_PI / 2.0 - 0.05;

double wrap_pi(double a) {
  while (a > M_PI) a -= 2.0 * M_PI;
  while (a <= -M_PI) a += 2.0 * M_PI;
  return a;
}

// Euler-rate matrix E(phi, theta): edot = E * omega_b.
geom::Mat3 euler_rate_matrix(double phi, double theta) {
  const double cphi = std::cos(phi), sphi = std::sin(phi);
  const double ct = std::cos(theta), tt = std::tan(theta);
  geom::Mat3 E;
  E.m[0][0] = 1.0; E.m[0][1] = sphi * tt;  E.m[0][2] = cphi * tt;
  E.m[1][0] = 0.0; E.m[1][1] = cphi;       E.m[1][2] = -sphi;
  E.m[2][0] = 0.0; E.m[2][1] = sphi / ct;  E.m[2][2] = cphi / ct;
  return E;
}

// Third column of R(phi,theta,psi): world direction of body +z.
geom::Vec3 body_z_world(double phi, double theta, double psi) {
  const double cphi = std::cos(phi), sphi = std::sin(phi);
  const double ct = std::cos(theta), st = std::sin(theta);
  const double cy = std::cos(psi), sy = std::sin(psi);
  return {cphi * st * cy + sphi * sy, cphi * st * sy - sphi * cy, cphi * ct};
}

}  // namespace

Ekf::Ekf(const dynamics::VehicleParams& params, const NoiseConfig& noise)
    : params_(params), noise_(noise) {
  J_ = params.inertia;
  Jinv_ = params.inertia_inv();
  S1_.resize(kStateDim, kStateDim);
  S1t_.resize(kStateDim, kStateDim);
  S2_.resize(kStateDim, kStateDim);
  K_.resize(kStateDim, kMeasDim);
  N_.resize(kStateDim, kStateDim);
  NK_.resize(kStateDim, kStateDim);
  KR_.resize(kStateDim, kMeasDim);
  KRK_.resize(kStateDim, kStateDim);
  S_.resize(kMeasDim, kMeasDim);
  PHt_.resize(kMeasDim, kStateDim);
  r_diagonal_ = true;
  for (int i = 0; i < kMeasDim && r_diagonal_; ++i)
    for (int j = 0; j < kMeasDim; ++j)
      if (i != j && noise_.R(i, j) != 0.0) r_diagonal_ = false;
}

EkfState Ekf::init(const Measurement& z0) const {
  EkfState s;
  s.mean.resize(kStateDim);
  const la::Vec z = z0.to_vec();
  for (int i = 0; i < kMeasDim; ++i) s.mean[i] = z[i];
  s.cov = initial_covariance(noise_);
  return s;
}

la::Vec Ekf::discrete_step(const la::Vec& mean, const FilterInput& u,
                           double dt) const {
  const double phi = mean[kAtt], theta = mean[kAtt + 1], psi = mean[kAtt + 2];
  const Vec3 v{mean[kV], mean[kV + 1], mean[kV + 2]};
  const Vec3 om{mean[kOm], mean[kOm + 1], mean[kOm + 2]};
  const Vec3 f{mean[kF], mean[kF + 1], mean[kF + 2]};
  const Vec3 eta{mean[kEta], mean[kEta + 1], mean[kEta + 2]};

  const Vec3 ez_w = body_z_world(phi, theta, psi);
  const Vec3 vdot = ez_w * (u.thrust / params_.mass) + f / params_.mass +
                    params_.gravity;
  const geom::Mat3 E = euler_rate_matrix(phi, theta);
  const Vec3 edot = E * om;
  const Vec3 omdot = Jinv_ * (u.torque + eta - om.cross(J_ * om));

  la::Vec out = mean;
  for (int i = 0; i < 3; ++i) {
    out[kP + i] += dt * v[i];
    out[kV + i] += dt * vdot[i];
    out[kAtt + i] += dt * edot[i];
    out[kOm + i] += dt * omdot[i];
  }
  return out;
}

void Ekf::build_blocks(const la::Vec& mean, const FilterInput& u) {
  const double phi = mean[kAtt], theta = mean[kAtt + 1], psi = mean[kAtt + 2];
  const double cphi = std::cos(phi), sphi = std::sin(phi);
  const double ct = std::cos(theta), st = std::sin(theta), tt = std::tan(theta);
  const double cy = std::cos(psi), sy = std::sin(psi);
  const Vec3 om{mean[kOm], mean[kOm + 1], mean[kOm + 2]};

  // d(v_dot)/d(att): columns are T/m * d(R e_z)/d(phi|theta|psi).
  const double Tm = u.thrust / params_.mass;
  dvdatt_.m[0][0] = Tm * (-sphi * st * cy + cphi * sy);
  dvdatt_.m[1][0] = Tm * (-sphi * st * sy - cphi * cy);
  dvdatt_.m[2][0] = Tm * (-sphi * ct);
  dvdatt_.m[0][1] = Tm * (cphi * ct * cy);
  dvdatt_.m[1][1] = Tm * (cphi * ct * sy);
  dvdatt_.m[2][1] = Tm * (-cphi * st);
  dvdatt_.m[0][2] = Tm * (-cphi * st * sy + sphi * cy);
  dvdatt_.m[1][2] = Tm * (cphi * st * cy + sphi * sy);
  dvdatt_.m[2][2] = 0.0;

  // d(E*omega)/d(att); the psi column is zero.
  const double q = om.y, r = om.z;
  dattdatt_.m[0][0] = cphi * tt * q - sphi * tt * r;
  dattdatt_.m[1][0] = -sphi * q - cphi * r;
  dattdatt_.m[2][0] = (cphi * q - sphi * r) / ct;
  dattdatt_.m[0][1] = (sphi * q + cphi * r) / (ct * ct);
  dattdatt_.m[1][1] = 0.0;
  dattdatt_.m[2][1] = (sphi * q + cphi * r) * st / (ct * ct);
  dattdatt_.m[0][2] = 0.0;
  dattdatt_.m[1][2] = 0.0;
  dattdatt_.m[2][2] = 0.0;

  E_ = euler_rate_matrix(phi, theta);

  // d(omega_dot)/d(omega) = -Jinv (skew(om) J - skew(J om))
  const geom::Mat3 sk =
      geom::Mat3::skew(om) * J_ - geom::Mat3::skew(J_ * om);
  domdom_ = Jinv_ * sk * -1.0;
}

void Ekf::apply_A(la::Mat& dst, const la::Mat& src) const {
  const auto& k = kernels::ops();
  const int n = kStateDim;
  dst.setZero();
  // rows p: src rows v
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < n; ++j) dst(kP + i, j) = src(kV + i, j);
  // rows v: dvdatt * src[att] + (1/m) src[f]
  k.gemm_nn(3, n, 3, 1.0, &dvdatt_.m[0][0], 3, src.row(kAtt), n, 0.0,
            dst.row(kV), n);
  k.axpy(3 * n, 1.0 / params_.mass, src.row(kF), dst.row(kV));
  // rows att: dattdatt * src[att] + E * src[om]
  k.gemm_nn(3, n, 3, 1.0, &dattdatt_.m[0][0], 3, src.row(kAtt), n, 0.0,
            dst.row(kAtt), n);
  k.gemm_nn(3, n, 3, 1.0, &E_.m[0][0], 3, src.row(kOm), n, 1.0, dst.row(kAtt), n);
  // rows om: domdom * src[om] + Jinv * src[eta]
  k.gemm_nn(3, n, 3, 1.0, &domdom_.m[0][0], 3, src.row(kOm), n, 0.0,
            dst.row(kOm), n);
  k.gemm_nn(3, n, 3, 1.0, &Jinv_.m[0][0], 3, src.row(kEta), n, 1.0, dst.row(kOm),
            n);
}

la::Mat Ekf::discrete_jacobian(const la::Vec& mean, const FilterInput& u,
                               double dt) {
  // F = I + dt*A; assembled from the same pieces apply_A uses.
  build_blocks(mean, u);
  la::Mat F = la::Mat::identity(kStateDim);
  for (int i = 0; i < 3; ++i) {
    F(kP + i, kV + i) += dt;
    F(kV + i, kF + i) += dt / params_.mass;
    for (int j = 0; j < 3; ++j) {
      F(kV + i, kAtt + j) += dt * dvdatt_.m[i][j];
      F(kAtt + i, kAtt + j) += dt * dattdatt_.m[i][j];
      F(kAtt + i, kOm + j) += dt * E_.m[i][j];
      F(kOm + i, kOm + j) += dt * domdom_.m[i][j];
      F(kOm + i, kEta + j) += dt * Jinv_.m[i][j];
    }
  }
  return F;
}

Expected<EkfState> Ekf::predict(const EkfState& s, const FilterInput& u,
                                double dt) {
  if (!(dt > 0.0) || dt > 0.1) return Error{"ekf_predict: dt out of (0, 0.1]"};
  if (std::abs(s.mean[kAtt + 1]) > kGimbalMargin)
    return Error{"ekf_predict: pitch within gimbal-lock margin"};

  EkfState out;
  out.mean = discrete_step(s.mean, u, dt);
  build_blocks(s.mean, u);

  // P+ = F P F^T + Q dt with F = I + dt A:
  //    = P + dt (AP + (AP)^T) + dt^2 A (AP)^T + Q dt
  apply_A(S1_, s.cov);
  for (int i = 0; i < kStateDim; ++i)
    for (int j = 0; j < kStateDim; ++j) S1t_(i, j) = S1_(j, i);
  apply_A(S2_, S1t_);

  out.cov = s.cov;
  const int nn = kStateDim * kStateDim;
  const auto& k = kernels::ops();
  k.axpy(nn, dt, S1_.data(), out.cov.data());
  k.axpy(nn, dt, S1t_.data(), out.cov.data());
  k.axpy(nn, dt * dt, S2_.data(), out.cov.data());
  k.axpy(nn, dt, noise_.Q.data(), out.cov.data());
  out.cov.symmetrize();
  return out;
}

Expected<EkfState> Ekf::update(const EkfState& s, const Measurement& z) {
  const la::Vec zv = z.to_vec();

  // Innovation, attitude components wrapped to (-pi, pi].
  la::Vec y(kMeasDim);
  for (int i = 0; i < kMeasDim; ++i) y[i] = zv[i] - s.mean[i];
  for (int i = 6; i < 9; ++i) y[i] = wrap_pi(y[i]);

  // S = P[0:12,0:12] + R
  for (int i = 0; i < kMeasDim; ++i)
    for (int j = 0; j < kMeasDim; ++j) S_(i, j) = s.cov(i, j) + noise_.R(i, j);

  const auto L = la::cholesky(S_);
  if (!L) {
    return Error{"ekf_update: innovation covariance not invertible, cond=" +
                 std::to_string(la::sym_condition(S_))};
  }

  // K = P H^T S^-1 via S^-1 (H P) then transpose.
  for (int i = 0; i < kMeasDim; ++i)
    for (int j = 0; j < kStateDim; ++j) PHt_(i, j) = s.cov(i, j);
  const la::Mat Kt = la::chol_solve_mat(*L, PHt_);  // 12x18
  for (int i = 0; i < kStateDim; ++i)
    for (int j = 0; j < kMeasDim; ++j) K_(i, j) = Kt(j, i);

  EkfState out;
  out.mean = s.mean;
  la::mul_vec_into(out.mean, K_, y, 1.0, 1.0);
  out.mean[kAtt] = wrap_pi(out.mean[kAtt]);
  out.mean[kAtt + 2] = wrap_pi(out.mean[kAtt + 2]);

  // Joseph form, exploiting H = [I 0]:
  //   N = (I - K H) P = P - K * P[0:12,:]
  //   P+ = N - N[:,0:12] K^T + K R K^T
  N_ = s.cov;
  kernels::ops().gemm_nn(kStateDim, kStateDim, kMeasDim, -1.0, K_.data(),
                         kMeasDim, s.cov.data(), kStateDim, 1.0, N_.data(),
                         kStateDim);
  // NK = N[:,0:12] * K^T
  for (int i = 0; i < kStateDim; ++i)
    for (int j = 0; j < kMeasDim; ++j) KR_(i, j) = N_(i, j);  // reuse as N[:,0:12]
  la::mul_nt_into(NK_, KR_, K_);
  // K R K^T (diagonal R fast path)
  if (r_diagonal_) {
    for (int i = 0; i < kStateDim; ++i)
      for (int j = 0; j < kMeasDim; ++j) KR_(i, j) = K_(i, j) * noise_.R(j, j);
  } else {
    la::mul_into(KR_, K_, noise_.R);
  }
  la::mul_nt_into(KRK_, KR_, K_);

  out.cov = N_;
  out.cov -= NK_;
  out.cov += KRK_;
  out.cov.symmetrize();
  return out;
}

WrenchEstimate wrench_from_filter(const EkfState& s) {
  WrenchEstimate w;
  w.f_ext = s.seg3(kF);
  w.eta_ext = s.seg3(kEta);
  w.cov = s.cov.block(kF, kF, 6, 6);
  return w;
}

}  // namespace squall::estimation
