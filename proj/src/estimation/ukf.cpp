#include "estimation/ukf.hpp"

#include <cmath>

#include "la/factor.hpp"

namespace squall::estimation {

using geom::mrp_from_quat;
using geom::quat_from_mrp;
using geom::quat_from_rotvec;

namespace {

// Attitude error coordinates: 4*MRP of the relative rotation (first-order
// equal to a rotation vector).
Vec3 att_error(const Quat& ref, const Quat& q) {
  return mrp_from_quat(ref.conjugate() * q) * 4.0;
}

Quat apply_att_error(const Quat& ref, const Vec3& da) {
  return (ref * quat_from_mrp(da * 0.25)).normalized();
}

}  // namespace

Ukf::Ukf(const dynamics::VehicleParams& params, const NoiseConfig& noise)
    : params_(params), noise_(noise) {
  J_ = params.inertia;
  Jinv_ = params.inertia_inv();

  const int n = kStateDim;
  lambda_ = noise.ukf_alpha * noise.ukf_alpha * (n + noise.ukf_kappa) - n;
  wm_.resize(kNumSigma);
  wc_.resize(kNumSigma);
  wm_[0] = lambda_ / (n + lambda_);
  wc_[0] = wm_[0] + (1.0 - noise.ukf_alpha * noise.ukf_alpha + noise.ukf_beta);
  for (int i = 1; i < kNumSigma; ++i) {
    wm_[i] = 0.5 / (n + lambda_);
    wc_[i] = wm_[i];
  }

  sig_.resize(kNumSigma);
  Sfac_.resize(n, n);
  Xres_.resize(kNumSigma, n);
  Zres_.resize(kNumSigma, kMeasDim);
  ZresW_.resize(kNumSigma, kMeasDim);
  S_.resize(kMeasDim, kMeasDim);
  Pxz_.resize(n, kMeasDim);
  K_.resize(n, kMeasDim);
  KS_.resize(n, kMeasDim);
  KSK_.resize(n, n);
}

UkfState Ukf::init(const MeasurementQ& z0) const {
  UkfState s;
  s.mean.p = z0.p;
  s.mean.v = z0.v;
  s.mean.q = z0.q.normalized();
  s.mean.omega = z0.omega;
  s.cov = initial_covariance(noise_);
  return s;
}

Expected<bool> Ukf::fill_sigma(const UkfMean& mean, const la::Mat& cov) {
  const int n = kStateDim;
  const auto L = la::cholesky(cov);
  if (!L) {
    return Error{"ukf: covariance not positive definite, min eigenvalue " +
                 std::to_string(la::sym_min_eigenvalue(cov))};
  }
  const double scale = std::sqrt(n + lambda_);

  sig_[0] = mean;
  for (int j = 0; j < n; ++j) {
    Vec3 dp, dv, da, dom, df, deta;
    // column j of scale*L, split by state block
    auto col = [&](int row) { return scale * (*L)(row, j); };
    dp = {col(kP), col(kP + 1), col(kP + 2)};
    dv = {col(kV), col(kV + 1), col(kV + 2)};
    da = {col(kAtt), col(kAtt + 1), col(kAtt + 2)};
    dom = {col(kOm), col(kOm + 1), col(kOm + 2)};
    df = {col(kF), col(kF + 1), col(kF + 2)};
    deta = {col(kEta), col(kEta + 1), col(kEta + 2)};

    for (int sgn = 0; sgn < 2; ++sgn) {
      const double s = sgn == 0 ? 1.0 : -1.0;
      UkfMean& x = sig_[1 + j + sgn * n];
      x.p = mean.p + dp * s;
      x.v = mean.v + dv * s;
      x.q = apply_att_error(mean.q, da * s);
      x.omega = mean.omega + dom * s;
      x.f_ext = mean.f_ext + df * s;
      x.eta_ext = mean.eta_ext + deta * s;
    }
  }
  return true;
}

Expected<std::vector<UkfMean>> Ukf::sigma_points(const UkfMean& mean,
                                                 const la::Mat& cov) {
  auto r = fill_sigma(mean, cov);
  if (!r) return r.error();
  return sig_;
}

UkfMean Ukf::propagate(const UkfMean& x, const FilterInput& u, double dt) const {
  UkfMean out = x;
  out.p = x.p + x.v * dt;
  const Vec3 thrust_w = x.q.rotate({0.0, 0.0, u.thrust});
  out.v = x.v + (thrust_w / params_.mass + x.f_ext / params_.mass +
                 params_.gravity) * dt;
  out.q = (x.q * quat_from_rotvec(x.omega * dt)).normalized();
  out.omega =
      x.omega + (Jinv_ * (u.torque + x.eta_ext - x.omega.cross(J_ * x.omega))) * dt;
  return out;
}

Expected<UkfState> Ukf::predict(const UkfState& s, const FilterInput& u,
                                double dt) {
  if (!(dt > 0.0) || dt > 0.1) return Error{"ukf_predict: dt out of (0, 0.1]"};
  auto ok = fill_sigma(s.mean, s.cov);
  if (!ok) return ok.error();

  for (int i = 0; i < kNumSigma; ++i) sig_[i] = propagate(sig_[i], u, dt);

  // Recombine about the propagated central point.
  const Quat ref = sig_[0].q;
  UkfState out;
  out.mean.p = {}; out.mean.v = {}; out.mean.omega = {};
  out.mean.f_ext = {}; out.mean.eta_ext = {};
  Vec3 att_mean{};
  for (int i = 0; i < kNumSigma; ++i) {
    const double w = wm_[i];
    const UkfMean& x = sig_[i];
    out.mean.p += x.p * w;
    out.mean.v += x.v * w;
    out.mean.omega += x.omega * w;
    out.mean.f_ext += x.f_ext * w;
    out.mean.eta_ext += x.eta_ext * w;
    const Vec3 a = att_error(ref, x.q);
    att_mean += a * w;
    double* r = Xres_.row(i);
    r[kAtt] = a.x; r[kAtt + 1] = a.y; r[kAtt + 2] = a.z;
  }
  out.mean.q = apply_att_error(ref, att_mean);

  for (int i = 0; i < kNumSigma; ++i) {
    const UkfMean& x = sig_[i];
    double* r = Xres_.row(i);
    for (int c = 0; c < 3; ++c) {
      r[kP + c] = x.p[c] - out.mean.p[c];
      r[kV + c] = x.v[c] - out.mean.v[c];
      r[kAtt + c] -= att_mean[c];
      r[kOm + c] = x.omega[c] - out.mean.omega[c];
      r[kF + c] = x.f_ext[c] - out.mean.f_ext[c];
      r[kEta + c] = x.eta_ext[c] - out.mean.eta_ext[c];
    }
  }

  out.cov.resize(kStateDim, kStateDim);
  kernels::ops().weighted_outer(kStateDim, kNumSigma, wc_.data(), Xres_.data(),
                                kStateDim, out.cov.data(), kStateDim);
  kernels::ops().axpy(kStateDim * kStateDim, dt, noise_.Q.data(),
                      out.cov.data());
  out.cov.symmetrize();
  return out;
}

Expected<UkfState> Ukf::update(const UkfState& s, const MeasurementQ& z) {
  auto ok = fill_sigma(s.mean, s.cov);
  if (!ok) return ok.error();

  // State residuals about the mean and measurement sigma points.
  la::Vec zbar(kMeasDim);
  for (int i = 0; i < kNumSigma; ++i) {
    const UkfMean& x = sig_[i];
    const Vec3 a = att_error(s.mean.q, x.q);
    double* xr = Xres_.row(i);
    for (int c = 0; c < 3; ++c) {
      xr[kP + c] = x.p[c] - s.mean.p[c];
      xr[kV + c] = x.v[c] - s.mean.v[c];
      xr[kAtt + c] = a[c];
      xr[kOm + c] = x.omega[c] - s.mean.omega[c];
      xr[kF + c] = x.f_ext[c] - s.mean.f_ext[c];
      xr[kEta + c] = x.eta_ext[c] - s.mean.eta_ext[c];
    }
    // h(x): [p, v, att_error, omega]
    double* zr = Zres_.row(i);
    zr[0] = x.p.x; zr[1] = x.p.y; zr[2] = x.p.z;
    zr[3] = x.v.x; zr[4] = x.v.y; zr[5] = x.v.z;
    zr[6] = a.x;   zr[7] = a.y;   zr[8] = a.z;
    zr[9] = x.omega.x; zr[10] = x.omega.y; zr[11] = x.omega.z;
    for (int c = 0; c < kMeasDim; ++c)
      zbar[c] += wm_[i] * zr[c];
  }
  for (int i = 0; i < kNumSigma; ++i) {
    double* zr = Zres_.row(i);
    for (int c = 0; c < kMeasDim; ++c) zr[c] -= zbar[c];
  }

  // S = sum wc Zres Zres^T + R
  kernels::ops().weighted_outer(kMeasDim, kNumSigma, wc_.data(), Zres_.data(),
                                kMeasDim, S_.data(), kMeasDim);
  S_ += noise_.R;
  const auto L = la::cholesky(S_);
  if (!L) {
    return Error{"ukf_update: innovation covariance not invertible, cond=" +
                 std::to_string(la::sym_condition(S_))};
  }

  // Pxz = Xres^T diag(wc) Zres
  ZresW_ = Zres_;
  for (int i = 0; i < kNumSigma; ++i)
    kernels::ops().scal(kMeasDim, wc_[i], ZresW_.row(i));
  la::mul_tn_into(Pxz_, Xres_, ZresW_);

  // K = Pxz S^-1  (solve S K^T = Pxz^T)
  const la::Mat Kt = la::chol_solve_mat(*L, Pxz_.transposed());
  for (int i = 0; i < kStateDim; ++i)
    for (int j = 0; j < kMeasDim; ++j) K_(i, j) = Kt(j, i);

  // Innovation in error coordinates.
  la::Vec y(kMeasDim);
  const Vec3 za = att_error(s.mean.q, z.q.normalized());
  y[0] = z.p.x - zbar[0]; y[1] = z.p.y - zbar[1]; y[2] = z.p.z - zbar[2];
  y[3] = z.v.x - zbar[3]; y[4] = z.v.y - zbar[4]; y[5] = z.v.z - zbar[5];
  y[6] = za.x - zbar[6];  y[7] = za.y - zbar[7];  y[8] = za.z - zbar[8];
  y[9] = z.omega.x - zbar[9]; y[10] = z.omega.y - zbar[10];
  y[11] = z.omega.z - zbar[11];

  la::Vec d(kStateDim);
  la::mul_vec_into(d, K_, y);

  UkfState out;
  out.mean = s.mean;
  out.mean.p += {d[kP], d[kP + 1], d[kP + 2]};
  out.mean.v += {d[kV], d[kV + 1], d[kV + 2]};
  out.mean.q = apply_att_error(s.mean.q, {d[kAtt], d[kAtt + 1], d[kAtt + 2]});
  out.mean.omega += {d[kOm], d[kOm + 1], d[kOm + 2]};
  out.mean.f_ext += {d[kF], d[kF + 1], d[kF + 2]};
  out.mean.eta_ext += {d[kEta], d[kEta + 1], d[kEta + 2]};

  la::mul_into(KS_, K_, S_);
  la::mul_nt_into(KSK_, KS_, K_);
  out.cov = s.cov;
  out.cov -= KSK_;
  out.cov.symmetrize();
  return out;
}

WrenchEstimate wrench_from_filter(const UkfState& s) {
  WrenchEstimate w;
  w.f_ext = s.mean.f_ext;
  w.eta_ext = s.mean.eta_ext;
  w.cov = s.cov.block(kF, kF, 6, 6);
  return w;
}

}  // namespace squall::estimation
