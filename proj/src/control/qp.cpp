#include "control/qp.hpp"

#include <algorithm>
#include <cmath>

#include "la/factor.hpp"

namespace squall::control {

namespace {

constexpr double kInfBound = 1e29;  // bounds beyond this are "absent"
constexpr double kFeasTol = 1e-9;
constexpr double kLambdaTol = 1e-9;

// Constraint view over [box lower | box upper | general rows], in that index
// order. Box rows are +-e_i; general rows come from Ain.
struct ConstraintSet {
  const QpSubproblem& qp;
  int nz;
  int n_box;
  int total;

  explicit ConstraintSet(const QpSubproblem& q)
      : qp(q), nz(q.num_vars()), n_box(2 * q.num_vars()),
        total(2 * q.num_vars() + q.bin.size()) {}

  bool present(int i) const {
    if (i < nz) return qp.lb[i] > -kInfBound;
    if (i < n_box) return qp.ub[i - nz] < kInfBound;
    return true;
  }
  double rhs(int i) const {
    if (i < nz) return -qp.lb[i];
    if (i < n_box) return qp.ub[i - nz];
    return qp.bin[i - n_box];
  }
  // value = a_i . z
  double value(int i, const la::Vec& z) const {
    if (i < nz) return -z[i];
    if (i < n_box) return z[i - nz];
    return kernels::ops().dot(nz, qp.Ain.row(i - n_box), z.data());
  }
  double dir(int i, const la::Vec& p) const { return value(i, p); }
  void axpy_row(int i, double a, la::Vec& out) const {
    if (i < nz) {
      out[i] -= a;
    } else if (i < n_box) {
      out[i - nz] += a;
    } else {
      kernels::ops().axpy(nz, a, qp.Ain.row(i - n_box), out.data());
    }
  }
  // column = H^-1 a_i given the Cholesky factor of H
  la::Vec hinv_row(int i, const la::Mat& L) const {
    la::Vec a(nz);
    axpy_row(i, 1.0, a);
    return la::chol_solve(L, a);
  }
};

}  // namespace

Expected<QpSolution> solve_qp(const QpSubproblem& qp, const la::Vec& z0,
                              int max_iter) {
  const int nz = qp.num_vars();
  ConstraintSet con(qp);

  const auto Lh = la::cholesky(qp.H, 1e-14);
  if (!Lh) return Error{"solve_qp: Hessian not positive definite"};

  QpSolution sol;
  sol.z = z0;

  // Feasibility of the start point.
  for (int i = 0; i < con.total; ++i) {
    if (!con.present(i)) continue;
    if (con.value(i, sol.z) > con.rhs(i) + 1e-7)
      return Error{"solve_qp: initial point infeasible at constraint " +
                   std::to_string(i)};
  }

  std::vector<int> W;              // working set (constraint indices)
  std::vector<la::Vec> Y;          // H^-1 a_i for i in W
  la::Mat M;                       // Schur complement A_W H^-1 A_W^T
  la::Vec grad(nz), r(nz), p(nz);
  la::Vec lambda;

  auto rebuild_schur = [&]() {
    const int m = static_cast<int>(W.size());
    M.resize(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j <= i; ++j) {
        la::Vec ai(nz);
        con.axpy_row(W[i], 1.0, ai);
        M(i, j) = M(j, i) = la::dot(ai, Y[j]);
      }
  };

  for (sol.iterations = 0; sol.iterations < max_iter; ++sol.iterations) {
    // grad = H z + g
    la::mul_vec_into(grad, qp.H, sol.z);
    grad += qp.g;
    r = la::chol_solve(*Lh, grad);

    const int m = static_cast<int>(W.size());
    lambda.resize(m);
    if (m > 0) {
      // Solve M lambda = -A_W r
      la::Vec rhs(m);
      for (int i = 0; i < m; ++i) rhs[i] = -con.dir(W[i], r);
      const auto Lm = la::cholesky(M, 1e-14);
      if (!Lm) return Error{"solve_qp: degenerate working set"};
      lambda = la::chol_solve(*Lm, rhs);
      // p = -r - sum lambda_i Y_i
      p = r;
      p *= -1.0;
      for (int i = 0; i < m; ++i)
        kernels::ops().axpy(nz, -lambda[i], Y[i].data(), p.data());
    } else {
      p = r;
      p *= -1.0;
    }

    const double pscale = std::max(1.0, sol.z.inf_norm());
    if (p.inf_norm() <= 1e-11 * pscale) {
      // Stationary on the working set; check multipliers.
      int worst = -1;
      double worst_l = -kLambdaTol;
      for (int i = 0; i < m; ++i) {
        if (lambda[i] < worst_l) {
          worst_l = lambda[i];
          worst = i;
        }
      }
      if (worst < 0) break;  // optimal
      W.erase(W.begin() + worst);
      Y.erase(Y.begin() + worst);
      rebuild_schur();
      continue;
    }

    // Longest feasible step along p; blocking constraint enters (lowest index
    // among the binding ones).
    double alpha = 1.0;
    int blocking = -1;
    for (int i = 0; i < con.total; ++i) {
      if (!con.present(i)) continue;
      if (std::find(W.begin(), W.end(), i) != W.end()) continue;
      const double ap = con.dir(i, p);
      if (ap <= 1e-12) continue;
      const double gap = con.rhs(i) - con.value(i, sol.z);
      const double a = std::max(0.0, gap) / ap;
      if (a < alpha - 1e-12) {
        alpha = a;
        blocking = i;
      }
    }

    kernels::ops().axpy(nz, alpha, p.data(), sol.z.data());
    if (blocking >= 0) {
      W.push_back(blocking);
      Y.push_back(con.hinv_row(blocking, *Lh));
      rebuild_schur();
      // Degenerate row (dependent on working set): drop it again and mark.
      if (!la::cholesky(M, 1e-14)) {
        W.pop_back();
        Y.pop_back();
        rebuild_schur();
        sol.suboptimal = true;
        break;
      }
    }
  }
  if (sol.iterations >= max_iter) sol.suboptimal = true;

  // Recompute multipliers and KKT residuals at the returned iterate.
  la::mul_vec_into(grad, qp.H, sol.z);
  grad += qp.g;
  const int mf = static_cast<int>(W.size());
  lambda.resize(mf);
  if (mf > 0) {
    r = la::chol_solve(*Lh, grad);
    la::Vec rhs(mf);
    for (int i = 0; i < mf; ++i) rhs[i] = -con.dir(W[i], r);
    if (const auto Lm = la::cholesky(M, 1e-14)) {
      lambda = la::chol_solve(*Lm, rhs);
    }
  }
  for (int i = 0; i < mf; ++i) con.axpy_row(W[i], lambda[i], grad);
  sol.kkt_stationarity = grad.inf_norm();
  double feas = 0.0, comp = 0.0;
  for (int i = 0; i < con.total; ++i) {
    if (!con.present(i)) continue;
    feas = std::max(feas, con.value(i, sol.z) - con.rhs(i));
  }
  for (int i = 0; i < mf; ++i)
    comp = std::max(comp,
                    std::abs(lambda[i] * (con.value(W[i], sol.z) - con.rhs(W[i]))));
  sol.kkt_feasibility = std::max(0.0, feas);
  sol.kkt_complementarity = comp;
  return sol;
}

}  // namespace squall::control
