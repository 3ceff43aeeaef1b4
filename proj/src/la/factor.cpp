#include "la/factor.hpp"

#include <algorithm>
#include <cmath>

namespace squall::la {

std::optional<Mat> cholesky(const Mat& A, double eps) {
  const int n = A.rows();
  Mat L(n, n);
  const auto& k = kernels::ops();
  for (int j = 0; j < n; ++j) {
    double d = A(j, j) - k.dot(j, L.row(j), L.row(j));
    if (d <= eps) return std::nullopt;
    d = std::sqrt(d);
    L(j, j) = d;
    const double inv = 1.0 / d;
    for (int i = j + 1; i < n; ++i)
      L(i, j) = (A(i, j) - k.dot(j, L.row(i), L.row(j))) * inv;
  }
  return L;
}

void chol_forward(const Mat& L, Vec& b) {
  const int n = L.rows();
  const auto& k = kernels::ops();
  for (int i = 0; i < n; ++i)
    b[i] = (b[i] - k.dot(i, L.row(i), b.data())) / L(i, i);
}

void chol_backward(const Mat& L, Vec& b) {
  const int n = L.rows();
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= L(j, i) * b[j];
    b[i] = s / L(i, i);
  }
}

Vec chol_solve(const Mat& L, Vec b) {
  chol_forward(L, b);
  chol_backward(L, b);
  return b;
}

Mat chol_solve_mat(const Mat& L, const Mat& B) {
  Mat X(B.rows(), B.cols());
  Vec col(B.rows());
  for (int j = 0; j < B.cols(); ++j) {
    for (int i = 0; i < B.rows(); ++i) col[i] = B(i, j);
    chol_forward(L, col);
    chol_backward(L, col);
    for (int i = 0; i < B.rows(); ++i) X(i, j) = col[i];
  }
  return X;
}

Vec sym_eigenvalues(const Mat& A, int max_sweeps) {
  const int n = A.rows();
  Mat M = A;
  M.symmetrize();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += M(i, j) * M(i, j);
    if (off < 1e-26 * std::max(1.0, M.max_abs() * M.max_abs())) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = M(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (M(q, q) - M(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int i = 0; i < n; ++i) {
          const double mip = M(i, p), miq = M(i, q);
          M(i, p) = c * mip - s * miq;
          M(i, q) = s * mip + c * miq;
        }
        for (int i = 0; i < n; ++i) {
          const double mpi = M(p, i), mqi = M(q, i);
          M(p, i) = c * mpi - s * mqi;
          M(q, i) = s * mpi + c * mqi;
        }
      }
    }
  }
  Vec ev(n);
  for (int i = 0; i < n; ++i) ev[i] = M(i, i);
  std::sort(ev.data(), ev.data() + n);
  return ev;
}

double sym_min_eigenvalue(const Mat& A) { return sym_eigenvalues(A)[0]; }

double sym_condition(const Mat& A) {
  const Vec ev = sym_eigenvalues(A);
  double lo = 1e300, hi = 0.0;
  for (int i = 0; i < ev.size(); ++i) {
    lo = std::min(lo, std::abs(ev[i]));
    hi = std::max(hi, std::abs(ev[i]));
  }
  return lo > 0.0 ? hi / lo : 1e300;
}

}  // namespace squall::la
