#include "kernels/kernels.hpp"

#include <cstring>

// Reference backend. Loop orders here define the accumulation order the AVX2
// variants must reproduce (up to FMA rounding), so keep them in sync.

namespace squall::kernels {
namespace {

void prescale(int m, int n, double beta, double* C, int ldc) {
  if (beta == 1.0) return;
  for (int i = 0; i < m; ++i) {
    double* c = C + i * ldc;
    if (beta == 0.0) {
      std::memset(c, 0, sizeof(double) * n);
    } else {
      for (int j = 0; j < n; ++j) c[j] *= beta;
    }
  }
}

void gemm_nn_scalar(int m, int n, int k, double alpha, const double* A, int lda,
                    const double* B, int ldb, double beta, double* C, int ldc) {
  prescale(m, n, beta, C, ldc);
  for (int i = 0; i < m; ++i) {
    const double* a = A + i * lda;
    double* c = C + i * ldc;
    for (int p = 0; p < k; ++p) {
      const double av = alpha * a[p];
      const double* b = B + p * ldb;
      for (int j = 0; j < n; ++j) c[j] += av * b[j];
    }
  }
}

void gemm_nt_scalar(int m, int n, int k, double alpha, const double* A, int lda,
                    const double* B, int ldb, double beta, double* C, int ldc) {
  prescale(m, n, beta, C, ldc);
  for (int i = 0; i < m; ++i) {
    const double* a = A + i * lda;
    double* c = C + i * ldc;
    for (int j = 0; j < n; ++j) {
      const double* b = B + j * ldb;
      double s = 0.0;
      for (int p = 0; p < k; ++p) s += a[p] * b[p];
      c[j] += alpha * s;
    }
  }
}

void gemm_tn_scalar(int m, int n, int k, double alpha, const double* A, int lda,
                    const double* B, int ldb, double beta, double* C, int ldc) {
  prescale(m, n, beta, C, ldc);
  for (int p = 0; p < k; ++p) {
    const double* a = A + p * lda;
    const double* b = B + p * ldb;
    for (int i = 0; i < m; ++i) {
      const double av = alpha * a[i];
      double* c = C + i * ldc;
      for (int j = 0; j < n; ++j) c[j] += av * b[j];
    }
  }
}

void axpy_scalar(int n, double a, const double* x, double* y) {
  for (int i = 0; i < n; ++i) y[i] += a * x[i];
}

double dot_scalar(int n, const double* x, const double* y) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void scal_scalar(int n, double a, double* x) {
  for (int i = 0; i < n; ++i) x[i] *= a;
}

void weighted_outer_scalar(int n, int cnt, const double* w, const double* X,
                           int ldx, double* C, int ldc) {
  for (int i = 0; i < n; ++i) std::memset(C + i * ldc, 0, sizeof(double) * n);
  for (int s = 0; s < cnt; ++s) {
    const double* x = X + s * ldx;
    for (int i = 0; i < n; ++i) {
      const double wx = w[s] * x[i];
      double* c = C + i * ldc;
      for (int j = 0; j < n; ++j) c[j] += wx * x[j];
    }
  }
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops t{"scalar",        gemm_nn_scalar, gemm_nt_scalar,
                     gemm_tn_scalar,  axpy_scalar,    dot_scalar,
                     scal_scalar,     weighted_outer_scalar};
  return t;
}

}  // namespace squall::kernels
