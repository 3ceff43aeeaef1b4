#include "kernels/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define SQUALL_X86 1
#include <immintrin.h>
#else
#define SQUALL_X86 0
#endif

#include <cstring>

// AVX2+FMA backend. This translation unit is the only one compiled with
// -mavx2 -mfma; entry is gated by the runtime cpuid check in the dispatcher.
// Accumulation order matches the scalar reference except for FMA contraction
// and the 4-lane split in dot reductions.

namespace squall::kernels {

#if SQUALL_X86

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

inline void row_fmadd(double* c, const double* b, double av, int n) {
  const __m256d va = _mm256_set1_pd(av);
  int j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256d vc = _mm256_loadu_pd(c + j);
    vc = _mm256_fmadd_pd(va, _mm256_loadu_pd(b + j), vc);
    _mm256_storeu_pd(c + j, vc);
  }
  for (; j < n; ++j) c[j] += av * b[j];
}

void gemm_nn_avx2(int m, int n, int k, double alpha, const double* A, int lda,
                  const double* B, int ldb, double beta, double* C, int ldc) {
  prescale(m, n, beta, C, ldc);
  for (int i = 0; i < m; ++i) {
    const double* a = A + i * lda;
    double* c = C + i * ldc;
    for (int p = 0; p < k; ++p) row_fmadd(c, B + p * ldb, alpha * a[p], n);
  }
}

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

inline double dot_avx2_raw(int n, const double* x, const double* y) {
  __m256d acc = _mm256_setzero_pd();
  int i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
  double s = hsum(acc);
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void gemm_nt_avx2(int m, int n, int k, double alpha, const double* A, int lda,
                  const double* B, int ldb, double beta, double* C, int ldc) {
  prescale(m, n, beta, C, ldc);
  for (int i = 0; i < m; ++i) {
    const double* a = A + i * lda;
    double* c = C + i * ldc;
    for (int j = 0; j < n; ++j) c[j] += alpha * dot_avx2_raw(k, a, B + j * ldb);
  }
}

void gemm_tn_avx2(int m, int n, int k, double alpha, const double* A, int lda,
                  const double* B, int ldb, double beta, double* C, int ldc) {
  prescale(m, n, beta, C, ldc);
  for (int p = 0; p < k; ++p) {
    const double* a = A + p * lda;
    const double* b = B + p * ldb;
    for (int i = 0; i < m; ++i) row_fmadd(C + i * ldc, b, alpha * a[i], n);
  }
}

void axpy_avx2(int n, double a, const double* x, double* y) {
  row_fmadd(y, x, a, n);
}

double dot_avx2(int n, const double* x, const double* y) {
  return dot_avx2_raw(n, x, y);
}

void scal_avx2(int n, double a, double* x) {
  const __m256d va = _mm256_set1_pd(a);
  int i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= a;
}

void weighted_outer_avx2(int n, int cnt, const double* w, const double* X,
                         int ldx, double* C, int ldc) {
  for (int i = 0; i < n; ++i) std::memset(C + i * ldc, 0, sizeof(double) * n);
  for (int s = 0; s < cnt; ++s) {
    const double* x = X + s * ldx;
    for (int i = 0; i < n; ++i) row_fmadd(C + i * ldc, x, w[s] * x[i], n);
  }
}

}  // namespace

const Ops& avx2_ops() {
  static const Ops t{"avx2",        gemm_nn_avx2, gemm_nt_avx2,
                     gemm_tn_avx2,  axpy_avx2,    dot_avx2,
                     scal_avx2,     weighted_outer_avx2};
  return t;
}

#else

const Ops& avx2_ops() { return scalar_ops(); }

#endif

}  // namespace squall::kernels
