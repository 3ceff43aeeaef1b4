#pragma once

// Dense double-precision kernels on row-major storage.
//
// Every routine exists as a scalar reference implementation and, on x86-64
// with AVX2+FMA, as a vectorized variant. The active backend is selected once
// at runtime (cpuid), can be forced with force_backend() or the environment
// variable SQUALL_KERNELS=scalar|avx2, and both backends are equivalence
// tested against each other. Higher layers (linalg, estimation, control)
// route all O(n^2)/O(n^3) inner loops through this table.

namespace squall::kernels {

struct Ops {
  const char* name;

  // C = alpha*A*B + beta*C         A: m x k, B: k x n, C: m x n
  void (*gemm_nn)(int m, int n, int k, double alpha, const double* A, int lda,
                  const double* B, int ldb, double beta, double* C, int ldc);
  // C = alpha*A*B^T + beta*C       A: m x k, B: n x k, C: m x n
  void (*gemm_nt)(int m, int n, int k, double alpha, const double* A, int lda,
                  const double* B, int ldb, double beta, double* C, int ldc);
  // C = alpha*A^T*B + beta*C       A: k x m, B: k x n, C: m x n
  void (*gemm_tn)(int m, int n, int k, double alpha, const double* A, int lda,
                  const double* B, int ldb, double beta, double* C, int ldc);

  void (*axpy)(int n, double a, const double* x, double* y);  // y += a*x
  double (*dot)(int n, const double* x, const double* y);
  void (*scal)(int n, double a, double* x);

  // C = sum_i w[i] * row_i(X) * row_i(X)^T    X: cnt x n, C: n x n (overwritten)
  void (*weighted_outer)(int n, int cnt, const double* w, const double* X,
                         int ldx, double* C, int ldc);
};

const Ops& scalar_ops();
bool avx2_available();
const Ops& avx2_ops();  // falls back to scalar_ops() when AVX2 is unavailable

// Active backend (detected once, overridable).
const Ops& ops();

// Force a backend by name ("scalar" or "avx2"); nullptr re-runs detection.
// Returns false if the name is unknown or unsupported on this machine.
bool force_backend(const char* name);

}  // namespace squall::kernels
