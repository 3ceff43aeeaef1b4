#pragma once

#include <optional>

#include "la/mat.hpp"

namespace squall::la {

// Lower-triangular Cholesky factor of a symmetric PD matrix.
// Returns nullopt when a pivot drops below eps (matrix not PD).
std::optional<Mat> cholesky(const Mat& A, double eps = 0.0);

// Solve L y = b (forward) and L^T x = y (backward) in place.
void chol_forward(const Mat& L, Vec& b);
void chol_backward(const Mat& L, Vec& b);

// x = A^-1 b via an existing factor.
Vec chol_solve(const Mat& L, Vec b);
// Column-wise A^-1 B.
Mat chol_solve_mat(const Mat& L, const Mat& B);

// All eigenvalues of a symmetric matrix (cyclic Jacobi), ascending.
Vec sym_eigenvalues(const Mat& A, int max_sweeps = 30);
double sym_min_eigenvalue(const Mat& A);

// Condition number estimate from the eigenvalue spread of a symmetric matrix.
double sym_condition(const Mat& A);

}  // namespace squall::la
