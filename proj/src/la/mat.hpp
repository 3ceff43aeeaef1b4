#pragma once

#include <cassert>
#include <cmath>
#include <initializer_list>
#include <vector>

#include "kernels/kernels.hpp"

// Small dynamic dense matrices/vectors (row-major) backed by the kernels
// layer. Sized for filter covariances and condensed QPs (n <= ~100); not a
// general-purpose linear algebra library.

namespace squall::la {

class Vec {
 public:
  Vec() = default;
  explicit Vec(int n, double fill = 0.0) : d_(static_cast<size_t>(n), fill) {}
  Vec(std::initializer_list<double> v) : d_(v) {}

  int size() const { return static_cast<int>(d_.size()); }
  double& operator[](int i) { return d_[static_cast<size_t>(i)]; }
  double operator[](int i) const { return d_[static_cast<size_t>(i)]; }
  double* data() { return d_.data(); }
  const double* data() const { return d_.data(); }

  void setZero() { std::fill(d_.begin(), d_.end(), 0.0); }
  void resize(int n) { d_.assign(static_cast<size_t>(n), 0.0); }

  Vec segment(int start, int len) const {
    Vec out(len);
    for (int i = 0; i < len; ++i) out[i] = (*this)[start + i];
    return out;
  }
  void set_segment(int start, const Vec& v) {
    for (int i = 0; i < v.size(); ++i) (*this)[start + i] = v[i];
  }

  double norm() const { return std::sqrt(kernels::ops().dot(size(), data(), data())); }
  double inf_norm() const {
    double m = 0.0;
    for (double x : d_) m = std::max(m, std::abs(x));
    return m;
  }

  Vec& operator+=(const Vec& o) {
    kernels::ops().axpy(size(), 1.0, o.data(), data());
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    kernels::ops().axpy(size(), -1.0, o.data(), data());
    return *this;
  }
  Vec& operator*=(double a) {
    kernels::ops().scal(size(), a, data());
    return *this;
  }

  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(double a, Vec v) { return v *= a; }

 private:
  std::vector<double> d_;
};

inline double dot(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  return kernels::ops().dot(a.size(), a.data(), b.data());
}

class Mat {
 public:
  Mat() = default;
  Mat(int r, int c, double fill = 0.0) : r_(r), c_(c), d_(static_cast<size_t>(r) * c, fill) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
  static Mat diag(const Vec& v) {
    Mat m(v.size(), v.size());
    for (int i = 0; i < v.size(); ++i) m(i, i) = v[i];
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  double& operator()(int i, int j) { return d_[static_cast<size_t>(i) * c_ + j]; }
  double operator()(int i, int j) const { return d_[static_cast<size_t>(i) * c_ + j]; }
  double* data() { return d_.data(); }
  const double* data() const { return d_.data(); }
  double* row(int i) { return d_.data() + static_cast<size_t>(i) * c_; }
  const double* row(int i) const { return d_.data() + static_cast<size_t>(i) * c_; }

  void setZero() { std::fill(d_.begin(), d_.end(), 0.0); }
  void resize(int r, int c) {
    r_ = r;
    c_ = c;
    d_.assign(static_cast<size_t>(r) * c, 0.0);
  }

  Mat block(int i0, int j0, int rs, int cs) const {
    Mat out(rs, cs);
    for (int i = 0; i < rs; ++i)
      for (int j = 0; j < cs; ++j) out(i, j) = (*this)(i0 + i, j0 + j);
    return out;
  }
  void set_block(int i0, int j0, const Mat& b) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
  }

  Mat transposed() const {
    Mat out(c_, r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  void symmetrize() {
    assert(r_ == c_);
    for (int i = 0; i < r_; ++i)
      for (int j = i + 1; j < c_; ++j) {
        const double m = 0.5 * ((*this)(i, j) + (*this)(j, i));
        (*this)(i, j) = m;
        (*this)(j, i) = m;
      }
  }

  double max_abs() const {
    double m = 0.0;
    for (double x : d_) m = std::max(m, std::abs(x));
    return m;
  }
  double trace() const {
    double s = 0.0;
    for (int i = 0; i < std::min(r_, c_); ++i) s += (*this)(i, i);
    return s;
  }

  Mat& operator+=(const Mat& o) {
    kernels::ops().axpy(r_ * c_, 1.0, o.data(), data());
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    kernels::ops().axpy(r_ * c_, -1.0, o.data(), data());
    return *this;
  }
  Mat& operator*=(double a) {
    kernels::ops().scal(r_ * c_, a, data());
    return *this;
  }
  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator*(double a, Mat m) { return m *= a; }

 private:
  int r_ = 0, c_ = 0;
  std::vector<double> d_;
};

// C = alpha*A*B + beta*C, into preallocated C.
inline void mul_into(Mat& C, const Mat& A, const Mat& B, double alpha = 1.0,
                     double beta = 0.0) {
  assert(A.cols() == B.rows() && C.rows() == A.rows() && C.cols() == B.cols());
  kernels::ops().gemm_nn(A.rows(), B.cols(), A.cols(), alpha, A.data(), A.cols(),
                         B.data(), B.cols(), beta, C.data(), C.cols());
}
// C = alpha*A*B^T + beta*C
inline void mul_nt_into(Mat& C, const Mat& A, const Mat& B, double alpha = 1.0,
                        double beta = 0.0) {
  assert(A.cols() == B.cols() && C.rows() == A.rows() && C.cols() == B.rows());
  kernels::ops().gemm_nt(A.rows(), B.rows(), A.cols(), alpha, A.data(), A.cols(),
                         B.data(), B.cols(), beta, C.data(), C.cols());
}
// C = alpha*A^T*B + beta*C
inline void mul_tn_into(Mat& C, const Mat& A, const Mat& B, double alpha = 1.0,
                        double beta = 0.0) {
  assert(A.rows() == B.rows() && C.rows() == A.cols() && C.cols() == B.cols());
  kernels::ops().gemm_tn(A.cols(), B.cols(), A.rows(), alpha, A.data(), A.cols(),
                         B.data(), B.cols(), beta, C.data(), C.cols());
}

inline Mat operator*(const Mat& A, const Mat& B) {
  Mat C(A.rows(), B.cols());
  mul_into(C, A, B);
  return C;
}
inline Mat mul_nt(const Mat& A, const Mat& B) {
  Mat C(A.rows(), B.rows());
  mul_nt_into(C, A, B);
  return C;
}
inline Mat mul_tn(const Mat& A, const Mat& B) {
  Mat C(A.cols(), B.cols());
  mul_tn_into(C, A, B);
  return C;
}

inline void mul_vec_into(Vec& y, const Mat& A, const Vec& x, double alpha = 1.0,
                         double beta = 0.0) {
  assert(A.cols() == x.size() && y.size() == A.rows());
  kernels::ops().gemm_nn(A.rows(), 1, A.cols(), alpha, A.data(), A.cols(), x.data(),
                         1, beta, y.data(), 1);
}
inline Vec operator*(const Mat& A, const Vec& x) {
  Vec y(A.rows());
  mul_vec_into(y, A, x);
  return y;
}
// y = A^T x
inline Vec mul_tvec(const Mat& A, const Vec& x) {
  Vec y(A.cols());
  kernels::ops().gemm_tn(A.cols(), 1, A.rows(), 1.0, A.data(), A.cols(), x.data(),
                         1, 0.0, y.data(), 1);
  return y;
}

}  // namespace squall::la
