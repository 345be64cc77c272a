#pragma once

#include <cmath>
#include <complex>

namespace ghatom {

using cplx = std::complex<double>;

// Minimal 2x2 complex matrix, value semantics.
struct Mat2 {
  cplx m[2][2]{};

  static Mat2 identity() { return {{{1.0, 0.0}, {0.0, 1.0}}}; }
  static Mat2 zero() { return {}; }

  cplx& operator()(int i, int j) { return m[i][j]; }
  const cplx& operator()(int i, int j) const { return m[i][j]; }

  cplx det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

  double frobenius_norm() const {
    double s = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) s += std::norm(m[i][j]);
    return std::sqrt(s);
  }

  friend Mat2 operator*(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        r.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j];
    return r;
  }

  friend Mat2 operator-(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r.m[i][j] = a.m[i][j] - b.m[i][j];
    return r;
  }

  friend Mat2 operator+(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r.m[i][j] = a.m[i][j] + b.m[i][j];
    return r;
  }
};

}  // namespace ghatom
