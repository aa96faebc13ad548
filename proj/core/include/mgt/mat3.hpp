#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace mgt {

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;
using CVec3 = std::array<Complex, 3>;

/// Dense real 3x3 matrix, row major.  Everything in this project lives on
/// per-mode 3x3 blocks, so these small value types replace a general linear
/// algebra dependency.
struct Mat3 {
  std::array<double, 9> a{};

  double& operator()(int i, int j) { return a[3 * i + j]; }
  double operator()(int i, int j) const { return a[3 * i + j]; }

  static Mat3 identity() {
    Mat3 m;
    m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
    return m;
  }
  static Mat3 diagonal(double d0, double d1, double d2) {
    Mat3 m;
    m(0, 0) = d0;
    m(1, 1) = d1;
    m(2, 2) = d2;
    return m;
  }

  Mat3 transpose() const {
    Mat3 t;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t(i, j) = (*this)(j, i);
    return t;
  }

  double frobenius() const {
    double s = 0.0;
    for (double x : a) s += x * x;
    return std::sqrt(s);
  }

  double max_abs() const {
    double s = 0.0;
    for (double x : a) s = std::max(s, std::abs(x));
    return s;
  }
};

inline Mat3 operator+(const Mat3& x, const Mat3& y) {
  Mat3 r;
  for (int i = 0; i < 9; ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}
inline Mat3 operator-(const Mat3& x, const Mat3& y) {
  Mat3 r;
  for (int i = 0; i < 9; ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}
inline Mat3 operator*(double s, const Mat3& x) {
  Mat3 r;
  for (int i = 0; i < 9; ++i) r.a[i] = s * x.a[i];
  return r;
}
inline Mat3 operator*(const Mat3& x, const Mat3& y) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += x(i, k) * y(k, j);
      r(i, j) = s;
    }
  return r;
}
inline Vec3 operator*(const Mat3& x, const Vec3& v) {
  Vec3 r{};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) r[i] += x(i, k) * v[k];
  return r;
}

/// Dense complex 3x3 matrix, row major.
struct CMat3 {
  std::array<Complex, 9> a{};

  Complex& operator()(int i, int j) { return a[3 * i + j]; }
  Complex operator()(int i, int j) const { return a[3 * i + j]; }

  static CMat3 identity() {
    CMat3 m;
    m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
    return m;
  }
  static CMat3 from_real(const Mat3& r) {
    CMat3 m;
    for (int i = 0; i < 9; ++i) m.a[i] = r.a[i];
    return m;
  }

  CMat3 adjoint() const {
    CMat3 t;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t(i, j) = std::conj((*this)(j, i));
    return t;
  }

  Mat3 real_part() const {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.a[i] = a[i].real();
    return r;
  }

  double max_imag() const {
    double s = 0.0;
    for (const Complex& x : a) s = std::max(s, std::abs(x.imag()));
    return s;
  }

  double frobenius() const {
    double s = 0.0;
    for (const Complex& x : a) s += std::norm(x);
    return std::sqrt(s);
  }
};

inline CMat3 operator*(const CMat3& x, const CMat3& y) {
  CMat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Complex s = 0.0;
      for (int k = 0; k < 3; ++k) s += x(i, k) * y(k, j);
      r(i, j) = s;
    }
  return r;
}
inline CVec3 operator*(const CMat3& x, const CVec3& v) {
  CVec3 r{};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) r[i] += x(i, k) * v[k];
  return r;
}
inline CMat3 operator-(const CMat3& x, const CMat3& y) {
  CMat3 r;
  for (int i = 0; i < 9; ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}

/// Inverse by Gaussian elimination with partial pivoting.
/// Throws mgt::InvalidArgument on (numerically) singular input.
Mat3 inverse(const Mat3& m);
CMat3 inverse(const CMat3& m);

/// Solve m x = b with partial pivoting.
Vec3 solve(const Mat3& m, const Vec3& b);
CVec3 solve(const CMat3& m, const CVec3& b);

/// Eigenvalues of a real symmetric 3x3, ascending.  Closed-form trigonometric
/// solution followed by one Rayleigh-quotient refinement per eigenvalue.
std::array<double, 3> sym3_eigenvalues(const Mat3& s);

inline double dot(const Vec3& x, const Vec3& y) { return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]; }

/// Hermitian quadratic form conj(x)^T m x; imaginary part is roundoff when m
/// is real symmetric.
inline double quad_form(const Mat3& m, const CVec3& x) {
  Complex s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += std::conj(x[i]) * m(i, j) * x[j];
  return s.real();
}

}  // namespace mgt
