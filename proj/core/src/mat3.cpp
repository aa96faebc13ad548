#include "mgt/mat3.hpp"

#include <algorithm>
#include <limits>

#include "mgt/errors.hpp"

namespace mgt {

namespace {

template <typename Scalar, typename Mat>
Mat invert_gepp(const Mat& m) {
  // Augmented elimination [m | I] with partial pivoting.
  std::array<std::array<Scalar, 6>, 3> w{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) w[i][j] = m(i, j);
    w[i][3 + i] = Scalar(1);
  }
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    double best = std::abs(w[col][col]);
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(w[r][col]) > best) {
        best = std::abs(w[r][col]);
        piv = r;
      }
    }
    if (!(best > 0.0)) throw InvalidArgument("singular 3x3 matrix");
    std::swap(w[col], w[piv]);
    const Scalar d = w[col][col];
    for (int j = 0; j < 6; ++j) w[col][j] /= d;
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const Scalar f = w[r][col];
      if (f == Scalar(0)) continue;
      for (int j = 0; j < 6; ++j) w[r][j] -= f * w[col][j];
    }
  }
  Mat out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out(i, j) = w[i][3 + j];
  return out;
}

template <typename Scalar, typename Mat, typename Vec>
Vec solve_gepp(const Mat& m, const Vec& b) {
  std::array<std::array<Scalar, 4>, 3> w{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) w[i][j] = m(i, j);
    w[i][3] = b[i];
  }
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    double best = std::abs(w[col][col]);
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(w[r][col]) > best) {
        best = std::abs(w[r][col]);
        piv = r;
      }
    }
    if (!(best > 0.0)) throw InvalidArgument("singular 3x3 system");
    std::swap(w[col], w[piv]);
    for (int r = col + 1; r < 3; ++r) {
      const Scalar f = w[r][col] / w[col][col];
      for (int j = col; j < 4; ++j) w[r][j] -= f * w[col][j];
    }
  }
  Vec x{};
  for (int i = 2; i >= 0; --i) {
    Scalar s = w[i][3];
    for (int j = i + 1; j < 3; ++j) s -= w[i][j] * x[j];
    x[i] = s / w[i][i];
  }
  return x;
}

Vec3 cross(const Vec3& x, const Vec3& y) {
  return {x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]};
}

// One Rayleigh-quotient step: eigenvector estimate from the largest cross
// product of two rows of (s - lambda I), then lambda <- v^T s v / v^T v.
double rayleigh_refine(const Mat3& s, double lambda, double scale) {
  Mat3 shifted = s;
  for (int i = 0; i < 3; ++i) shifted(i, i) -= lambda;
  Vec3 rows[3] = {{shifted(0, 0), shifted(0, 1), shifted(0, 2)},
                  {shifted(1, 0), shifted(1, 1), shifted(1, 2)},
                  {shifted(2, 0), shifted(2, 1), shifted(2, 2)}};
  Vec3 best{};
  double best_norm = 0.0;
  for (int i = 0; i < 3; ++i) {
    Vec3 c = cross(rows[i], rows[(i + 1) % 3]);
    double n = dot(c, c);
    if (n > best_norm) {
      best_norm = n;
      best = c;
    }
  }
  // Near-repeated eigenvalue: the cross products vanish and the closed form
  // is already as good as the data allows.
  if (best_norm <= 1e-24 * scale * scale * scale * scale) return lambda;
  const double vv = dot(best, best);
  const Vec3 sv = s * best;
  return dot(best, sv) / vv;
}

}  // namespace

Mat3 inverse(const Mat3& m) { return invert_gepp<double, Mat3>(m); }
CMat3 inverse(const CMat3& m) { return invert_gepp<Complex, CMat3>(m); }
Vec3 solve(const Mat3& m, const Vec3& b) { return solve_gepp<double, Mat3, Vec3>(m, b); }
CVec3 solve(const CMat3& m, const CVec3& b) { return solve_gepp<Complex, CMat3, CVec3>(m, b); }

std::array<double, 3> sym3_eigenvalues(const Mat3& s) {
  const double q = (s(0, 0) + s(1, 1) + s(2, 2)) / 3.0;
  const double off = s(0, 1) * s(0, 1) + s(0, 2) * s(0, 2) + s(1, 2) * s(1, 2);
  const double p2 = (s(0, 0) - q) * (s(0, 0) - q) + (s(1, 1) - q) * (s(1, 1) - q) +
                    (s(2, 2) - q) * (s(2, 2) - q) + 2.0 * off;
  const double scale = std::max(std::abs(q), std::sqrt(std::max(p2, 0.0)));
  if (p2 <= 1e-30 * scale * scale || p2 == 0.0) {
    return {q, q, q};  // (numerically) a multiple of the identity
  }
  const double p = std::sqrt(p2 / 6.0);
  Mat3 b;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b(i, j) = (s(i, j) - (i == j ? q : 0.0)) / p;
  const double detb = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1)) -
                      b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0)) +
                      b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
  const double r = std::clamp(detb / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  double hi = q + 2.0 * p * std::cos(phi);
  double lo = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
  double mid = 3.0 * q - hi - lo;

  hi = rayleigh_refine(s, hi, scale);
  lo = rayleigh_refine(s, lo, scale);
  mid = rayleigh_refine(s, mid, scale);
  std::array<double, 3> out{lo, mid, hi};
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace mgt
