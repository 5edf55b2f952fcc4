#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace specbound {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec3 normalized() const {
    const double n = norm();
    if (n == 0.0) throw std::domain_error("Vec3: cannot normalize zero vector");
    return *this / n;
  }
  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

/// Row-major 3x3 matrix; rows act on column vectors from the left.
struct Mat3 {
  std::array<double, 9> m{};

  double& operator()(int r, int c) { return m[3 * r + c]; }
  double operator()(int r, int c) const { return m[3 * r + c]; }

  static Mat3 identity() {
    Mat3 e;
    e(0, 0) = e(1, 1) = e(2, 2) = 1.0;
    return e;
  }
  static Mat3 from_rows(const Vec3& r0, const Vec3& r1, const Vec3& r2) {
    Mat3 a;
    a(0, 0) = r0.x; a(0, 1) = r0.y; a(0, 2) = r0.z;
    a(1, 0) = r1.x; a(1, 1) = r1.y; a(1, 2) = r1.z;
    a(2, 0) = r2.x; a(2, 1) = r2.y; a(2, 2) = r2.z;
    return a;
  }

  Vec3 operator*(const Vec3& v) const {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
            m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z};
  }
  Mat3 operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
        r(i, j) = s;
      }
    return r;
  }
  Mat3 operator-() const {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.m[i] = -m[i];
    return r;
  }
  Mat3 transposed() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
    return r;
  }
  double det() const {
    return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
  }
  /// Max-norm deviation of A^T A from the identity.
  double orthogonality_defect() const {
    const Mat3 g = transposed() * (*this);
    double d = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        d = std::max(d, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
    return d;
  }
  double max_abs_diff(const Mat3& o) const {
    double d = 0.0;
    for (int i = 0; i < 9; ++i) d = std::max(d, std::abs(m[i] - o.m[i]));
    return d;
  }
};

}  // namespace specbound
