#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace specbound {

/// Raised when a Gram matrix is numerically singular, i.e. the basis behind
/// it is (close to) linearly dependent.
struct SingularGramError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dense row-major matrix. Small sizes only; everything here is O(n^3).
struct Mat {
  int rows = 0, cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}

  double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static Mat identity(int n) {
    Mat e(n, n);
    for (int i = 0; i < n; ++i) e(i, i) = 1.0;
    return e;
  }

  Mat transposed() const {
    Mat t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Mat operator*(const Mat& o) const {
    if (cols != o.rows) throw std::invalid_argument("Mat: dimension mismatch in product");
    Mat r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        const double v = (*this)(i, k);
        if (v == 0.0) continue;
        for (int j = 0; j < o.cols; ++j) r(i, j) += v * o(k, j);
      }
    return r;
  }
  Mat operator-(const Mat& o) const {
    Mat r(rows, cols);
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] - o.a[i];
    return r;
  }
  Mat operator+(const Mat& o) const {
    Mat r(rows, cols);
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] + o.a[i];
    return r;
  }
  Mat operator*(double s) const {
    Mat r(rows, cols);
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] * s;
    return r;
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
  }
  double max_abs_diff(const Mat& o) const {
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - o.a[i]));
    return m;
  }
};

inline bool is_symmetric(const Mat& m, double rel_tol = 1e-12) {
  if (m.rows != m.cols) return false;
  const double scale = std::max(m.max_abs(), 1e-300);
  for (int i = 0; i < m.rows; ++i)
    for (int j = i + 1; j < m.cols; ++j)
      if (std::abs(m(i, j) - m(j, i)) > rel_tol * scale) return false;
  return true;
}

struct EigenResult {
  std::vector<double> values;  // ascending
  Mat vectors;                 // columns are the matching orthonormal eigenvectors
};

/// Cyclic Jacobi eigensolver for dense symmetric matrices.
inline EigenResult sym_eigen(const Mat& input) {
  if (input.rows != input.cols) throw std::invalid_argument("sym_eigen: matrix must be square");
  if (!is_symmetric(input, 1e-10)) throw std::invalid_argument("sym_eigen: matrix must be symmetric");
  const int n = input.rows;
  Mat a = input;
  // enforce exact symmetry so rotations stay consistent
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = 0.5 * (a(i, j) + a(j, i));
      a(i, j) = a(j, i) = v;
    }
  Mat v = Mat::identity(n);

  double frob = 0.0;
  for (double x : a.a) frob += x * x;
  frob = std::sqrt(frob);
  const double stop = std::max(1e-300, 1e-15 * frob);

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    off = std::sqrt(2.0 * off);
    if (off <= stop) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }

  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int i, int j) { return a(i, i) < a(j, j); });

  EigenResult res;
  res.values.resize(n);
  res.vectors = Mat(n, n);
  for (int j = 0; j < n; ++j) {
    res.values[j] = a(idx[j], idx[j]);
    for (int i = 0; i < n; ++i) res.vectors(i, j) = v(i, idx[j]);
  }
  return res;
}

/// Lower Cholesky factor of an SPD matrix.
inline Mat cholesky(const Mat& g) {
  if (g.rows != g.cols) throw std::invalid_argument("cholesky: matrix must be square");
  const int n = g.rows;
  Mat l(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = g(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      if (i == j) {
        if (s <= 1e-14 * std::max(1.0, g.max_abs()))
          throw SingularGramError("cholesky: matrix not positive definite (near-singular Gram)");
        l(i, i) = std::sqrt(s);
      } else {
        l(i, j) = s / l(j, j);
      }
    }
  }
  return l;
}

/// Solve G X = B for SPD G via Cholesky.
inline Mat solve_spd(const Mat& g, const Mat& b) {
  if (g.rows != b.rows) throw std::invalid_argument("solve_spd: dimension mismatch");
  const Mat l = cholesky(g);
  const int n = g.rows, m = b.cols;
  Mat x = b;
  for (int col = 0; col < m; ++col) {
    for (int i = 0; i < n; ++i) {
      double s = x(i, col);
      for (int k = 0; k < i; ++k) s -= l(i, k) * x(k, col);
      x(i, col) = s / l(i, i);
    }
    for (int i = n - 1; i >= 0; --i) {
      double s = x(i, col);
      for (int k = i + 1; k < n; ++k) s -= l(k, i) * x(k, col);
      x(i, col) = s / l(i, i);
    }
  }
  return x;
}

/// Symmetric inverse square root: S with S G S = I. Requires the smallest
/// eigenvalue to exceed 1e-12 times the largest; failure signals a linearly
/// dependent basis.
inline Mat inv_sqrt(const Mat& g) {
  const EigenResult eig = sym_eigen(g);
  const int n = g.rows;
  const double lo = eig.values.front(), hi = eig.values.back();
  if (!(lo > 1e-12 * std::max(hi, 0.0)))
    throw SingularGramError("inv_sqrt: Gram matrix is numerically singular (min eig " +
                            std::to_string(lo) + ", max eig " + std::to_string(hi) + ")");
  Mat s(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k)
        acc += eig.vectors(i, k) * eig.vectors(j, k) / std::sqrt(eig.values[k]);
      s(i, j) = acc;
    }
  return s;
}

}  // namespace specbound
