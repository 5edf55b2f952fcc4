#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "specbound/linalg.hpp"
#include "specbound/twocenter.hpp"

namespace specbound {

/// One spectral window: the cutoff shell fixes the threshold lambda inside
/// [lambda_jcut, lambda_jcut+1); the basis enumerates every hydrogenic
/// eigenfunction at or below the threshold over all centers, and
/// lambda_tilde[k] is the first per-center eigenvalue above it. Bounds depend
/// on lambda only through these, so the interval representation is exact.
struct SpectralWindow {
  int j_cut = 1;
  double lambda_threshold = 0.0;
  std::vector<HydrogenicOrbital> basis;
  std::vector<double> lambda;        // per basis element, hartree
  std::vector<double> lambda_tilde;  // per center, hartree

  int size() const { return static_cast<int>(basis.size()); }
  double shift() const {
    double s = 0.0;
    for (double v : lambda_tilde) s += v;
    return s;
  }
};

/// Fragment eigenvalue -n Z^2 / (2 j^2) hartree.
inline double fragment_eigenvalue(int n, int Z, int j) {
  return -0.5 * n * static_cast<double>(Z) * Z / (static_cast<double>(j) * j);
}

/// Enumerate the window basis for the cutoff shell. With equal charges every
/// center contributes shells j <= j_cut; with unequal charges the per-center
/// cut follows the threshold rule with lambda = max_k lambda^k_jcut, so the
/// least-charged center contributes exactly j_cut shells.
inline SpectralWindow build_window(const NuclearGeometry& geom, int j_cut) {
  if (j_cut < 1) throw std::domain_error("build_window: need j_cut >= 1");
  const int n = geom.n();

  SpectralWindow w;
  w.j_cut = j_cut;
  double lambda = -std::numeric_limits<double>::infinity();
  for (int z : geom.charges) lambda = std::max(lambda, fragment_eigenvalue(n, z, j_cut));
  w.lambda_threshold = lambda;

  for (int k = 0; k < n; ++k) {
    const int z = geom.charges[k];
    // largest shell with lambda^k_j <= lambda
    const int jmax = static_cast<int>(std::floor(
        std::sqrt(0.5 * n * static_cast<double>(z) * z / -lambda) + 1e-9));
    if (jmax > 6)
      throw std::domain_error("build_window: window needs shells beyond j = 6");
    for (int j = 1; j <= jmax; ++j) {
      const double ev = fragment_eigenvalue(n, z, j);
      for (int l = 0; l < j; ++l)
        for (int m = -l; m <= l; ++m) {
          w.basis.push_back({k, j, l, m, z, ev});
          w.lambda.push_back(ev);
        }
    }
    w.lambda_tilde.push_back(fragment_eigenvalue(n, z, jmax + 1));
  }
  return w;
}

/// The row-scaled Gram B_ij = (lambda_i - lambda_tilde_k(i)) G_ij; generally
/// non-symmetric.
inline Mat build_B(const SpectralWindow& w, const Mat& g) {
  const int m = w.size();
  if (g.rows != m || g.cols != m) throw std::invalid_argument("build_B: dimension mismatch");
  Mat b(m, m);
  for (int i = 0; i < m; ++i) {
    const double wi = w.lambda[i] - w.lambda_tilde[w.basis[i].center];
    for (int j = 0; j < m; ++j) b(i, j) = wi * g(i, j);
  }
  return b;
}

/// A_ij = sum_s (lambda_s - lambda_tilde_k(s)) G_is G_sj, i.e. G * B. Always
/// symmetric; satisfies G^-1 A = B.
inline Mat build_A(const SpectralWindow& w, const Mat& g) {
  return g * build_B(w, g);
}

/// Ordered eigenvalue lower bounds plus window and conditioning diagnostics.
struct BoundReport {
  std::vector<double> bounds;  // ascending, hartree
  int j_cut = 1;
  int basis_size = 0;
  double shift = 0.0;
  double gram_eig_min = 0.0;
  double gram_eig_max = 0.0;
};

/// Spectrum lower bounds of Theorem form mu_l >= mu_hat_l + sum_k
/// lambda_tilde_k. The mu_hat are computed from the Hermitian conjugation
/// G^-1/2 A G^-1/2, which shares its spectrum with B.
inline BoundReport lower_bounds(const SpectralWindow& w, const Mat& g) {
  const int m = w.size();
  if (g.rows != m || g.cols != m) throw std::invalid_argument("lower_bounds: dimension mismatch");

  const EigenResult geig = sym_eigen(g);
  if (!(geig.values.front() > 1e-12 * std::max(geig.values.back(), 0.0)))
    throw SingularGramError("lower_bounds: basis is numerically linearly dependent");

  Mat s(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double acc = 0.0;
      for (int k = 0; k < m; ++k)
        acc += geig.vectors(i, k) * geig.vectors(j, k) / std::sqrt(geig.values[k]);
      s(i, j) = acc;
    }

  Mat h = s * build_A(w, g) * s;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const double v = 0.5 * (h(i, j) + h(j, i));
      h(i, j) = h(j, i) = v;
    }
  const EigenResult heig = sym_eigen(h);

  BoundReport rep;
  rep.j_cut = w.j_cut;
  rep.basis_size = m;
  rep.shift = w.shift();
  rep.gram_eig_min = geig.values.front();
  rep.gram_eig_max = geig.values.back();
  rep.bounds.resize(m);
  for (int i = 0; i < m; ++i) rep.bounds[i] = heig.values[i] + rep.shift;
  return rep;
}

}  // namespace specbound
