#pragma once

// Test-side oracles, independent of the library implementation paths they
// check: symbolic Rodrigues differentiation for Laguerre polynomials,
// brute-force Cartesian quadrature over R^3, sphere quadrature for harmonic
// identities, and classic closed forms.

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "specbound/geometry.hpp"
#include "specbound/quadrature.hpp"

namespace oracles {

constexpr double kPi = 3.14159265358979323846;

// --------------------------------------------------------------------------
// Laguerre via symbolic differentiation of the Rodrigues form
// --------------------------------------------------------------------------

/// Polynomial P(x) stored as coefficients, representing P(x) e^{-x}.
/// d/dx [P e^{-x}] = (P' - P) e^{-x}.
inline std::vector<double> poly_exp_derivative(const std::vector<double>& p) {
  std::vector<double> out(p.size() + 0, 0.0);
  out.assign(p.size(), 0.0);
  for (size_t k = 0; k + 1 < p.size(); ++k) out[k] += (k + 1.0) * p[k + 1];
  for (size_t k = 0; k < p.size(); ++k) out[k] -= p[k];
  return out;
}

inline std::vector<double> poly_derivative(const std::vector<double>& p) {
  if (p.size() <= 1) return {0.0};
  std::vector<double> out(p.size() - 1, 0.0);
  for (size_t k = 0; k + 1 < p.size(); ++k) out[k] = (k + 1.0) * p[k + 1];
  return out;
}

inline double poly_eval(const std::vector<double>& p, double x) {
  double v = 0.0;
  for (size_t k = p.size(); k-- > 0;) v = v * x + p[k];
  return v;
}

/// L_q(x) = e^x d^q/dx^q (x^q e^{-x}) as a coefficient vector, then
/// L_q^p = d^p/dx^p L_q. Pure polynomial algebra; no recurrences.
inline double laguerre_rodrigues(int q, int p, double x) {
  std::vector<double> poly(q + 1, 0.0);
  poly[q] = 1.0;  // x^q * e^{-x}
  for (int k = 0; k < q; ++k) poly = poly_exp_derivative(poly);
  // now (poly) e^{-x} = d^q/dx^q (x^q e^{-x}); multiply back by e^x
  for (int k = 0; k < p; ++k) poly = poly_derivative(poly);
  return poly_eval(poly, x);
}

// --------------------------------------------------------------------------
// Brute-force Cartesian quadrature over R^3
// --------------------------------------------------------------------------

/// Composite Gauss product rule over a box with per-axis panel break points;
/// panels should isolate cusp locations (nuclei) on their boundaries.
inline double integrate_r3(const std::function<double(const specbound::Vec3&)>& f,
                           std::vector<double> xbreaks, std::vector<double> ybreaks,
                           std::vector<double> zbreaks, int order = 12) {
  const specbound::QuadRule rule = specbound::gauss_legendre(order);
  const auto line = [&](const std::vector<double>& breaks) {
    std::vector<std::pair<double, double>> nw;
    for (size_t p = 0; p + 1 < breaks.size(); ++p) {
      const double c = 0.5 * (breaks[p + 1] - breaks[p]);
      const double mid = 0.5 * (breaks[p + 1] + breaks[p]);
      for (int i = 0; i < rule.order(); ++i)
        nw.emplace_back(mid + c * rule.nodes[i], c * rule.weights[i]);
    }
    return nw;
  };
  const auto xs = line(xbreaks), ys = line(ybreaks), zs = line(zbreaks);
  double total = 0.0;
  for (const auto& [x, wx] : xs)
    for (const auto& [y, wy] : ys) {
      double s = 0.0;
      for (const auto& [z, wz] : zs) s += wz * f({x, y, z});
      total += wx * wy * s;
    }
  return total;
}

/// Geometric break points around a set of centers along one axis.
inline std::vector<double> axis_breaks(std::vector<double> centers, double extent) {
  std::vector<double> b;
  for (double c : centers)
    for (double d : {-8.0, -4.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 4.0, 8.0})
      b.push_back(c + d);
  for (double c : centers) {
    b.push_back(c - extent);
    b.push_back(c + extent);
  }
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end(),
                      [](double u, double v) { return std::abs(u - v) < 1e-12; }),
          b.end());
  const double lo = *std::min_element(b.begin(), b.end());
  const double hi = *std::max_element(b.begin(), b.end());
  std::vector<double> out;
  for (double v : b)
    if (v >= lo - 1e-12 && v <= hi + 1e-12) out.push_back(v);
  return out;
}

// --------------------------------------------------------------------------
// Sphere quadrature (exact for low-degree harmonic polynomials)
// --------------------------------------------------------------------------

/// Integral over the unit sphere via Gauss in cos(theta) and a uniform
/// trapezoid in phi; exact for spherical polynomials of degree < 2 n_theta.
inline double integrate_sphere(const std::function<double(double, double)>& f_theta_phi,
                               int n_theta = 24, int n_phi = 48) {
  const specbound::QuadRule rule = specbound::gauss_legendre(n_theta);
  double total = 0.0;
  for (int i = 0; i < n_theta; ++i) {
    const double theta = std::acos(rule.nodes[i]);
    double s = 0.0;
    for (int k = 0; k < n_phi; ++k) s += f_theta_phi(theta, 2.0 * kPi * k / n_phi);
    total += rule.weights[i] * s * (2.0 * kPi / n_phi);
  }
  return total;
}

// --------------------------------------------------------------------------
// Closed forms
// --------------------------------------------------------------------------

/// 1s-1s overlap of unit-exponent hydrogenic functions at separation w.
inline double slater_1s_overlap(double w) {
  return std::exp(-w) * (1.0 + w + w * w / 3.0);
}

/// The paper-table closed forms for the lowest j = 1 window bounds.
inline double h2_j1_closed_form(double R) {
  return -0.75 * (1.0 + slater_1s_overlap(2.0 * R)) - 0.5;
}
inline double h3_j1_closed_form(double R) {
  return -9.0 / 8.0 * (1.0 + 2.0 * slater_1s_overlap(3.0 * R)) - 9.0 / 8.0;
}

/// E_k(s) = integral over [1, inf) of xi^k e^{-s xi} d xi, by the stable
/// upward recurrence E_k = (e^{-s} + k E_{k-1}) / s.
inline double exp_moment(int k, double s) {
  double e = std::exp(-s) / s;
  for (int i = 1; i <= k; ++i) e = (std::exp(-s) + i * e) / s;
  return e;
}

/// Rayleigh quotient of the two-center trial exp(-a xi)(1 + b eta^2) (with
/// a = alpha R / 2, b = beta R^2 / 4) assembled from the Dirichlet form and
/// the exp_moment recurrence; fully independent of the analytic-Laplacian
/// route in the library.
inline double trial_mean_closed_form(double alpha, double beta, double R) {
  const double a = 0.5 * alpha * R;
  const double b = 0.25 * beta * R * R;
  const double s = 2.0 * a;
  const auto E = [&](int k) { return exp_moment(k, s); };
  // eta moments of (1 + b eta^2)^2 and derivative pieces over [-1, 1]
  const auto B = [&](int k) { return (k % 2 == 0) ? 2.0 / (k + 1.0) : 0.0; };

  // norm: (xi^2 - eta^2)(1 + b eta^2)^2
  const double q0 = B(0) + 2.0 * b * B(2) + b * b * B(4);  // integral (1+b e^2)^2
  const double q2 = B(2) + 2.0 * b * B(4) + b * b * B(6);  // same, weighted e^2
  const double norm = E(2) * q0 - E(0) * q2;

  // kinetic via the Dirichlet form:
  // (2/R^2) [ (xi^2-1) (d_xi psi)^2 + (1-eta^2) (d_eta psi)^2 ]
  const double kin_xi = a * a * (E(2) - E(0)) * q0;
  const double kin_eta = 4.0 * b * b * (B(2) - B(4)) * E(0);
  const double kinetic = (2.0 / (R * R)) * (kin_xi + kin_eta);

  // potential: -(4 xi / R) (1 + b eta^2)^2
  const double potential = -(4.0 / R) * E(1) * q0;

  return (kinetic + potential) / norm;
}

}  // namespace oracles
