#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace specbound {

/// Thrown when a composite scheme fails to converge; carries both the coarse
/// and the refined estimate so callers can inspect the discrepancy.
struct QuadratureError : std::runtime_error {
  double coarse_estimate;
  double refined_estimate;
  QuadratureError(const std::string& what, double coarse, double refined)
      : std::runtime_error(what), coarse_estimate(coarse), refined_estimate(refined) {}
};

/// Nodes and weights of a quadrature rule together with its target interval.
/// Rules produced by gauss_legendre() live on [-1, 1].
struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double lo = -1.0;
  double hi = 1.0;
  bool semi_infinite = false;

  int order() const { return static_cast<int>(nodes.size()); }
};

/// Gauss-Legendre rule of the given order on [-1, 1]. Nodes are the roots of
/// the Legendre polynomial P_order, found by Newton iteration on the
/// three-term recurrence; weights are 2 / ((1 - x^2) P'(x)^2).
inline QuadRule gauss_legendre(int order) {
  if (order < 1 || order > 512)
    throw std::domain_error("gauss_legendre: order must be in [1, 512]");
  QuadRule rule;
  rule.nodes.assign(order, 0.0);
  rule.weights.assign(order, 0.0);
  const double pi = 3.14159265358979323846;
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    bool converged = false;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= order; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      // order == 1: p1 = x, derivative is 1
      dp = (order == 1) ? 1.0 : order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw QuadratureError("gauss_legendre: Newton iteration stalled", x, x);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -std::abs(x);
    rule.nodes[order - 1 - i] = std::abs(x);
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  return rule;
}

/// Apply a [-1, 1] rule to the interval [a, b].
template <class F>
double integrate_interval(F&& f, const QuadRule& rule, double a, double b) {
  const double c = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double s = 0.0;
  for (int i = 0; i < rule.order(); ++i)
    s += rule.weights[i] * f(mid + c * rule.nodes[i]);
  return c * s;
}

/// Quadrature knobs shared by the integral engines. eta_order is the fixed
/// Gauss order across [-1, 1]; xi_order the per-panel order on the
/// semi-infinite coordinate.
struct QuadratureSettings {
  int eta_order = 64;
  int xi_order = 48;
  double tol = 1e-11;
  int max_panels = 64;
};

namespace detail {

template <class F>
double semi_infinite_pass(F&& f, double start, double h0, int order, double tol,
                          int max_panels, double& sum_abs) {
  const QuadRule rule = gauss_legendre(order);
  double acc = 0.0;
  sum_abs = 0.0;
  double x = start;
  double w = h0;
  for (int k = 0; k < max_panels; ++k) {
    const double p = integrate_interval(f, rule, x, x + w);
    acc += p;
    sum_abs += std::abs(p);
    x += w;
    w *= 2.0;
    if (k >= 2 && std::abs(p) <= tol * std::max(sum_abs, 1e-300)) return acc;
  }
  throw QuadratureError("semi-infinite quadrature: panel budget exhausted", acc, acc);
}

}  // namespace detail

/// Integrate f over [start, inf) for integrands decaying at least like
/// exp(-decay * x). Composite Gauss panels of geometrically growing width
/// h, 2h, 4h, ... with h ~ 1/decay, extended until the last panel is
/// negligible; the whole scheme is then rerun with h/2 and doubled order and
/// the two results must agree within tol (the refined value is returned).
template <class F>
double integrate_semi_infinite(F&& f, double start, double decay, double tol,
                               int order = 48, int max_panels = 64) {
  if (!(decay > 0.0)) throw std::domain_error("integrate_semi_infinite: decay must be positive");
  if (!(tol > 0.0)) throw std::domain_error("integrate_semi_infinite: tol must be positive");
  const double h = 1.0 / decay;
  double abs_coarse = 0.0, abs_fine = 0.0;
  const double coarse = detail::semi_infinite_pass(f, start, h, order, tol, max_panels, abs_coarse);
  const double fine =
      detail::semi_infinite_pass(f, start, 0.5 * h, 2 * order, tol, 2 * max_panels, abs_fine);
  const double scale = std::max(std::abs(fine), 1e-2 * abs_fine);
  if (std::abs(coarse - fine) > tol * std::max(scale, 1e-300))
    throw QuadratureError("semi-infinite quadrature: refinement disagreement", coarse, fine);
  return fine;
}

/// The xi-integral of the two-center change of variables: f on [1, inf).
template <class F>
double integrate_xi(F&& f, double decay, double tol, int order = 48, int max_panels = 64) {
  return integrate_semi_infinite(f, 1.0, decay, tol, order, max_panels);
}

}  // namespace specbound
