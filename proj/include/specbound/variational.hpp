#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "specbound/geometry.hpp"
#include "specbound/quadrature.hpp"

namespace specbound {

struct TempleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two-center trial family psi = exp(-alpha R xi / 2)(1 + beta R^2 eta^2 / 4)
/// for the n = 2, Z1 = Z2 = 1 Hamiltonian at internuclear distance R.
struct TrialParams {
  double alpha = 1.0;
  double beta = 0.0;
  double R = 1.0;
};

struct RayleighResult {
  double norm2 = 0.0;  // <psi, psi>
  double mean = 0.0;   // <psi, A psi> / <psi, psi>, hartree
};

struct TempleInput {
  double mean = 0.0;           // <psi, A psi>, psi normalized
  double second_moment = 0.0;  // <psi, A^2 psi>
  double mu2_lb = 0.0;         // lower bound to the second eigenvalue
};

namespace detail {

constexpr double kPi = 3.14159265358979323846;

/// (A psi) * (xi^2 - eta^2) * exp(+a xi), a polynomial in (xi, eta):
/// the prolate m = 0 Laplacian applied to the trial plus the Coulomb term
/// 1/r1 + 1/r2 = 4 xi / (R (xi^2 - eta^2)).
inline double trial_apsi_poly(double a, double b, double R, double xi, double eta) {
  const double one_beta = 1.0 + b * eta * eta;
  return (2.0 * a / (R * R)) * one_beta * (2.0 * xi - a * (xi * xi - 1.0)) -
         (4.0 * b / (R * R)) * (1.0 - 3.0 * eta * eta) - (4.0 * xi / R) * one_beta;
}

inline double trial_value(double a, double b, double xi, double eta) {
  return std::exp(-a * xi) * (1.0 + b * eta * eta);
}

/// Panel edges geometrically graded from `inner` toward 0, then appended as
/// offsets from `origin`; used to resolve the integrable corner singularity
/// of |A psi|^2 at (xi, eta) = (1, +-1).
inline std::vector<double> graded_edges(double origin, double direction, double inner,
                                        double outer) {
  std::vector<double> edges;
  edges.push_back(origin);
  double u = inner;
  while (u < outer) {
    edges.push_back(origin + direction * u);
    u *= 2.0;
  }
  edges.push_back(origin + direction * outer);
  return edges;
}

/// Integrate f(xi, eta) over [1, xi_max] x [-1, 1] with grading toward
/// xi = 1 and eta = +-1.
template <class F>
double corner_graded_integral(F&& f, double xi_decay, double delta, int order) {
  const QuadRule rule = gauss_legendre(order);
  const double xi_max = 1.0 + std::max(40.0 / xi_decay, 8.0);
  const std::vector<double> xi_edges = graded_edges(1.0, 1.0, delta, xi_max - 1.0);
  std::vector<double> eta_edges_half = graded_edges(1.0, -1.0, delta, 1.0);  // 1 -> 0

  std::vector<double> eta_nodes, eta_weights;
  for (size_t p = 0; p + 1 < eta_edges_half.size(); ++p) {
    for (int sgn : {-1, 1}) {
      const double a = std::min(sgn * eta_edges_half[p], sgn * eta_edges_half[p + 1]);
      const double b = std::max(sgn * eta_edges_half[p], sgn * eta_edges_half[p + 1]);
      const double c = 0.5 * (b - a), mid = 0.5 * (a + b);
      for (int i = 0; i < rule.order(); ++i) {
        eta_nodes.push_back(mid + c * rule.nodes[i]);
        eta_weights.push_back(c * rule.weights[i]);
      }
    }
  }

  double total = 0.0;
  for (size_t p = 0; p + 1 < xi_edges.size(); ++p) {
    const double a = xi_edges[p], b = xi_edges[p + 1];
    const double c = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (int i = 0; i < rule.order(); ++i) {
      const double xi = mid + c * rule.nodes[i];
      double inner = 0.0;
      for (size_t k = 0; k < eta_nodes.size(); ++k) inner += eta_weights[k] * f(xi, eta_nodes[k]);
      total += c * rule.weights[i] * inner;
    }
  }
  return total;
}

}  // namespace detail

/// <psi, psi> and the Rayleigh quotient <psi, A psi>/<psi, psi> of the trial
/// family, with A psi formed analytically in spheroidal coordinates and the
/// eta integral exact (the integrands are low-degree polynomials in eta).
inline RayleighResult rayleigh(const TrialParams& t, const QuadratureSettings& qs = {}) {
  if (!(t.alpha > 0.0)) throw std::domain_error("rayleigh: need alpha > 0");
  if (!(t.R > 0.0)) throw std::domain_error("rayleigh: need R > 0");
  const double a = 0.5 * t.alpha * t.R;
  const double b = 0.25 * t.beta * t.R * t.R;
  const double pref = detail::kPi * t.R * t.R * t.R / 4.0;

  const QuadRule eta_rule = gauss_legendre(16);  // exact: eta-degree <= 6
  const auto eta_sum = [&](double xi, auto&& g) {
    double s = 0.0;
    for (int i = 0; i < eta_rule.order(); ++i)
      s += eta_rule.weights[i] * g(xi, eta_rule.nodes[i]);
    return s;
  };

  const double decay = 2.0 * a;
  const double norm2 = integrate_xi(
      [&](double xi) {
        return eta_sum(xi, [&](double x, double e) {
          const double v = detail::trial_value(a, b, x, e);
          return (x * x - e * e) * v * v;
        });
      },
      decay, qs.tol, qs.xi_order, qs.max_panels);
  const double action = integrate_xi(
      [&](double xi) {
        return eta_sum(xi, [&](double x, double e) {
          return (1.0 + b * e * e) * std::exp(-2.0 * a * x) *
                 detail::trial_apsi_poly(a, b, t.R, x, e);
        });
      },
      decay, qs.tol, qs.xi_order, qs.max_panels);

  RayleighResult res;
  res.norm2 = pref * norm2;
  res.mean = action / norm2;
  return res;
}

/// <psi, A^2 psi>/<psi, psi> computed as |A psi|^2 / |psi|^2. The squared
/// Coulomb singularity at the nuclei becomes a 1/(xi^2 - eta^2) corner factor,
/// handled by panels graded toward (1, +-1).
inline double second_moment(const TrialParams& t, const QuadratureSettings& qs = {},
                            double grading_floor = 1e-12) {
  if (!(t.alpha > 0.0)) throw std::domain_error("second_moment: need alpha > 0");
  const double a = 0.5 * t.alpha * t.R;
  const double b = 0.25 * t.beta * t.R * t.R;

  const double num = detail::corner_graded_integral(
      [&](double xi, double eta) {
        const double p = detail::trial_apsi_poly(a, b, t.R, xi, eta);
        return std::exp(-2.0 * a * xi) * p * p / (xi * xi - eta * eta);
      },
      2.0 * a, grading_floor, 12);
  const double den = detail::corner_graded_integral(
      [&](double xi, double eta) {
        const double v = detail::trial_value(a, b, xi, eta);
        return (xi * xi - eta * eta) * v * v;
      },
      2.0 * a, grading_floor, 12);
  (void)qs;
  return num / den;
}

/// Temple's inequality: mu1 >= mean - variance / (mu2_lb - mean), valid only
/// when mean < mu2_lb. Violations raise TempleError rather than returning a
/// silent non-bound.
inline double temple_bound(const TempleInput& in) {
  const double variance = in.second_moment - in.mean * in.mean;
  if (variance < -1e-10 * std::max(1.0, in.mean * in.mean))
    throw TempleError("temple_bound: negative variance");
  if (!(in.mean < in.mu2_lb))
    throw TempleError("temple_bound: precondition <psi, A psi> < mu2_lb fails");
  return in.mean - std::max(variance, 0.0) / (in.mu2_lb - in.mean);
}

namespace detail {

struct SimplexResult {
  std::array<double, 2> x{};
  double value = 0.0;
  int evaluations = 0;
};

/// Plain Nelder-Mead on R^2 with fixed coefficients; deterministic.
template <class F>
SimplexResult nelder_mead(F&& f, std::array<double, 2> start, double step, double ftol,
                          int max_iter) {
  struct Point {
    std::array<double, 2> x;
    double v;
  };
  int evals = 0;
  const auto eval = [&](const std::array<double, 2>& x) {
    ++evals;
    return f(x);
  };
  std::array<Point, 3> s;
  s[0] = {start, eval(start)};
  s[1] = {{start[0] + step, start[1]}, 0.0};
  s[1].v = eval(s[1].x);
  s[2] = {{start[0], start[1] + step}, 0.0};
  s[2].v = eval(s[2].x);

  for (int it = 0; it < max_iter; ++it) {
    std::sort(s.begin(), s.end(), [](const Point& a, const Point& b) { return a.v < b.v; });
    if (std::abs(s[2].v - s[0].v) <= ftol * (std::abs(s[0].v) + ftol)) break;
    const std::array<double, 2> centroid{0.5 * (s[0].x[0] + s[1].x[0]),
                                         0.5 * (s[0].x[1] + s[1].x[1])};
    const auto at = [&](double coef) {
      return std::array<double, 2>{centroid[0] + coef * (centroid[0] - s[2].x[0]),
                                   centroid[1] + coef * (centroid[1] - s[2].x[1])};
    };
    const auto xr = at(1.0);
    const double fr = eval(xr);
    if (fr < s[0].v) {
      const auto xe = at(2.0);
      const double fe = eval(xe);
      if (fe < fr)
        s[2] = {xe, fe};
      else
        s[2] = {xr, fr};
    } else if (fr < s[1].v) {
      s[2] = {xr, fr};
    } else {
      const auto xc = at(fr < s[2].v ? 0.5 : -0.5);
      const double fc = eval(xc);
      if (fc < std::min(fr, s[2].v)) {
        s[2] = {xc, fc};
      } else {
        for (int i = 1; i < 3; ++i) {
          s[i].x = {0.5 * (s[i].x[0] + s[0].x[0]), 0.5 * (s[i].x[1] + s[0].x[1])};
          s[i].v = eval(s[i].x);
        }
      }
    }
  }
  std::sort(s.begin(), s.end(), [](const Point& a, const Point& b) { return a.v < b.v; });
  return {s[0].x, s[0].v, evals};
}

}  // namespace detail

struct UpperBoundResult {
  double alpha = 0.0;
  double beta = 0.0;
  double value = 0.0;  // hartree
  int evaluations = 0;
};

/// Variational upper bound mu1_UB(R): Nelder-Mead descent of the Rayleigh
/// quotient from a fixed 3x3 multistart grid.
inline UpperBoundResult optimize_upper_bound(double R, const QuadratureSettings& qs = {}) {
  if (!(R > 0.0)) throw std::domain_error("optimize_upper_bound: need R > 0");
  const auto objective = [&](const std::array<double, 2>& x) {
    if (x[0] <= 1e-3) return 1e6 + std::abs(x[0]);
    return rayleigh({x[0], x[1], R}, qs).mean;
  };
  UpperBoundResult best;
  best.value = 1e300;
  for (double alpha0 : {0.8, 1.2, 1.6})
    for (double beta0 : {-0.2, 0.0, 0.3}) {
      const auto r = detail::nelder_mead(objective, {alpha0, beta0}, 0.15, 1e-8, 250);
      best.evaluations += r.evaluations;
      if (r.value < best.value) {
        best.value = r.value;
        best.alpha = r.x[0];
        best.beta = r.x[1];
      }
    }
  return best;
}

/// Best Temple lower bound over the trial family for a given mu2 lower
/// bound: maximizes mean - var/(mu2_lb - mean) subject to the Temple
/// precondition, seeded from the same multistart grid plus the Rayleigh
/// optimum.
inline UpperBoundResult optimize_temple(double R, double mu2_lb, const QuadratureSettings& qs = {},
                                        double grading_floor = 1e-10) {
  if (!(R > 0.0)) throw std::domain_error("optimize_temple: need R > 0");
  const auto objective = [&](const std::array<double, 2>& x) {
    if (x[0] <= 1e-3) return 1e6 + std::abs(x[0]);
    const TrialParams t{x[0], x[1], R};
    const RayleighResult ray = rayleigh(t, qs);
    if (!(ray.mean < mu2_lb)) return 1e6 + (ray.mean - mu2_lb);
    const double m2 = second_moment(t, qs, grading_floor);
    return -temple_bound({ray.mean, m2, mu2_lb});
  };

  const UpperBoundResult ub = optimize_upper_bound(R, qs);
  UpperBoundResult best;
  best.value = 1e300;
  std::vector<std::array<double, 2>> starts = {{ub.alpha, ub.beta}};
  for (double alpha0 : {0.8, 1.6}) starts.push_back({alpha0, 0.0});
  for (const auto& s0 : starts) {
    const auto r = detail::nelder_mead(objective, s0, 0.08, 1e-8, 160);
    best.evaluations += r.evaluations;
    if (r.value < best.value) {
      best.value = r.value;
      best.alpha = r.x[0];
      best.beta = r.x[1];
    }
  }
  best.value = -best.value;
  return best;
}

// ---------------------------------------------------------------------------
// Upper bound for the equilateral three-center ion
// ---------------------------------------------------------------------------

namespace detail {

/// Closed 1s-1s forms at shared exponent c and separation R (w = cR):
/// overlap, the attraction of the pair density to one of its own centers,
/// and the attraction of a one-center density to the other center.
inline double slater_overlap(double w) { return std::exp(-w) * (1.0 + w + w * w / 3.0); }
inline double slater_attraction_cross(double c, double w) { return c * (1.0 + w) * std::exp(-w); }
inline double slater_attraction_far(double R, double w) {
  return (1.0 - std::exp(-2.0 * w) * (1.0 + w)) / R;
}

/// Three-center attraction <1s_a | 1/r_c | 1s_b> for the equilateral
/// triangle of side R, by spherical quadrature about the operator center:
/// the 1/r factor cancels against the volume element, leaving radial panels
/// split at the kink sphere r = R where the integration sphere crosses the
/// other two nuclei.
inline double three_center_attraction(double c, double R, double tol, int n_theta = 40,
                                      int n_phi = 80) {
  const Vec3 x1{R, 0.0, 0.0};
  const Vec3 x2{0.5 * R, 0.8660254037844386 * R, 0.0};

  const QuadRule cos_rule = gauss_legendre(n_theta);
  std::vector<Vec3> dirs;
  std::vector<double> dir_w;
  dirs.reserve(static_cast<size_t>(n_theta) * n_phi);
  for (int i = 0; i < n_theta; ++i) {
    const double ct = cos_rule.nodes[i];
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    for (int k = 0; k < n_phi; ++k) {
      const double phi = 2.0 * kPi * k / n_phi;
      dirs.push_back({st * std::cos(phi), st * std::sin(phi), ct});
      dir_w.push_back(cos_rule.weights[i] * 2.0 * kPi / n_phi);
    }
  }

  const auto shell = [&](double r) {
    double s = 0.0;
    for (size_t d = 0; d < dirs.size(); ++d) {
      const Vec3 p = dirs[d] * r;
      s += dir_w[d] * std::exp(-c * ((p - x1).norm() + (p - x2).norm()));
    }
    return r * s;
  };

  const QuadRule finite_rule = gauss_legendre(24);
  const double cuts[] = {0.0, 0.3, 0.6, 0.85, 0.95, 1.0};
  double inner = 0.0;
  for (int p = 0; p + 1 < 6; ++p)
    inner += integrate_interval(shell, finite_rule, cuts[p] * R, cuts[p + 1] * R);
  const double tail = integrate_semi_infinite(shell, R, 2.0 * c, tol, 24);

  const double norm = c * c * c / kPi;
  return norm * (inner + tail);
}

}  // namespace detail

struct H3UpperBound {
  double exponent = 1.0;
  double value = 0.0;  // hartree
};

/// Variational upper bound for the equilateral three-proton ion from the
/// symmetric trial sum of three 1s functions sharing one exponent. All
/// matrix elements are closed forms except the three-center attraction.
inline H3UpperBound h3_upper_bound(double R, const QuadratureSettings& qs = {}) {
  if (!(R > 0.0)) throw std::domain_error("h3_upper_bound: need R > 0");
  const double tol = std::max(qs.tol, 1e-9);
  const auto energy = [&](double c) {
    const double w = c * R;
    const double s = detail::slater_overlap(w);
    const double k = detail::slater_attraction_cross(c, w);
    const double j = detail::slater_attraction_far(R, w);
    const double L = detail::three_center_attraction(c, R, tol);
    // <phi1 A phi1> + 2 <phi1 A phi2>, over the norm 1 + 2S
    const double diag = 0.5 * c * c - c - 2.0 * j;
    const double cross = -0.5 * c * c * s + c * k - 2.0 * k - L;
    return (diag + 2.0 * cross) / (1.0 + 2.0 * s);
  };

  // golden-section minimization over the exponent
  const double gr = 0.6180339887498949;
  double lo = 0.3, hi = 3.8;
  double m1 = hi - gr * (hi - lo), m2 = lo + gr * (hi - lo);
  double f1 = energy(m1), f2 = energy(m2);
  for (int it = 0; it < 48 && (hi - lo) > 1e-7; ++it) {
    if (f1 <= f2) {
      hi = m2;
      m2 = m1;
      f2 = f1;
      m1 = hi - gr * (hi - lo);
      f1 = energy(m1);
    } else {
      lo = m1;
      m1 = m2;
      f1 = f2;
      m2 = lo + gr * (hi - lo);
      f2 = energy(m2);
    }
  }
  const double c = 0.5 * (lo + hi);
  return {c, energy(c)};
}

}  // namespace specbound
