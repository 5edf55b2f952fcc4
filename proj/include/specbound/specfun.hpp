#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "specbound/geometry.hpp"

namespace specbound {

namespace detail {

inline double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

/// Modern-convention generalized Laguerre L_n^alpha by three-term recurrence.
inline double laguerre_generalized(int n, int alpha, double x) {
  if (n == 0) return 1.0;
  double l0 = 1.0;
  double l1 = 1.0 + alpha - x;
  for (int k = 1; k < n; ++k) {
    const double l2 = ((2.0 * k + 1.0 + alpha - x) * l1 - (k + alpha) * l0) / (k + 1.0);
    l0 = l1;
    l1 = l2;
  }
  return l1;
}

/// sqrt((2l+1)/(4 pi) * (l-m)!/(l+m)!), the orthonormal harmonic prefactor.
inline double sph_harm_norm(int l, int m) {
  const double pi = 3.14159265358979323846;
  double ratio = 1.0;
  for (int k = l - m + 1; k <= l + m; ++k) ratio *= k;
  return std::sqrt((2.0 * l + 1.0) / (4.0 * pi) / ratio);
}

}  // namespace detail

/// Associated Legendre P_l^m(x) in the positive convention (no
/// Condon-Shortley phase), by upward recurrence in l.
inline double assoc_legendre(int l, int m, double x) {
  if (m < 0 || m > l) throw std::domain_error("assoc_legendre: need 0 <= m <= l");
  if (std::abs(x) > 1.0) throw std::domain_error("assoc_legendre: need |x| <= 1");
  double pmm = 1.0;
  if (m > 0) {
    const double s = std::sqrt((1.0 - x) * (1.0 + x));
    double odd = 1.0;
    for (int k = 1; k <= m; ++k) {
      pmm *= odd * s;
      odd += 2.0;
    }
  }
  if (l == m) return pmm;
  double pmm1 = x * (2.0 * m + 1.0) * pmm;
  for (int ll = m + 2; ll <= l; ++ll) {
    const double p = ((2.0 * ll - 1.0) * x * pmm1 - (ll + m - 1.0) * pmm) / (ll - m);
    pmm = pmm1;
    pmm1 = p;
  }
  return pmm1;
}

/// Associated Laguerre L_q^p(x) in the Rodrigues convention
/// L_q(x) = e^x d^q/dx^q (x^q e^-x), L_q^p = d^p/dx^p L_q (degree q - p).
/// Evaluated through the generalized-Laguerre recurrence, not the factorial
/// expansion: L_q^p = (-1)^p q! L_{q-p}^{(p)}.
inline double assoc_laguerre(int q, int p, double x) {
  if (p < 0 || p > q) throw std::domain_error("assoc_laguerre: need 0 <= p <= q");
  if (x < 0.0) throw std::domain_error("assoc_laguerre: need x >= 0");
  const double sign = (p % 2 == 0) ? 1.0 : -1.0;
  return sign * detail::factorial(q) * detail::laguerre_generalized(q - p, p, x);
}

/// Real spherical harmonic, orthonormal on the unit sphere. The label m
/// selects the flavor: m = 0 is the zonal harmonic, m > 0 carries cos(m phi),
/// m < 0 carries sin(|m| phi).
inline double real_sph_harm(int l, int m, double theta, double phi) {
  const int am = std::abs(m);
  if (l < 0 || am > l) throw std::domain_error("real_sph_harm: need |m| <= l");
  const double base = detail::sph_harm_norm(l, am) * assoc_legendre(l, am, std::cos(theta));
  if (m == 0) return base;
  const double sqrt2 = 1.4142135623730951;
  return m > 0 ? sqrt2 * base * std::cos(m * phi) : sqrt2 * base * std::sin(am * phi);
}

/// Normalized hydrogenic radial function: integral of R^2 r^2 dr is 1 and
/// R > 0 as r -> 0+. The prefactor pairs with the assoc_laguerre convention
/// above; the leading minus absorbs the (-1)^(2l+1) of the odd derivative.
inline double radial_R(int j, int l, int Z, double r) {
  if (j < 1 || l < 0 || l > j - 1) throw std::domain_error("radial_R: need 0 <= l <= j-1");
  if (Z < 1) throw std::domain_error("radial_R: need Z >= 1");
  if (r < 0.0) throw std::domain_error("radial_R: need r >= 0");
  const double rho = 2.0 * Z * r / j;
  const double jd = j;
  const double fjl = detail::factorial(j + l);
  const double norm =
      std::sqrt(4.0 * detail::factorial(j - l - 1) / (jd * jd * jd * jd * fjl * fjl * fjl)) *
      std::pow(static_cast<double>(Z), 1.5);
  return -norm * std::pow(rho, l) * std::exp(-0.5 * rho) * assoc_laguerre(j + l, 2 * l + 1, rho);
}

/// One hydrogenic basis function: center index into the nuclear list, quantum
/// numbers (j, l, m) with the real-harmonic m label, and effective charge.
/// `eigenvalue` is -n Z^2 / (2 j^2) hartree; the window builder fills it since
/// it depends on the number of nuclei n.
struct HydrogenicOrbital {
  int center = 0;
  int j = 1;
  int l = 0;
  int m = 0;
  int Z = 1;
  double eigenvalue = 0.0;
};

/// psi evaluated at `point` with polar coordinates taken about
/// `center_position`. Finite everywhere; the r = 0 value is the limit.
inline double orbital_value(const HydrogenicOrbital& orb, const Vec3& point,
                            const Vec3& center_position) {
  const Vec3 d = point - center_position;
  const double r = d.norm();
  if (r < 1e-300) {
    if (orb.l > 0) return 0.0;
    return radial_R(orb.j, 0, orb.Z, 0.0) * real_sph_harm(0, 0, 0.0, 0.0);
  }
  const double ct = std::clamp(d.z / r, -1.0, 1.0);
  const double theta = std::acos(ct);
  const double phi = std::atan2(d.y, d.x);
  return radial_R(orb.j, orb.l, orb.Z, r) * real_sph_harm(orb.l, orb.m, theta, phi);
}

}  // namespace specbound
