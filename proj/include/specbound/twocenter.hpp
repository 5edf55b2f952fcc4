#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "specbound/geometry.hpp"
#include "specbound/linalg.hpp"
#include "specbound/quadrature.hpp"
#include "specbound/specfun.hpp"

namespace specbound {

/// Nuclear positions (bohr) and integer charges. The electron-count
/// parameter of the fragment decomposition equals the number of nuclei.
struct NuclearGeometry {
  std::vector<Vec3> positions;
  std::vector<int> charges;

  NuclearGeometry(std::vector<Vec3> pos, std::vector<int> q)
      : positions(std::move(pos)), charges(std::move(q)) {
    if (positions.empty()) throw std::invalid_argument("NuclearGeometry: need at least one nucleus");
    if (positions.size() != charges.size())
      throw std::invalid_argument("NuclearGeometry: positions/charges size mismatch");
    for (int z : charges)
      if (z < 1) throw std::invalid_argument("NuclearGeometry: charges must be positive integers");
    for (size_t i = 0; i < positions.size(); ++i)
      for (size_t j = i + 1; j < positions.size(); ++j)
        if ((positions[i] - positions[j]).norm() == 0.0)
          throw std::invalid_argument("NuclearGeometry: coincident nuclei");
  }

  int n() const { return static_cast<int>(positions.size()); }
};

/// Orthogonal map from global to pair coordinates: the frame's z-axis is the
/// internuclear direction, the origin sits at the midpoint, so nucleus k maps
/// to (0,0,-R/2) and nucleus l to (0,0,+R/2).
struct PairFrame {
  Mat3 rotation;
  double separation = 0.0;
  Vec3 midpoint;

  Vec3 to_pair(const Vec3& global) const { return rotation * (global - midpoint); }
};

/// Prolate spheroidal coordinates of the pair frame: xi = (r_k + r_l)/R,
/// eta = (r_k - r_l)/R, phi the azimuth about the internuclear axis.
struct SpheroidalPoint {
  double xi = 1.0;
  double eta = 0.0;
  double phi = 0.0;
};

namespace detail {

/// Completion rule for a right-handed frame with given z-axis: take the
/// global axis least parallel to z (lowest index on ties), orthonormalize.
inline void complete_frame(const Vec3& z, Vec3& x, Vec3& y) {
  const double ax = std::abs(z.x), ay = std::abs(z.y), az = std::abs(z.z);
  Vec3 seed{1.0, 0.0, 0.0};
  if (ay < ax || az < ax) seed = (ay <= az) ? Vec3{0.0, 1.0, 0.0} : Vec3{0.0, 0.0, 1.0};
  x = (seed - z * seed.dot(z)).normalized();
  y = z.cross(x);
}

}  // namespace detail

inline PairFrame pair_frame(const NuclearGeometry& g, int k, int l) {
  if (k == l) throw std::invalid_argument("pair_frame: need two distinct centers");
  const Vec3 d = g.positions[l] - g.positions[k];
  const double sep = d.norm();
  if (sep == 0.0) throw std::invalid_argument("pair_frame: coincident nuclei");
  const Vec3 zax = d / sep;
  Vec3 xax, yax;
  detail::complete_frame(zax, xax, yax);
  PairFrame f;
  f.rotation = Mat3::from_rows(xax, yax, zax);
  f.separation = sep;
  f.midpoint = (g.positions[k] + g.positions[l]) * 0.5;
  return f;
}

/// Pair-frame Cartesian point of spheroidal coordinates at separation R.
inline Vec3 spheroidal_to_pair_cartesian(const SpheroidalPoint& p, double separation) {
  const double s =
      0.5 * separation * std::sqrt(std::max(0.0, (p.xi * p.xi - 1.0) * (1.0 - p.eta * p.eta)));
  return {s * std::cos(p.phi), s * std::sin(p.phi), 0.5 * separation * p.xi * p.eta};
}

// ---------------------------------------------------------------------------
// Rotation matrices for real spherical harmonics
// ---------------------------------------------------------------------------

namespace detail {

/// Recursive construction of the real-harmonic rotation matrices D^0..D^lmax
/// for a proper rotation. Index convention: row/col i = m + l with m < 0 the
/// sine harmonics. The base matrix is D^1 in the (m=-1,0,1) = (y,z,x) order.
class RealShRotationBuilder {
 public:
  RealShRotationBuilder(const Mat3& r1_cartesian) {
    // r1_(m,m') indexed by harmonics ordering (y,z,x)
    static const int ax[3] = {1, 2, 0};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r1_[i][j] = r1_cartesian(ax[i], ax[j]);
  }

  std::vector<Mat> build(int lmax) const {
    std::vector<Mat> d(lmax + 1);
    d[0] = Mat(1, 1);
    d[0](0, 0) = 1.0;
    if (lmax == 0) return d;
    d[1] = Mat(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) d[1](i, j) = r1_[i][j];
    for (int l = 2; l <= lmax; ++l) d[l] = next_band(l, d[l - 1]);
    return d;
  }

 private:
  double r1_[3][3];

  double r1(int i, int j) const { return r1_[i + 1][j + 1]; }
  static double entry(const Mat& prev, int l, int a, int b) { return prev(a + l - 1, b + l - 1); }

  double pfun(const Mat& prev, int l, int i, int a, int b) const {
    if (b == l) return r1(i, 1) * entry(prev, l, a, l - 1) - r1(i, -1) * entry(prev, l, a, -l + 1);
    if (b == -l) return r1(i, 1) * entry(prev, l, a, -l + 1) + r1(i, -1) * entry(prev, l, a, l - 1);
    return r1(i, 0) * entry(prev, l, a, b);
  }

  Mat next_band(int l, const Mat& prev) const {
    Mat d(2 * l + 1, 2 * l + 1);
    for (int m = -l; m <= l; ++m) {
      const int am = std::abs(m);
      for (int mp = -l; mp <= l; ++mp) {
        const double denom =
            (std::abs(mp) == l) ? (2.0 * l) * (2.0 * l - 1.0) : (l + mp) * (l - mp + 0.0);
        const double u = std::sqrt((l + m) * (l - m) / denom);
        const double dm0 = (m == 0) ? 1.0 : 0.0;
        const double v =
            0.5 * std::sqrt((1.0 + dm0) * (l + am - 1.0) * (l + am) / denom) * (1.0 - 2.0 * dm0);
        const double w = -0.5 * std::sqrt((l - am - 1.0) * (l - am) / denom) * (1.0 - dm0);

        double val = 0.0;
        if (u != 0.0) val += u * pfun(prev, l, 0, m, mp);
        if (v != 0.0) {
          double vv;
          if (m == 0) {
            vv = pfun(prev, l, 1, 1, mp) + pfun(prev, l, -1, -1, mp);
          } else if (m > 0) {
            const double d1 = (m == 1) ? 1.0 : 0.0;
            vv = pfun(prev, l, 1, m - 1, mp) * std::sqrt(1.0 + d1);
            if (d1 == 0.0) vv -= pfun(prev, l, -1, -m + 1, mp);
          } else {
            const double d1 = (m == -1) ? 1.0 : 0.0;
            vv = pfun(prev, l, -1, -m - 1, mp) * std::sqrt(1.0 + d1);
            if (d1 == 0.0) vv += pfun(prev, l, 1, m + 1, mp);
          }
          val += v * vv;
        }
        if (w != 0.0) {
          const double ww = (m > 0) ? pfun(prev, l, 1, m + 1, mp) + pfun(prev, l, -1, -m - 1, mp)
                                    : pfun(prev, l, 1, m - 1, mp) - pfun(prev, l, -1, -m + 1, mp);
          val += w * ww;
        }
        d(m + l, mp + l) = val;
      }
    }
    return d;
  }
};

}  // namespace detail

/// Rotation matrices D^0..D^lmax for real spherical harmonics: for any
/// orthogonal `rot` (improper allowed), Y_m(rot^-1 u) = sum_m' D^l(m,m') Y_m'(u).
inline std::vector<Mat> real_sh_rotations(int lmax, const Mat3& rot) {
  if (lmax < 0 || lmax > 6) throw std::domain_error("real_sh_rotations: need 0 <= lmax <= 6");
  if (rot.orthogonality_defect() > 1e-10)
    throw std::domain_error("real_sh_rotations: matrix is not orthogonal");
  const bool improper = rot.det() < 0.0;
  const Mat3 proper = improper ? -rot : rot;
  detail::RealShRotationBuilder builder(proper.transposed());
  std::vector<Mat> d = builder.build(lmax);
  if (improper)
    for (int l = 1; l <= lmax; l += 2)
      for (double& x : d[l].a) x = -x;
  return d;
}

inline Mat real_sh_rotation(int l, const Mat3& rot) {
  return real_sh_rotations(l, rot)[l];
}

// ---------------------------------------------------------------------------
// Two-center overlap integrals
// ---------------------------------------------------------------------------

/// An angular-mixed orbital: radial part (j, l, Z) at a center, angular part
/// an arbitrary real-harmonic coefficient vector (global frame, index m + l).
struct MixedOrbital {
  int center = 0;
  int j = 1;
  int l = 0;
  int Z = 1;
  std::vector<double> coeff;
};

inline MixedOrbital to_mixed(const HydrogenicOrbital& orb) {
  MixedOrbital m;
  m.center = orb.center;
  m.j = orb.j;
  m.l = orb.l;
  m.Z = orb.Z;
  m.coeff.assign(2 * orb.l + 1, 0.0);
  m.coeff[orb.m + orb.l] = 1.0;
  return m;
}

/// Shared overlap machinery for one geometry: caches pair frames, their
/// harmonic rotation matrices, and the (shell pair, |m|) theta-integrals.
/// All inner products refer to the hydrogenic picture of the fragment
/// operators: with scaling on, pair separations are n * |x_k - x_l|.
class OverlapEngine {
 public:
  OverlapEngine(const NuclearGeometry& geom, QuadratureSettings settings = {},
                bool use_scaled = true)
      : geom_(geom), qs_(settings), scale_(use_scaled ? geom.n() : 1) {
    eta_rule_ = gauss_legendre(qs_.eta_order);
  }

  const NuclearGeometry& geometry() const { return geom_; }
  const QuadratureSettings& settings() const { return qs_; }

  double overlap(const HydrogenicOrbital& a, const HydrogenicOrbital& b) {
    return overlap_mixed(to_mixed(a), to_mixed(b));
  }

  double overlap_mixed(const MixedOrbital& a, const MixedOrbital& b) {
    if (a.center == b.center) {
      if (a.l != b.l) return 0.0;
      double dot = 0.0;
      for (size_t i = 0; i < a.coeff.size(); ++i) dot += a.coeff[i] * b.coeff[i];
      if (dot == 0.0) return 0.0;
      if (a.Z != b.Z)
        throw std::invalid_argument("overlap: same-center orbitals with different Z");
      return dot * radial_pair_integral(a.Z, a.j, b.j, a.l);
    }

    const FrameData& fd = frame_data(a.center, b.center, std::max(a.l, b.l));
    const double sep = scale_ * fd.frame.separation;

    // re-expand both angular parts in the pair frame
    const std::vector<double> ca = rotate_row(fd.rot[a.l], a.coeff);
    const std::vector<double> cb = rotate_row(fd.rot[b.l], b.coeff);

    const int mmax = std::min(a.l, b.l);
    double total = 0.0;
    for (int m = -mmax; m <= mmax; ++m) {
      const double w = ca[m + a.l] * cb[m + b.l];
      if (w == 0.0) continue;
      total += w * theta_integral(a.Z, a.j, a.l, b.Z, b.j, b.l, std::abs(m), sep);
    }
    return total;
  }

 private:
  struct FrameData {
    PairFrame frame;
    std::vector<Mat> rot;  // D^0..D^lmax of the frame rotation
  };

  const NuclearGeometry& geom_;
  QuadratureSettings qs_;
  int scale_;
  QuadRule eta_rule_;
  std::map<std::pair<int, int>, FrameData> frames_;
  std::map<std::tuple<int, int, int, int>, double> radial_cache_;
  std::map<std::tuple<int, int, int, int, int, int, int, double>, double> theta_cache_;

  const FrameData& frame_data(int k, int l, int lmax) {
    auto it = frames_.find({k, l});
    if (it == frames_.end() || static_cast<int>(it->second.rot.size()) <= lmax) {
      FrameData fd;
      fd.frame = pair_frame(geom_, k, l);
      fd.rot = real_sh_rotations(std::max(lmax, 1), fd.frame.rotation);
      it = frames_.insert_or_assign(std::make_pair(k, l), std::move(fd)).first;
    }
    return it->second;
  }

  static std::vector<double> rotate_row(const Mat& d, const std::vector<double>& coeff) {
    const int dim = d.rows;
    std::vector<double> out(dim, 0.0);
    for (int m = 0; m < dim; ++m) {
      const double c = coeff[m];
      if (c == 0.0) continue;
      for (int mp = 0; mp < dim; ++mp) out[mp] += c * d(m, mp);
    }
    return out;
  }

  double radial_pair_integral(int Z, int ja, int jb, int l) {
    if (ja > jb) std::swap(ja, jb);
    const auto key = std::make_tuple(Z, ja, jb, l);
    auto it = radial_cache_.find(key);
    if (it != radial_cache_.end()) return it->second;
    const double decay = Z * (1.0 / ja + 1.0 / jb);
    const double value = integrate_semi_infinite(
        [&](double r) { return radial_R(ja, l, Z, r) * radial_R(jb, l, Z, r) * r * r; }, 0.0,
        decay, qs_.tol, qs_.xi_order, qs_.max_panels);
    radial_cache_.emplace(key, value);
    return value;
  }

  /// 2 pi (R^3/8) * double integral of (xi^2 - eta^2) R_a Theta_a R_b Theta_b
  /// where Theta = N_lm P_l^m(cos theta) about the respective center. The phi
  /// integral is done by trig orthogonality and is the same 2 pi for both the
  /// m = 0 and the matched cos/sin pairs.
  double theta_integral(int Za, int ja, int la, int Zb, int jb, int lb, int mu, double sep) {
    // swapping the two foci sends cos(theta) -> -cos(theta) on both centers,
    // so the canonicalized integral differs by the parity (-1)^(la+lb)
    double sign = 1.0;
    if (std::make_tuple(Za, ja, la) > std::make_tuple(Zb, jb, lb)) {
      std::swap(Za, Zb);
      std::swap(ja, jb);
      std::swap(la, lb);
      if ((la + lb) % 2 != 0) sign = -1.0;
    }
    const auto key = std::make_tuple(Za, ja, la, Zb, jb, lb, mu, sep);
    auto it = theta_cache_.find(key);
    if (it != theta_cache_.end()) return sign * it->second;

    const double pi = 3.14159265358979323846;
    const double na = detail::sph_harm_norm(la, mu);
    const double nb = detail::sph_harm_norm(lb, mu);
    const double pref = 2.0 * pi * sep * sep * sep / 8.0 * na * nb;

    const double decay = 0.5 * sep * (static_cast<double>(Za) / ja + static_cast<double>(Zb) / jb);
    const auto fxi = [&](double xi) {
      double s = 0.0;
      for (int i = 0; i < eta_rule_.order(); ++i) {
        const double eta = eta_rule_.nodes[i];
        const double ra = 0.5 * sep * (xi + eta);
        const double rb = 0.5 * sep * (xi - eta);
        const double ca = std::clamp((1.0 + xi * eta) / (xi + eta), -1.0, 1.0);
        const double cb = std::clamp((xi * eta - 1.0) / (xi - eta), -1.0, 1.0);
        s += eta_rule_.weights[i] * (xi * xi - eta * eta) * radial_R(ja, la, Za, ra) *
             assoc_legendre(la, mu, ca) * radial_R(jb, lb, Zb, rb) * assoc_legendre(lb, mu, cb);
      }
      return s;
    };
    const double value =
        pref * integrate_xi(fxi, decay, qs_.tol, qs_.xi_order, qs_.max_panels);
    theta_cache_.emplace(key, value);
    return sign * value;
  }
};

/// <psi_a, psi_b> at the geometry's (scaled) separation. Stateless
/// convenience wrapper; batch work should go through OverlapEngine.
inline double overlap_pair(const HydrogenicOrbital& a, const HydrogenicOrbital& b,
                           const NuclearGeometry& geom, bool use_scaled = true,
                           const QuadratureSettings& settings = {}) {
  OverlapEngine engine(geom, settings, use_scaled);
  return engine.overlap(a, b);
}

/// Gram matrix of a basis of hydrogenic orbitals over the geometry.
inline Mat gram_matrix(const std::vector<HydrogenicOrbital>& basis, const NuclearGeometry& geom,
                       const QuadratureSettings& settings = {}) {
  if (basis.empty()) throw std::invalid_argument("gram_matrix: empty basis");
  OverlapEngine engine(geom, settings);
  const int m = static_cast<int>(basis.size());
  Mat g(m, m);
  for (int i = 0; i < m; ++i) {
    g(i, i) = engine.overlap(basis[i], basis[i]);
    for (int j = i + 1; j < m; ++j) {
      const double v = engine.overlap(basis[i], basis[j]);
      g(i, j) = g(j, i) = v;
    }
  }
  return g;
}

}  // namespace specbound
