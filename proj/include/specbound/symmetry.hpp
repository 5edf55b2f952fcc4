#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "specbound/lowerbound.hpp"
#include "specbound/twocenter.hpp"

namespace specbound {

struct GroupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A finite point group: orthogonal matrices acting about `center`.
struct GroupSpec {
  std::string name;
  Vec3 center;
  std::vector<Mat3> elements;

  int order() const { return static_cast<int>(elements.size()); }
};

/// The 8-element group D2h about the given axis: identity, inversion through
/// the center, rotation by pi about the axis and two perpendicular axes,
/// reflection in the three pairwise-spanned planes.
inline GroupSpec d2h_group(const Vec3& axis, const Vec3& center) {
  const Vec3 a = axis.normalized();
  Vec3 b, c;
  detail::complete_frame(a, b, c);

  const auto rot_pi = [](const Vec3& u) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = 2.0 * u[i] * u[j] - (i == j ? 1.0 : 0.0);
    return r;
  };
  const auto reflect = [](const Vec3& normal) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = (i == j ? 1.0 : 0.0) - 2.0 * normal[i] * normal[j];
    return r;
  };

  GroupSpec g;
  g.name = "D2h";
  g.center = center;
  g.elements = {Mat3::identity(), -Mat3::identity(), rot_pi(a),  rot_pi(b),
                rot_pi(c),        reflect(a),        reflect(b), reflect(c)};
  return g;
}

/// Permutation pi with g(x_k) = x_pi(k); throws GroupError if g does not map
/// the nuclear set onto itself within tol.
inline std::vector<int> induced_permutation(const Mat3& g, const Vec3& center,
                                            const NuclearGeometry& geom, double tol = 1e-10) {
  const int n = geom.n();
  std::vector<int> perm(n, -1);
  std::vector<bool> used(n, false);
  for (int k = 0; k < n; ++k) {
    const Vec3 image = g * (geom.positions[k] - center) + center;
    int match = -1;
    for (int j = 0; j < n; ++j) {
      if (used[j]) continue;
      if ((image - geom.positions[j]).norm() <= tol) {
        match = j;
        break;
      }
    }
    if (match < 0 || geom.charges[match] != geom.charges[k])
      throw GroupError("group element does not map the nuclear frame onto itself");
    perm[k] = match;
    used[match] = true;
  }
  return perm;
}

namespace detail {

/// Coefficient route: U(g) psi^k_{jlm} = sum_m' D^l(m, m') psi^{pi(k)}_{jlm'},
/// assembled as the column-coefficient matrix T on the window basis.
inline Mat rep_matrix_coefficient_path(const Mat3& g, const std::vector<int>& perm,
                                       const SpectralWindow& w, const std::vector<Mat>& dmats) {
  const int m = w.size();
  // index of each (center, j, l, m) in the window
  Mat t(m, m);
  for (int col = 0; col < m; ++col) {
    const HydrogenicOrbital& o = w.basis[col];
    const int target = perm[o.center];
    const Mat& d = dmats[o.l];
    for (int row = 0; row < m; ++row) {
      const HydrogenicOrbital& p = w.basis[row];
      if (p.center != target || p.j != o.j || p.l != o.l) continue;
      t(row, col) = d(o.m + o.l, p.m + p.l);
    }
  }
  return t;
}

}  // namespace detail

/// Representation matrix of one group element on the window's coefficient
/// space. Computed two ways and cross-checked: the signed-permutation /
/// rotation-coefficient route, and the general formula F [<psi_j, U(g)
/// psi_l>] with F = G^-1 and quadrature overlaps of the transformed orbitals.
inline Mat rep_matrix(const Mat3& g, const GroupSpec& group, const SpectralWindow& w,
                      const Mat& gram, OverlapEngine& engine) {
  const NuclearGeometry& geom = engine.geometry();
  const std::vector<int> perm = induced_permutation(g, group.center, geom);

  int lmax = 0;
  for (const auto& o : w.basis) lmax = std::max(lmax, o.l);
  const std::vector<Mat> dmats = real_sh_rotations(std::max(lmax, 1), g);

  const Mat t = detail::rep_matrix_coefficient_path(g, perm, w, dmats);

  // general formula: overlap matrix of U(g) psi_l against the basis
  const int m = w.size();
  Mat o(m, m);
  for (int col = 0; col < m; ++col) {
    const HydrogenicOrbital& orb = w.basis[col];
    MixedOrbital moved;
    moved.center = perm[orb.center];
    moved.j = orb.j;
    moved.l = orb.l;
    moved.Z = orb.Z;
    moved.coeff.assign(2 * orb.l + 1, 0.0);
    const Mat& d = dmats[orb.l];
    for (int mp = -orb.l; mp <= orb.l; ++mp) moved.coeff[mp + orb.l] = d(orb.m + orb.l, mp + orb.l);
    for (int row = 0; row < m; ++row)
      o(row, col) = engine.overlap_mixed(to_mixed(w.basis[row]), moved);
  }
  const Mat u = solve_spd(gram, o);
  if (u.max_abs_diff(t) > 1e-8)
    throw GroupError("rep_matrix: coefficient and overlap paths disagree (> 1e-8)");
  return t;
}

/// All representation matrices of a group, sharing one overlap engine.
inline std::vector<Mat> rep_matrices(const GroupSpec& group, const SpectralWindow& w,
                                     const NuclearGeometry& geom, const Mat& gram,
                                     const QuadratureSettings& settings = {}) {
  OverlapEngine engine(geom, settings);
  std::vector<Mat> reps;
  reps.reserve(group.elements.size());
  for (const Mat3& g : group.elements) reps.push_back(rep_matrix(g, group, w, gram, engine));
  return reps;
}

/// Projector P = |G|^-1 sum_g U(g) onto the trivial-representation subspace.
inline Mat trivial_projector(const std::vector<Mat>& reps) {
  if (reps.empty()) throw std::invalid_argument("trivial_projector: empty representation list");
  const int m = reps.front().rows;
  Mat p(m, m);
  for (const Mat& r : reps)
    for (size_t i = 0; i < p.a.size(); ++i) p.a[i] += r.a[i];
  for (double& x : p.a) x /= static_cast<double>(reps.size());
  if ((p * p).max_abs_diff(p) > 1e-10)
    throw GroupError("trivial_projector: projector is not idempotent (bad group or representation)");
  return p;
}

/// Lower bounds restricted to the symmetric subspace: the spectrum of B on
/// range(P), obtained from the G-metric pencil on an explicit orthonormal
/// basis of the range so that the zero eigenvalues on ker(P) never enter.
inline BoundReport symmetric_lower_bounds(const SpectralWindow& w, const Mat& gram, const Mat& p) {
  const int m = w.size();
  const Mat b = build_B(w, gram);
  const double scale = std::max(1.0, b.max_abs());
  if ((b * p).max_abs_diff(p * b) > 1e-8 * scale)
    throw GroupError("symmetric_lower_bounds: B and P do not commute (group/geometry mismatch)");

  const EigenResult peig = sym_eigen(p);
  int rank = 0;
  for (double v : peig.values) {
    if (std::abs(v) > 1e-8 && std::abs(v - 1.0) > 1e-8)
      throw GroupError("symmetric_lower_bounds: projector spectrum is not {0, 1}");
    if (v > 0.5) ++rank;
  }
  if (rank == 0) throw GroupError("symmetric_lower_bounds: trivial subspace is empty");

  Mat q(m, rank);
  int col = 0;
  for (int k = 0; k < m; ++k) {
    if (peig.values[k] <= 0.5) continue;
    for (int i = 0; i < m; ++i) q(i, col) = peig.vectors(i, k);
    ++col;
  }

  const Mat qt = q.transposed();
  const Mat gr = qt * gram * q;
  const Mat ar = qt * build_A(w, gram) * q;

  const EigenResult geig = sym_eigen(gr);
  if (!(geig.values.front() > 1e-12 * std::max(geig.values.back(), 0.0)))
    throw SingularGramError("symmetric_lower_bounds: restricted Gram is singular");
  Mat s(rank, rank);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) {
      double acc = 0.0;
      for (int k = 0; k < rank; ++k)
        acc += geig.vectors(i, k) * geig.vectors(j, k) / std::sqrt(geig.values[k]);
      s(i, j) = acc;
    }
  Mat h = s * ar * s;
  for (int i = 0; i < rank; ++i)
    for (int j = i + 1; j < rank; ++j) {
      const double v = 0.5 * (h(i, j) + h(j, i));
      h(i, j) = h(j, i) = v;
    }
  const EigenResult heig = sym_eigen(h);

  BoundReport rep;
  rep.j_cut = w.j_cut;
  rep.basis_size = rank;
  rep.shift = w.shift();
  rep.gram_eig_min = geig.values.front();
  rep.gram_eig_max = geig.values.back();
  rep.bounds.resize(rank);
  for (int i = 0; i < rank; ++i) rep.bounds[i] = heig.values[i] + rep.shift;
  return rep;
}

}  // namespace specbound
