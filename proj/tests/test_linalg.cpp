#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "specbound/linalg.hpp"

using namespace specbound;
using Catch::Matchers::WithinAbs;

namespace {

Mat random_symmetric(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Mat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) a(i, j) = a(j, i) = dist(rng);
  return a;
}

Mat random_spd(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Mat m(n, n);
  for (double& v : m.a) v = dist(rng);
  Mat g = m.transposed() * m;
  for (int i = 0; i < n; ++i) g(i, i) += n;
  return g;
}

}  // namespace

TEST_CASE("sym_eigen on diagonal and permutation matrices", "[linalg]") {
  Mat d(3, 3);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  d(2, 2) = 2.0;
  const EigenResult e = sym_eigen(d);
  REQUIRE_THAT(e.values[0], WithinAbs(1.0, 1e-13));
  REQUIRE_THAT(e.values[1], WithinAbs(2.0, 1e-13));
  REQUIRE_THAT(e.values[2], WithinAbs(3.0, 1e-13));

  Mat swap(2, 2);
  swap(0, 1) = swap(1, 0) = 1.0;
  const EigenResult s = sym_eigen(swap);
  REQUIRE_THAT(s.values[0], WithinAbs(-1.0, 1e-13));
  REQUIRE_THAT(s.values[1], WithinAbs(1.0, 1e-13));
}

TEST_CASE("sym_eigen 2x2 matches the characteristic quadratic", "[linalg]") {
  for (unsigned seed = 1; seed <= 20; ++seed) {
    const Mat a = random_symmetric(2, seed);
    const double tr = a(0, 0) + a(1, 1);
    const double det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    const double disc = std::sqrt(tr * tr / 4.0 - det);
    const EigenResult e = sym_eigen(a);
    REQUIRE_THAT(e.values[0], WithinAbs(tr / 2.0 - disc, 1e-12));
    REQUIRE_THAT(e.values[1], WithinAbs(tr / 2.0 + disc, 1e-12));
  }
}

TEST_CASE("sym_eigen residuals and eigenvector orthogonality", "[linalg]") {
  const Mat a = random_symmetric(9, 42);
  const EigenResult e = sym_eigen(a);
  const double scale = a.max_abs();
  for (int k = 0; k < 9; ++k) {
    for (int i = 0; i < 9; ++i) {
      double av = 0.0;
      for (int j = 0; j < 9; ++j) av += a(i, j) * e.vectors(j, k);
      REQUIRE_THAT(av, WithinAbs(e.values[k] * e.vectors(i, k), 1e-10 * scale));
    }
  }
  const Mat vtv = e.vectors.transposed() * e.vectors;
  REQUIRE(vtv.max_abs_diff(Mat::identity(9)) < 1e-10);
}

TEST_CASE("sym_eigen rejects non-symmetric input", "[linalg]") {
  Mat a(2, 2);
  a(0, 1) = 1.0;
  REQUIRE_THROWS_AS(sym_eigen(a), std::invalid_argument);
}

TEST_CASE("inv_sqrt on identity and diagonal matrices", "[linalg]") {
  REQUIRE(inv_sqrt(Mat::identity(4)).max_abs_diff(Mat::identity(4)) < 1e-13);

  Mat d(2, 2);
  d(0, 0) = 4.0;
  d(1, 1) = 9.0;
  const Mat s = inv_sqrt(d);
  REQUIRE_THAT(s(0, 0), WithinAbs(0.5, 1e-13));
  REQUIRE_THAT(s(1, 1), WithinAbs(1.0 / 3.0, 1e-13));
  REQUIRE_THAT(s(0, 1), WithinAbs(0.0, 1e-13));
}

TEST_CASE("inv_sqrt whitens the 1s-1s Gram matrix", "[linalg]") {
  Mat g(2, 2);
  g(0, 0) = g(1, 1) = 1.0;
  g(0, 1) = g(1, 0) = 0.5864529;
  const Mat s = inv_sqrt(g);
  REQUIRE((s * g * s).max_abs_diff(Mat::identity(2)) < 1e-10);
  REQUIRE(is_symmetric(s));
  const EigenResult e = sym_eigen(s);
  REQUIRE(e.values.front() > 0.0);
}

TEST_CASE("inv_sqrt squared agrees with the Cholesky inverse", "[linalg]") {
  const Mat g = random_spd(6, 7);
  const Mat s = inv_sqrt(g);
  const Mat ginv = solve_spd(g, Mat::identity(6));
  REQUIRE((s * s).max_abs_diff(ginv) < 1e-9);
}

TEST_CASE("inv_sqrt flags a numerically singular Gram matrix", "[linalg]") {
  Mat g(2, 2);
  g(0, 0) = g(1, 1) = 1.0;
  g(0, 1) = g(1, 0) = 1.0 - 1e-14;
  REQUIRE_THROWS_AS(inv_sqrt(g), SingularGramError);
}

TEST_CASE("solve_spd solves identity, diagonal and random systems", "[linalg]") {
  Mat b(3, 2);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j) b(i, j) = i + 2.0 * j + 1.0;
  REQUIRE(solve_spd(Mat::identity(3), b).max_abs_diff(b) < 1e-14);

  Mat d(3, 3);
  d(0, 0) = 2.0;
  d(1, 1) = 4.0;
  d(2, 2) = 8.0;
  const Mat x = solve_spd(d, b);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j) REQUIRE_THAT(x(i, j), WithinAbs(b(i, j) / d(i, i), 1e-14));

  const Mat g = random_spd(8, 11);
  Mat rhs(8, 3);
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (double& v : rhs.a) v = dist(rng);
  const Mat sol = solve_spd(g, rhs);
  REQUIRE((g * sol).max_abs_diff(rhs) < 1e-11);
}
