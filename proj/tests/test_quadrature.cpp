#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "specbound/quadrature.hpp"

using namespace specbound;
using Catch::Matchers::WithinAbs;

TEST_CASE("gauss-legendre order 1 is the midpoint rule", "[quadrature]") {
  const QuadRule r = gauss_legendre(1);
  REQUIRE(r.order() == 1);
  REQUIRE_THAT(r.nodes[0], WithinAbs(0.0, 1e-15));
  REQUIRE_THAT(r.weights[0], WithinAbs(2.0, 1e-15));
}

TEST_CASE("gauss-legendre order 2 nodes are +-1/sqrt(3)", "[quadrature]") {
  const QuadRule r = gauss_legendre(2);
  REQUIRE_THAT(r.nodes[0], WithinAbs(-1.0 / std::sqrt(3.0), 1e-14));
  REQUIRE_THAT(r.nodes[1], WithinAbs(1.0 / std::sqrt(3.0), 1e-14));
  REQUIRE_THAT(r.weights[0], WithinAbs(1.0, 1e-14));
  REQUIRE_THAT(r.weights[1], WithinAbs(1.0, 1e-14));
}

TEST_CASE("gauss-legendre order 5 integrates degree 9 exactly", "[quadrature]") {
  const QuadRule r = gauss_legendre(5);
  double odd = 0.0, even = 0.0;
  for (int i = 0; i < 5; ++i) {
    odd += r.weights[i] * std::pow(r.nodes[i], 9);
    even += r.weights[i] * std::pow(r.nodes[i], 8);
  }
  REQUIRE_THAT(odd, WithinAbs(0.0, 1e-14));
  REQUIRE_THAT(even, WithinAbs(2.0 / 9.0, 1e-13));
}

TEST_CASE("gauss-legendre weights sum to the interval length", "[quadrature]") {
  for (int order : {1, 2, 3, 4, 7, 16, 48, 64, 128, 256, 512}) {
    const QuadRule r = gauss_legendre(order);
    double sum = 0.0;
    for (double w : r.weights) {
      REQUIRE(w > 0.0);
      sum += w;
    }
    REQUIRE_THAT(sum, WithinAbs(2.0, 1e-14));
    for (int i = 0; i + 1 < order; ++i) REQUIRE(r.nodes[i] < r.nodes[i + 1]);
    REQUIRE(r.nodes.front() > -1.0);
    REQUIRE(r.nodes.back() < 1.0);
  }
}

TEST_CASE("gauss-legendre is exact up to degree 2N-1", "[quadrature]") {
  for (int order : {3, 8, 21, 33}) {
    const QuadRule r = gauss_legendre(order);
    for (int deg = 0; deg <= 2 * order - 1; ++deg) {
      double s = 0.0;
      for (int i = 0; i < order; ++i) s += r.weights[i] * std::pow(r.nodes[i], deg);
      const double exact = (deg % 2 == 1) ? 0.0 : 2.0 / (deg + 1.0);
      REQUIRE_THAT(s, WithinAbs(exact, 1e-13));
    }
  }
}

TEST_CASE("gauss-legendre rejects invalid orders", "[quadrature]") {
  REQUIRE_THROWS_AS(gauss_legendre(0), std::domain_error);
  REQUIRE_THROWS_AS(gauss_legendre(513), std::domain_error);
}

TEST_CASE("integrate_xi handles analytic exponential integrands", "[quadrature]") {
  const double half = integrate_xi([](double x) { return std::exp(-2.0 * (x - 1.0)); }, 2.0, 1e-12);
  REQUIRE_THAT(half, WithinAbs(0.5, 1e-12));

  const double two_over_e = integrate_xi([](double x) { return x * std::exp(-x); }, 1.0, 1e-12);
  REQUIRE_THAT(two_over_e, WithinAbs(2.0 / std::exp(1.0), 1e-12));
}

TEST_CASE("integrate_xi matches the symbolic antiderivative oracle", "[quadrature]") {
  // integral of (xi^2 - 1) e^{-3 xi}: antiderivative
  // -e^{-3 xi} ((xi^2 - 1)/3 + 2 xi/9 + 2/27), value at 1 is 8 e^{-3} / 27
  const double expected = 8.0 * std::exp(-3.0) / 27.0;
  const double got =
      integrate_xi([](double x) { return (x * x - 1.0) * std::exp(-3.0 * x); }, 3.0, 1e-12);
  REQUIRE_THAT(got, WithinAbs(expected, 1e-12));
}

TEST_CASE("integrate_xi order doubling is a convergence diagnostic", "[quadrature]") {
  const auto f = [](double x) { return (1.0 + x * x) * std::exp(-1.7 * x); };
  const double a = integrate_xi(f, 1.7, 1e-12, 32);
  const double b = integrate_xi(f, 1.7, 1e-12, 64);
  REQUIRE(std::abs(a - b) < 1e-12 * std::abs(b));
}

TEST_CASE("integrate_xi rejects bad arguments and reports non-convergence", "[quadrature]") {
  REQUIRE_THROWS_AS(integrate_xi([](double) { return 0.0; }, -1.0, 1e-10), std::domain_error);

  // decays far slower than declared: the panel budget runs out
  try {
    integrate_xi([](double x) { return std::pow(x, -1.1); }, 1.0, 1e-13, 16, 24);
    FAIL("expected QuadratureError");
  } catch (const QuadratureError& e) {
    REQUIRE(std::isfinite(e.coarse_estimate));
    REQUIRE(std::isfinite(e.refined_estimate));
  }
}

TEST_CASE("integrate_semi_infinite supports arbitrary start points", "[quadrature]") {
  const double got =
      integrate_semi_infinite([](double x) { return std::exp(-x); }, 0.0, 1.0, 1e-12);
  REQUIRE_THAT(got, WithinAbs(1.0, 1e-12));
}
