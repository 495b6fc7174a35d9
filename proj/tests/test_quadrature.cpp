#include <doctest.h>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <cmath>
#include <numbers>

#include "bergman/errors.hpp"
#include "bergman/quadrature.hpp"
#include "test_support.hpp"

using namespace bergman;
using boost::math::beta;

TEST_CASE("Gauss-Legendre is exact through degree 2N-1") {
  for (int N : {1, 3, 8, 20}) {
    GaussRule r = gauss_legendre(N);
    for (int k = 0; k <= 2 * N - 1; ++k) {
      double s = 0.0;
      for (int i = 0; i < N; ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
      double want = (k % 2 == 0) ? 2.0 / (k + 1) : 0.0;
      CHECK(s == doctest::Approx(want).epsilon(1e-13).scale(1.0));
    }
  }
  GaussRule m = gauss_legendre(5, 1.0, 3.0);
  double s = 0.0;
  for (int i = 0; i < 5; ++i) s += m.weights[i] * m.nodes[i] * m.nodes[i];
  CHECK(s == doctest::Approx(26.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("Gauss-Jacobi reproduces Beta moments") {
  auto g = testgen::rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    double a = testgen::uniform(g, -0.9, 4.0), b = testgen::uniform(g, -0.9, 4.0);
    int N = 12;
    GaussRule r = gauss_jacobi(N, a, b);
    for (int k = 0; k < 2 * N; k += 3) {
      double s = 0.0;
      for (int i = 0; i < N; ++i) s += r.weights[i] * std::pow(1.0 + r.nodes[i], k);
      double want = std::pow(2.0, a + b + k + 1) * beta(a + 1, b + k + 1);
      CHECK(s == doctest::Approx(want).epsilon(1e-11));
    }
    for (double x : r.nodes) CHECK(std::abs(x) < 1.0);
  }
  CHECK_THROWS_AS(gauss_jacobi(4, -1.0, 0.0), DomainError);
  CHECK_THROWS_AS(gauss_jacobi(0, 0.0, 0.0), DomainError);
}

TEST_CASE("radial rule moments") {
  for (int n : {1, 2, 3})
    for (double alpha : {n + 0.01, n + 0.5, n + 3.0}) {
      RadialRule r = radial_rule(alpha, n, 16);
      for (int k = 0; k < 16; ++k) {
        double s = 0.0;
        for (int i = 0; i < r.order; ++i) s += r.weights[i] * std::pow(r.nodes[i], 2 * k);
        CHECK(s == doctest::Approx(0.5 * beta(n + k, alpha - n)).epsilon(1e-11));
      }
    }
  CHECK_THROWS_AS(radial_rule(1.0, 1, 16), DomainError);
}

TEST_CASE("sphere rules integrate |zeta_1|^{2k}") {
  SphereRule c = circle_rule(64);
  double tot = 0.0;
  for (double w : c.weights) tot += w;
  CHECK(tot == doctest::Approx(1.0).epsilon(1e-15));
  SphereRule s = sphere_rule(2, 32);
  for (int k = 0; k <= 8; ++k) {
    double v = 0.0;
    for (std::size_t i = 0; i < s.nodes.size(); ++i) v += s.weights[i] * std::pow(std::norm(s.nodes[i][0]), k);
    // (n-1)! k! / (n-1+k)! with n = 2
    CHECK(v == doctest::Approx(1.0 / (k + 1)).epsilon(1e-13));
  }
  // Phases cancel: the mean of zeta_1 conj(zeta_2) vanishes.
  cplx m = 0.0;
  for (std::size_t i = 0; i < s.nodes.size(); ++i) m += s.weights[i] * s.nodes[i][0] * std::conj(s.nodes[i][1]);
  CHECK(std::abs(m) < 1e-14);
  CHECK_THROWS_AS(sphere_rule(3, 8), DomainError);
}

TEST_CASE("eta mass agrees with the regularized incomplete Beta function") {
  auto g = testgen::rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 1 + trial % 3;
    double alpha = n + testgen::uniform(g, 0.05, 5.0), rho0 = testgen::uniform(g, 0.01, 0.99);
    CHECK(eta_alpha_mass(rho0, alpha, n) == doctest::Approx(boost::math::ibetac(double(n), alpha - n, rho0 * rho0)).epsilon(1e-12));
  }
  CHECK(eta_alpha_mass(0.5, 2.0, 1) == doctest::Approx(0.75));
  CHECK_THROWS_AS(eta_alpha_mass(1.0, 2.0, 1), DomainError);
}

TEST_CASE("ball integrals") {
  for (int n : {1, 2}) {
    double alpha = n + 1.3;
    RadialRule r = radial_rule(alpha, n, 24);
    SphereRule s = sphere_rule(n, 16);
    CHECK(ball_integral([](const Point&) { return 1.0; }, r, s) == doctest::Approx(1.0).epsilon(1e-13));
    // Weighted moment of |z|^2: B(n+1, alpha-n)/B(n, alpha-n) = n / alpha.
    CHECK(ball_integral([](const Point& z) { return norm2(z); }, r, s) == doctest::Approx(n / alpha).epsilon(1e-13));
    // Invariant integral of (1-|z|^2)^{alpha+1}: (C_n/2) B(n, alpha+1-n).
    double want = 0.5 * sphere_area(n) * beta(double(n), alpha + 1 - n);
    CHECK(ball_integral([&](const Point& z) { return std::pow(1 - norm2(z), alpha + 1); }, r, s, BallMeasure::Invariant) ==
          doctest::Approx(want).epsilon(1e-12));
  }
  RadialRule r = radial_rule(2.0, 1, 8);
  CHECK_THROWS_AS(ball_integral([](const Point&) { return NAN; }, r, circle_rule(8)), EvaluationError);
  CHECK_THROWS_AS(ball_integral([](const Point&) { return 1.0; }, r, sphere_rule(2, 8)), DomainError);
}
