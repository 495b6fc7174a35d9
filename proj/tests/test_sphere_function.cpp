#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bergman/errors.hpp"
#include "bergman/sphere_function.hpp"
#include "test_support.hpp"

using namespace bergman;
using std::numbers::pi;

TEST_CASE("Fourier coefficients of a trigonometric polynomial") {
  auto u = SphereFunction::from_function([](double t) { return 1.0 + 2.0 * std::cos(t) - 0.5 * std::sin(3 * t); }, 64);
  CHECK(u.mean() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(u.coeff(1) - 1.0) < 1e-15);
  CHECK(std::abs(u.coeff(-1) - 1.0) < 1e-15);
  CHECK(std::abs(u.coeff(3) - std::complex<double>(0, 0.25)) < 1e-15);
  CHECK(std::abs(u.coeff(40)) == 0.0);
  CHECK(u.eval(0.3) == doctest::Approx(1.0 + 2.0 * std::cos(0.3) - 0.5 * std::sin(0.9)).epsilon(1e-14));
  CHECK(u.eval_derivative(0.3) == doctest::Approx(-2.0 * std::sin(0.3) - 1.5 * std::cos(0.9)).epsilon(1e-13));
  auto d = u.derivative_samples();
  for (int j = 0; j < 64; j += 7) CHECK(d[j] == doctest::Approx(u.eval_derivative(u.theta(j))).epsilon(1e-12).scale(1.0));
  CHECK_THROWS_AS(SphereFunction({1.0}), DomainError);
}

TEST_CASE("spectral derivative of a smooth periodic function") {
  auto u = SphereFunction::from_function([](double t) { return std::exp(std::cos(t)); }, 128);
  auto d = u.derivative_samples();
  for (int j = 0; j < 128; ++j) {
    double t = u.theta(j);
    CHECK(d[j] == doctest::Approx(-std::sin(t) * std::exp(std::cos(t))).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("Sobolev norms by Parseval") {
  double a = 0.3, b = 0.1;
  auto u = SphereFunction::from_function([&](double t) { return a * std::cos(2 * t) + b * std::sin(5 * t); }, 256);
  SphereNorms s = sphere_norms(u);
  // |c_{+-2}| = a/2, |c_{+-5}| = b/2.
  double w12sq = 2 * (1 + 4) * a * a / 4 + 2 * (1 + 25) * b * b / 4;
  CHECK(s.w12sq == doctest::Approx(w12sq).epsilon(1e-13));
  CHECK(s.l2 == doctest::Approx(std::sqrt((a * a + b * b) / 2)).epsilon(1e-13));
  CHECK(s.first_harmonic_norm < 1e-15);
  CHECK(s.mean == doctest::Approx(0.0).scale(1.0));
  // sup|u| + sup|u'| from a dense oracle grid
  double su = 0, sd = 0;
  for (int j = 0; j < 256; ++j) {
    double t = 2 * pi * j / 256;
    su = std::max(su, std::abs(a * std::cos(2 * t) + b * std::sin(5 * t)));
    sd = std::max(sd, std::abs(-2 * a * std::sin(2 * t) + 5 * b * std::cos(5 * t)));
  }
  CHECK(s.w1inf == doctest::Approx(su + sd).epsilon(1e-12));
  auto v = SphereFunction::from_function([](double t) { return 0.2 * std::cos(t - 0.4); }, 32);
  CHECK(sphere_norms(v).first_harmonic_norm == doctest::Approx(0.2 / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("property: interpolation reproduces samples") {
  auto g = testgen::rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    int N = 8 + 2 * trial + (trial % 2);
    std::vector<double> s(N);
    for (double& x : s) x = testgen::uniform(g, -1, 1);
    SphereFunction u(s);
    for (int j = 0; j < N; ++j) CHECK(u.eval(u.theta(j)) == doctest::Approx(s[j]).epsilon(1e-12).scale(1.0));
    double sq = 0.0, l2 = 0.0;
    for (double x : s) sq += x * x;
    l2 = sphere_norms(u).l2;
    CHECK(l2 * l2 == doctest::Approx(sq / N).epsilon(1e-12));
  }
}
