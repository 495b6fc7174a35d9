#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "bergman/errors.hpp"
#include "bergman/geometry.hpp"
#include "bergman/quadrature.hpp"
#include "test_support.hpp"

using namespace bergman;
using std::numbers::pi;

namespace {

double radial_volume_oracle(double t, int n) {
  auto f = [&](double r) { return sphere_area(n) * std::pow(r, 2 * n - 1) * std::pow(1.0 - r * r, -n - 1.0); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, t, 15, 1e-14);
}

}  // namespace

TEST_CASE("invariant density values") {
  CHECK(invariant_measure_density(cplx(0.0)) == doctest::Approx(1.0));
  CHECK(invariant_measure_density(cplx(std::sqrt(0.5))) == doctest::Approx(4.0));
  Point z{std::sqrt(0.5), std::sqrt(0.25)};
  CHECK(invariant_measure_density(z) == doctest::Approx(64.0));
  CHECK_THROWS_AS(invariant_measure_density(cplx(1.0)), DomainError);
}

TEST_CASE("normalization constants for the disc") {
  for (double a : {1.5, 2.0, 3.7}) CHECK(normalization_constants(1, a).c_alpha_n == doctest::Approx((a - 1.0) / pi));
  CHECK(normalization_constants(2, 3.0).c_n == 1.0);
  CHECK(sphere_area(2) == doctest::Approx(2.0 * pi * pi));
}

TEST_CASE("ball volume closed forms and radial quadrature") {
  CHECK(ball_volume(0.0, 1) == 0.0);
  CHECK(ball_volume(bergman_radius(0.5), 1) == doctest::Approx(pi / 3.0).epsilon(1e-14));
  CHECK(ball_volume(bergman_radius(0.8), 1) == doctest::Approx(5.585053606381854).epsilon(1e-14));
  CHECK_THROWS_AS(ball_volume(-0.1, 1), DomainError);
  for (int n : {1, 2, 3})
    for (double t : {0.1, 0.4, 0.75, 0.9}) CHECK(ball_volume_euclid(t, n) == doctest::Approx(radial_volume_oracle(t, n)).epsilon(1e-11));
}

TEST_CASE("ball perimeter closed forms") {
  CHECK(ball_perimeter(bergman_radius(0.5), 1) == doctest::Approx(4.0 * pi / 3.0).epsilon(1e-14));
  CHECK(ball_perimeter(bergman_radius(0.8), 1) == doctest::Approx(13.962634015954636).epsilon(1e-14));
  CHECK(ball_perimeter(bergman_radius(1e-6), 1) == doctest::Approx(2.0 * pi * 1e-6).epsilon(1e-9));
  CHECK_THROWS_AS(ball_perimeter(0.0, 1), DomainError);
}

TEST_CASE("V'(r) equals S(r)/2 for every tested dimension") {
  for (int n : {1, 2, 3})
    for (double r : {0.3, 1.0, 2.2}) {
      double h = 1e-4;
      double dv = (ball_volume(r + h, n) - ball_volume(r - h, n)) / (2 * h);
      CHECK(dv == doctest::Approx(0.5 * ball_perimeter(r, n)).epsilon(1e-7));
    }
}

TEST_CASE("volume inverse round trip") {
  for (int n : {1, 2})
    for (double v : {1e-6, 0.3, 5.0, 80.0}) CHECK(ball_volume(ball_volume_inverse(v, n), n) == doctest::Approx(v).epsilon(1e-12));
}

TEST_CASE("Phi for n = 1 is (pi + xi)/alpha") {
  WeightParams P(1, 2.0, 2.0);
  CHECK(iso_profile_phi(pi, P) == doctest::Approx(pi).epsilon(1e-14));
  CHECK(iso_profile_phi(1e-12, P) == doctest::Approx(pi / 2.0).epsilon(1e-9));
  auto g = testgen::rng(1);
  for (int i = 0; i < 50; ++i) {
    double xi = testgen::uniform(g, 1e-3, 50.0), a = testgen::uniform(g, 1.05, 6.0);
    CHECK(iso_profile_phi(xi, WeightParams(1, 1.0, a)) == doctest::Approx((pi + xi) / a).epsilon(1e-12));
  }
  CHECK_THROWS_AS(iso_profile_phi(0.0, P), DomainError);
}

TEST_CASE("comparison G against its logarithmic closed form") {
  WeightParams P(1, 2.0, 2.0);
  CHECK(comparison_G(pi, pi, P) == 0.0);
  double xref = 3 * pi, x = (pi + xref) / std::numbers::e - pi;
  CHECK(comparison_G(x, xref, P) == doctest::Approx(2.0).epsilon(1e-11));
  // Any n: G = alpha log((1 + X_ref)/(1 + X)) with X = t^2/(1-t^2).
  for (int n : {1, 2}) {
    WeightParams Q(n, 1.0, n + 0.7);
    auto X = [&](double v) {
      double t = ball_volume_inverse_euclid(v, n);
      return t * t / (1 - t * t);
    };
    for (double v : {0.2, 1.0, 7.0}) {
      double want = Q.alpha * std::log((1 + X(3.0)) / (1 + X(v)));
      CHECK(comparison_G(v, 3.0, Q) == doctest::Approx(want).epsilon(1e-11));
    }
    CHECK(comparison_G(0.5, 3.0, Q) > comparison_G(0.6, 3.0, Q));
  }
}

TEST_CASE("model ODE -mu*' = Phi(mu*)/t") {
  for (int n : {1, 2}) {
    WeightParams P(n, 2.0, n + 1.0);
    for (int k = 0; k < 50; ++k) {
      double t = 0.05 + 0.9 * k / 49.0, h = 1e-5 * t;
      double d = -(model_profile(t + h, P) - model_profile(t - h, P)) / (2 * h);
      CHECK(d == doctest::Approx(iso_profile_phi(model_profile(t, P), P) / t).epsilon(1e-6));
    }
  }
  WeightParams P(1, 2.0, 2.0);
  CHECK(model_profile(0.25, P) == doctest::Approx(pi).epsilon(1e-14));
}

TEST_CASE("contractive line validation") {
  WeightParams P(1, 2.0, 2.0);
  CHECK_NOTHROW(ContractiveLine(P, 4.0, 4.0));
  CHECK_THROWS_AS(ContractiveLine(P, 4.0, 4.5), DomainError);
  CHECK_THROWS_AS(WeightParams(1, 2.0, 1.0), DomainError);
  CHECK(ContractiveLine::scaled(P, 1.5).s() == doctest::Approx(1.5));
}

TEST_CASE("point automorphisms") {
  cplx a(0.5, 0.0);
  CHECK(std::abs(point_automorphism(a, a)) < 1e-15);
  CHECK(std::abs(point_automorphism(cplx(0.0), cplx(0.3, -0.2)) - cplx(0.3, -0.2)) < 1e-15);
  auto g = testgen::rng(2);
  for (int i = 0; i < 100; ++i) {
    cplx b = std::polar(testgen::uniform(g, 0, 0.95), testgen::uniform(g, 0, 2 * pi));
    cplx z = std::polar(testgen::uniform(g, 0, 0.95), testgen::uniform(g, 0, 2 * pi));
    CHECK(std::abs(mobius_involution(b, mobius_involution(b, z)) - z) < 1e-12);
    CHECK(std::abs(point_automorphism(-b, point_automorphism(b, z)) - z) < 1e-12);
    CHECK(std::abs(point_automorphism(b, z)) < 1.0);
    // Pointwise invariance of the measure: |psi'|^2 density(psi z) = density(z).
    double h = 1e-6;
    cplx d = (point_automorphism(b, z + h) - point_automorphism(b, z - h)) / (2 * h);
    CHECK(std::norm(d) * invariant_measure_density(point_automorphism(b, z)) ==
          doctest::Approx(invariant_measure_density(z)).epsilon(1e-7));
  }
  for (int i = 0; i < 30; ++i) {
    Point b{std::polar(testgen::uniform(g, 0, 0.6), 1.0), std::polar(testgen::uniform(g, 0, 0.6), 2.0)};
    Point z{std::polar(testgen::uniform(g, 0, 0.6), 0.3), std::polar(testgen::uniform(g, 0, 0.6), -1.1)};
    Point back = mobius_involution(b, mobius_involution(b, z));
    CHECK(std::sqrt(std::norm(back[0] - z[0]) + std::norm(back[1] - z[1])) < 1e-12);
    CHECK(norm2(point_automorphism(b, b)) < 1e-28);
    CHECK(norm2(mobius_involution(b, z)) < 1.0);
  }
  CHECK_THROWS_AS(point_automorphism(cplx(1.0), cplx(0.0)), DomainError);
}

TEST_CASE("automorphisms preserve the volume of a Bergman ball") {
  // The Bergman ball of Euclidean radius t about a is the disc with center
  // a(1-t^2)/(1-|a|^2 t^2) and radius t(1-|a|^2)/(1-|a|^2 t^2).
  GaussRule gl = gauss_legendre(60);
  for (cplx a : {cplx(0.3, 0.1), cplx(-0.6, 0.2)}) {
    double t = 0.5, a2 = std::norm(a);
    cplx c = a * (1 - t * t) / (1 - a2 * t * t);
    double R = t * (1 - a2) / (1 - a2 * t * t);
    int M = 400;
    double vol = 0.0;
    for (int j = 0; j < M; ++j)
      for (int i = 0; i < 60; ++i) {
        double s = 0.5 * R * (1 + gl.nodes[i]);
        cplx z = c + std::polar(s, 2 * pi * j / M);
        vol += 0.5 * R * gl.weights[i] * s * (2 * pi / M) * invariant_measure_density(z);
        // every point maps into the centered disc of radius t
        if (i == 59) CHECK(std::abs(point_automorphism(a, c + std::polar(R, 2 * pi * j / M))) == doctest::Approx(t).epsilon(1e-12));
      }
    CHECK(vol == doctest::Approx(ball_volume_euclid(t, 1)).epsilon(1e-10));
  }
}
