#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bergman/barycenter.hpp"
#include "bergman/errors.hpp"
#include "test_support.hpp"

using namespace bergman;
using std::numbers::pi;

namespace {

// The Bergman disc of Euclidean radius t about b, as a radial graph.
RadialGraphLevelSet moved_disc(cplx b, double t, int points = 256) {
  PlanarField U{[=](cplx z) { return 1.0 - std::norm(point_automorphism(b, z)); },
                [=](cplx z) {
                  // d/dz-bar of 1 - |tau_b|^2 packed as d/dx + i d/dy
                  cplx w = point_automorphism(b, z);
                  cplx dw = (1.0 - std::norm(b)) / ((1.0 - std::conj(b) * z) * (1.0 - std::conj(b) * z));
                  return -2.0 * std::conj(std::conj(w) * dw);
                }};
  // U decreases along rays from 0 beyond the disc {|tau_b| < |b|}.
  double lo = std::abs(b) > 0 ? 2 * std::abs(b) / (1 + std::norm(b)) + 0.02 : 1e-3;
  return extract_field_graph(U, 1.0 - t * t, points, lo, 0.99, true);
}

}  // namespace

TEST_CASE("L gradient and Hessian against finite differences") {
  RadialGraphLevelSet E = moved_disc(cplx(0.1, -0.05), 0.5);
  SetQuadrature Q = set_quadrature(E);
  auto g = testgen::rng(41);
  for (int i = 0; i < 10; ++i) {
    cplx a(testgen::uniform(g, -0.4, 0.4), testgen::uniform(g, -0.4, 0.4));
    const double h = 1e-6;
    cplx gr = L_gradient(Q, a);
    CHECK(gr.real() == doctest::Approx((L_functional(Q, a + h) - L_functional(Q, a - h)) / (2 * h)).epsilon(1e-6));
    CHECK(gr.imag() ==
          doctest::Approx((L_functional(Q, a + cplx(0, h)) - L_functional(Q, a - cplx(0, h))) / (2 * h)).epsilon(1e-6));
    Eigen::Matrix2d H = L_hessian(Q, a);
    cplx dx = (L_gradient(Q, a + h) - L_gradient(Q, a - h)) / (2 * h);
    cplx dy = (L_gradient(Q, a + cplx(0, h)) - L_gradient(Q, a - cplx(0, h))) / (2 * h);
    CHECK(H(0, 0) == doctest::Approx(dx.real()).epsilon(1e-6));
    CHECK(H(1, 0) == doctest::Approx(dx.imag()).epsilon(1e-6).scale(1.0));
    CHECK(H(0, 1) == doctest::Approx(dy.real()).epsilon(1e-6).scale(1.0));
    CHECK(H(1, 1) == doctest::Approx(dy.imag()).epsilon(1e-6));
  }
  CHECK(Q.mass == doctest::Approx(ball_volume_euclid(0.5, 1)).epsilon(1e-10));
  CHECK_THROWS_AS(L_functional(Q, cplx(1.0)), DomainError);
}

TEST_CASE("barycenter of a moved Bergman disc is its center") {
  for (cplx b : {cplx(0.0), cplx(0.05, 0.02), cplx(-0.1, 0.12)}) {
    RadialGraphLevelSet E = moved_disc(b, 0.5);
    BarycenterResult r = barycenter(E);
    CHECK(std::abs(r.a - b) < 1e-9);
    CHECK(r.gradient_norm <= 1e-10);
    CHECK(r.certificate_ok);
    CHECK(std::abs(r.a) <= r.bound + 1e-8);
    CHECK(!r.trace.empty() == (r.iterations > 0));
  }
}

TEST_CASE("recentering maps a moved disc to the centered disc") {
  cplx b(0.08, -0.06);
  RadialGraphLevelSet E = moved_disc(b, 0.45);
  RadialGraphLevelSet F = recenter(E, b);
  for (double r : F.rho) CHECK(r == doctest::Approx(0.45).epsilon(1e-8));
  CHECK(F.volume == doctest::Approx(E.volume).epsilon(1e-8));
  CHECK(std::abs(barycenter(F).a) < 1e-8);
  RadialGraphLevelSet same = recenter(E, 0.0);
  CHECK(same.rho == E.rho);
  CHECK_THROWS_AS(recenter(E, cplx(0.9)), RegimeError);
}

TEST_CASE("property: barycenter is equivariant under rotation") {
  auto g = testgen::rng(42);
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<double> rho(128), rot(128);
    double c1 = testgen::uniform(g, -0.03, 0.03), c2 = testgen::uniform(g, -0.03, 0.03);
    for (int j = 0; j < 128; ++j) {
      double th = 2 * pi * j / 128;
      rho[j] = 0.5 + c1 * std::cos(th) + c2 * std::sin(2 * th);
      double ph = th - 2 * pi * 32 / 128;  // rotate by a quarter turn
      rot[j] = 0.5 + c1 * std::cos(ph) + c2 * std::sin(2 * ph);
    }
    cplx a = barycenter(make_graph(0, rho, 0.5)).a;
    cplx b = barycenter(make_graph(0, rot, 0.5)).a;
    CHECK(std::abs(b - cplx(0, 1) * a) < 1e-10);
  }
}

TEST_CASE("property: strong convexity along segments") {
  RadialGraphLevelSet E = moved_disc(cplx(0.03, 0.02), 0.5);
  SetQuadrature Q = set_quadrature(E);
  auto g = testgen::rng(43);
  auto draw = [&] { return std::polar(0.3 * std::sqrt(testgen::uniform(g, 0, 1)), testgen::uniform(g, 0, 2 * pi)); };
  for (int i = 0; i < 100; ++i) {
    cplx a = draw(), b = draw();
    double lhs = std::real((L_gradient(Q, a) - L_gradient(Q, b)) * std::conj(a - b));
    CHECK(lhs >= 2 * Q.mass * std::norm(a - b) - 1e-10);
  }
  CHECK(L_functional(Q, 0.1) <= 0.5 * L_functional(Q, 0.0) + 0.5 * L_functional(Q, 0.2));
}
