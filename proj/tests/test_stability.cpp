#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bergman/errors.hpp"
#include "bergman/stability.hpp"

using namespace bergman;

TEST_CASE("radial density derivative") {
  for (int n : {1, 2})
    for (double r : {0.2, 0.5, 0.8}) {
      double h = 1e-6;
      CHECK(radial_density_prime(r, n) ==
            doctest::Approx((radial_density(r + h, n) - radial_density(r - h, n)) / (2 * h)).epsilon(1e-7));
    }
}

TEST_CASE("synthetic graphs have the prescribed volume") {
  for (int k : {2, 3, 5})
    for (double eps : {0.0, 0.01, 0.05}) {
      RadialGraphLevelSet E = synthetic_graph(1.2, eps, k);
      CHECK(E.volume == doctest::Approx(ball_volume(1.2, 1)).epsilon(1e-13));
      CHECK(E.r == doctest::Approx(1.2).epsilon(1e-12));
    }
}

TEST_CASE("deficit of the ball vanishes and grows quadratically") {
  DeficitReport d0 = fuglede_deficit(synthetic_graph(1.0, 0.0, 3));
  CHECK(std::abs(d0.deficit) < 1e-13);
  DeficitReport d1 = fuglede_deficit(synthetic_graph(1.0, 0.01, 3));
  DeficitReport d2 = fuglede_deficit(synthetic_graph(1.0, 0.02, 3));
  CHECK(d1.deficit > 0.0);
  CHECK(d2.deficit / d1.deficit == doctest::Approx(4.0).epsilon(0.02));
  CHECK(d1.ratio == doctest::Approx(d2.ratio).epsilon(0.02));
  CHECK(d1.bar_norm < 1e-10);
}

TEST_CASE("Fuglede regime checks") {
  try {
    fuglede_deficit(synthetic_graph(1.0, 0.2, 4));
    FAIL("expected a regime error");
  } catch (const RegimeError& e) {
    CHECK(e.kind == Regime::OutsideFugledeRegime);
  }
  try {
    fuglede_deficit(synthetic_graph(1.0, 0.02, 1));
    FAIL("expected a regime error");
  } catch (const RegimeError& e) {
    CHECK(e.kind == Regime::OutsideFugledeRegime);
  }
}

TEST_CASE("second variation: positive and quadratic with cubic remainder") {
  double prev_ratio = 1.0;
  for (double eps : {0.04, 0.02, 0.01}) {
    SecondVariation sv = second_variation_Q(synthetic_graph(1.0, eps, 2));
    CHECK(sv.Q > 0.0);
    CHECK(sv.coercivity_ratio > 0.0);
    double ratio = std::abs(sv.remainder) / sv.Q;
    CHECK(ratio < prev_ratio);
    prev_ratio = ratio;
  }
  CHECK(prev_ratio < 0.05);
  try {
    second_variation_Q(synthetic_graph(1.0, 0.05, 1));
    FAIL("expected a normalization error");
  } catch (const RegimeError& e) {
    CHECK(e.kind == Regime::Normalization);
  }
}
