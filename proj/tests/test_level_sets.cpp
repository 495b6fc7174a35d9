#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bergman/errors.hpp"
#include "bergman/level_sets.hpp"
#include "test_support.hpp"

using namespace bergman;
using std::numbers::pi;

TEST_CASE("model symbol: level sets are centered balls") {
  WeightParams P(1, 2.0, 2.0);
  WeightedSymbol u(HoloFunc::constant(1), P);
  for (double t : {0.35, 0.6, 0.85}) {
    RadialGraphLevelSet g = extract_level_graph(u, t);
    double rho = model_radius(t, P.alpha);
    CHECK(g.min_rho() == doctest::Approx(rho).epsilon(1e-13));
    CHECK(g.max_rho() == doctest::Approx(rho).epsilon(1e-13));
    CHECK(g.volume == doctest::Approx(model_profile(t, P)).epsilon(1e-13));
    CHECK(level_perimeter(g, u) == doctest::Approx(ball_perimeter_euclid(rho, 1)).epsilon(1e-12));
    CHECK(graph_perimeter(g) == doctest::Approx(ball_perimeter_euclid(rho, 1)).epsilon(1e-12));
    CHECK(coarea_flux_J(g, u) == doctest::Approx(4 * P.alpha * t * g.volume).epsilon(1e-12));
    CHECK(inverse_flux(g, u) == doctest::Approx(iso_profile_phi(g.volume, P) / t).epsilon(1e-12));
    for (double b : g.bergman_u) CHECK(std::abs(b) < 1e-12);
  }
}

TEST_CASE("level sets outside the window raise a regime error") {
  WeightedSymbol u(HoloFunc::constant(1), WeightParams(1, 2.0, 2.0));
  CHECK_THROWS_AS(extract_level_graph(u, 0.99), RegimeError);
  CHECK_THROWS_AS(extract_level_graph(u, 0.01), RegimeError);
  WeightedSymbol big(HoloFunc::one_plus(1, 0.8), WeightParams(1, 2.0, 2.0));
  try {
    extract_level_graph(big, 0.5);
    FAIL("expected a regime error");
  } catch (const RegimeError& e) {
    CHECK(e.kind == Regime::OutsideRadialGraphRegime);
  }
}

TEST_CASE("Bergman balls moved by an automorphism keep volume and perimeter") {
  // U = 1 - |tau_a(z)|^2 has the Bergman ball about a as every superlevel set.
  // Rays from 0 see U decreasing once |z| > 2|a|/(1+|a|^2).
  for (cplx a : {cplx(0.1, 0.05), cplx(-0.05, 0.1)}) {
    PlanarField U{[&](cplx z) { return 1.0 - std::norm(point_automorphism(a, z)); },
                  [&](cplx z) {
                    const double h = 1e-6;
                    auto f = [&](cplx w) { return 1.0 - std::norm(point_automorphism(a, w)); };
                    return cplx((f(z + h) - f(z - h)) / (2 * h), (f(z + cplx(0, h)) - f(z - cplx(0, h))) / (2 * h));
                  }};
    for (double t : {0.6, 0.75}) {
      RadialGraphLevelSet g = extract_field_graph(U, 1 - t * t, 512, 0.25, 0.97, true);
      CHECK(g.volume == doctest::Approx(ball_volume_euclid(t, 1)).epsilon(1e-11));
      CHECK(graph_perimeter(g) == doctest::Approx(ball_perimeter_euclid(t, 1)).epsilon(1e-10));
      CHECK(field_perimeter(g, U.gradient) == doctest::Approx(ball_perimeter_euclid(t, 1)).epsilon(1e-8));
    }
  }
}

TEST_CASE("perturbed symbol: derivative of the distribution function") {
  WeightParams P(1, 2.0, 2.0);
  WeightedSymbol u(HoloFunc::one_plus(1, cplx(0.08, 0.03), 2), P);
  auto grid = level_grid(P, LevelWindow{}, 6);
  DistributionProfile prof = distribution_profile(u, grid);
  CHECK(prof.regular_count() == grid.size());
  for (const auto& L : prof.levels) {
    CHECK(L.dmu == doctest::Approx(L.dmu_flux).epsilon(1e-7));
    CHECK(L.J == doctest::Approx(4 * P.alpha * L.t * L.mu).epsilon(1e-9));
  }
  for (std::size_t k = 1; k < prof.levels.size(); ++k) CHECK(prof.levels[k].mu < prof.levels[k - 1].mu);
  // Graph normal and gradient normal agree on exact level sets.
  const auto& g = *prof.graphs[2];
  CHECK(graph_perimeter(g) == doctest::Approx(level_perimeter(g, u)).epsilon(1e-10));
}

TEST_CASE("level grid spans the window") {
  WeightParams P(1, 2.0, 3.0);
  LevelWindow w;
  auto grid = level_grid(P, w, 5);
  CHECK(model_radius(grid.front(), 3.0) == doctest::Approx(0.75).epsilon(1e-13));
  CHECK(model_radius(grid.back(), 3.0) == doctest::Approx(0.25).epsilon(1e-13));
  CHECK_THROWS_AS(level_grid(P, w, 1), DomainError);
}

TEST_CASE("make_graph computes spectral derivatives and Bergman graph function") {
  std::vector<double> rho(128);
  for (int j = 0; j < 128; ++j) rho[j] = 0.5 + 0.05 * std::cos(2 * pi * j / 128);
  RadialGraphLevelSet g = make_graph(0.5, rho, 0.5);
  for (int j = 0; j < 128; ++j) CHECK(g.drho[j] == doctest::Approx(-0.05 * std::sin(2 * pi * j / 128)).scale(1.0).epsilon(1e-13));
  CHECK(ball_volume(g.r, 1) == doctest::Approx(g.volume).epsilon(1e-13));
  CHECK_THROWS_AS(make_graph(0.5, {0.5, 0.5, 1.2, 0.5}, 0.5), DomainError);
}
