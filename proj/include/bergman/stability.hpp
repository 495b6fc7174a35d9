#pragma once

#include "bergman/barycenter.hpp"
#include "bergman/sphere_function.hpp"

namespace bergman {

double matched_ball_radius(double volume, int n = 1);

// Radial density of the invariant volume in polar form, and its derivative.
double radial_density(double r, int n);
double radial_density_prime(double r, int n);

struct DeficitReport {
  double volume = 0.0;
  double r = 0.0;
  double perimeter = 0.0;
  double ball_perimeter = 0.0;
  double deficit = 0.0;
  double w12sq = 0.0;
  double ratio = 0.0;
  double w1inf = 0.0;
  double bar_norm = 0.0;
};

struct FugledeOptions {
  double eps0 = 0.1;
  double bar_tol = 1e-6;
};

DeficitReport fuglede_deficit(const RadialGraphLevelSet& E, const FugledeOptions& opts = {});

// Graph rho = tanh((r/2)(1 + c0 + eps cos(k theta))) with c0 chosen so the
// set has the volume of the Bergman ball of radius r.
RadialGraphLevelSet synthetic_graph(double r, double eps, int k, int points = 256);

struct SecondVariation {
  double Q = 0.0;
  double mean_radius = 0.0;
  double u_l2sq = 0.0;
  double w12sq = 0.0;
  double coercivity_ratio = 0.0;  // Q / |u|_{W^{1,2}}^2
  double remainder = 0.0;         // mu(E) - mu(ball of mean radius) - Q
  double u_c1 = 0.0;
};

// Quadratic volume term of the graph u = rho/mean(rho) - 1, which must have
// no first harmonic (energy <= 1e-3 of the total).
SecondVariation second_variation_Q(const RadialGraphLevelSet& E);

}  // namespace bergman
