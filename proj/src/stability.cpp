#include "bergman/stability.hpp"

#include <boost/math/tools/roots.hpp>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bergman/errors.hpp"

namespace bergman {

double matched_ball_radius(double volume, int n) {
  if (!(volume > 0.0)) throw DomainError("volume must be positive");
  return ball_volume_inverse(volume, n);
}

double radial_density(double r, int n) {
  return sphere_area(n) * std::pow(r, 2 * n - 1) * std::pow(1.0 - r * r, -n - 1.0);
}

double radial_density_prime(double r, int n) {
  const double d = 1.0 - r * r;
  return sphere_area(n) * std::pow(r, 2 * n - 2) * std::pow(d, -n - 2.0) *
         ((2.0 * n - 1.0) * d + 2.0 * (n + 1.0) * r * r);
}

DeficitReport fuglede_deficit(const RadialGraphLevelSet& E, const FugledeOptions& opts) {
  DeficitReport rep;
  SphereNorms nu = sphere_norms(SphereFunction(E.bergman_u));
  rep.w1inf = nu.w1inf;
  if (rep.w1inf > opts.eps0) {
    std::ostringstream os;
    os << "graph W^{1,inf} norm " << rep.w1inf << " exceeds eps0 = " << opts.eps0;
    throw RegimeError(Regime::OutsideFugledeRegime, os.str());
  }
  BarycenterResult bar = barycenter(E);
  rep.bar_norm = std::abs(bar.a);
  if (rep.bar_norm > opts.bar_tol) {
    std::ostringstream os;
    os << "set is not centered (|Bar| = " << rep.bar_norm << ")";
    throw RegimeError(Regime::OutsideFugledeRegime, os.str());
  }
  rep.volume = E.volume;
  rep.r = matched_ball_radius(E.volume, 1);
  rep.perimeter = graph_perimeter(E);
  rep.ball_perimeter = ball_perimeter(rep.r, 1);
  rep.deficit = (rep.perimeter - rep.ball_perimeter) / rep.ball_perimeter;
  rep.w12sq = nu.w12sq;
  rep.ratio = rep.w12sq > 0.0 ? rep.deficit / rep.w12sq : 0.0;
  return rep;
}

RadialGraphLevelSet synthetic_graph(double r, double eps, int k, int points) {
  if (!(r > 0.0)) throw DomainError("radius must be positive");
  const double target = ball_volume(r, 1);
  std::vector<double> th(points);
  for (int j = 0; j < points; ++j) th[j] = 2.0 * std::numbers::pi * j / points;
  auto radii = [&](double c0) {
    std::vector<double> rho(points);
    for (int j = 0; j < points; ++j) rho[j] = std::tanh(0.5 * r * (1.0 + c0 + eps * std::cos(k * th[j])));
    return rho;
  };
  auto excess = [&](double c0) {
    double s = 0.0;
    for (double v : radii(c0)) s += ball_volume_euclid(v, 1);
    return s / points - target;
  };
  double c0 = 0.0;
  if (eps != 0.0) {
    boost::uintmax_t iters = 200;
    auto br = boost::math::tools::toms748_solve(excess, -0.5, 0.5, boost::math::tools::eps_tolerance<double>(52),
                                                iters);
    c0 = 0.5 * (br.first + br.second);
  }
  std::vector<double> rho = radii(c0);
  std::vector<double> drho(points);
  for (int j = 0; j < points; ++j) {
    double x = 0.5 * r * (1.0 + c0 + eps * std::cos(k * th[j]));
    double sech2 = 1.0 - std::tanh(x) * std::tanh(x);
    drho[j] = -0.5 * r * eps * k * std::sin(k * th[j]) * sech2;
  }
  return make_graph(0.0, std::move(rho), std::tanh(0.5 * r), std::move(drho));
}

SecondVariation second_variation_Q(const RadialGraphLevelSet& E) {
  SecondVariation sv;
  const int N = E.size();
  double mean = 0.0;
  for (double v : E.rho) mean += v;
  mean /= N;
  sv.mean_radius = mean;
  std::vector<double> u(N);
  for (int j = 0; j < N; ++j) u[j] = E.rho[j] / mean - 1.0;
  SphereFunction uf(u);
  SphereNorms nu = sphere_norms(uf);
  const double total = nu.l2 * nu.l2;
  const double first = nu.first_harmonic_norm * nu.first_harmonic_norm;
  if (total > 0.0 && first > 1e-3 * total) {
    std::ostringstream os;
    os << "first-harmonic energy " << first << " exceeds 1e-3 of " << total;
    throw RegimeError(Regime::Normalization, os.str());
  }
  sv.u_l2sq = total;
  sv.w12sq = nu.w12sq;
  sv.Q = 0.5 * radial_density_prime(mean, 1) * mean * mean * total;
  sv.coercivity_ratio = sv.w12sq > 0.0 ? sv.Q / sv.w12sq : 0.0;
  sv.remainder = E.volume - ball_volume_euclid(mean, 1) - sv.Q;
  sv.u_c1 = nu.w1inf;
  return sv;
}

}  // namespace bergman
