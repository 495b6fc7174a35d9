#include "bergman/level_sets.hpp"

#include <boost/math/tools/roots.hpp>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bergman/errors.hpp"
#include "bergman/parallel.hpp"
#include "bergman/sphere_function.hpp"

namespace bergman {

namespace {

constexpr int kMonotoneSamples = 64;

double radial_derivative(cplx g, double th) { return std::real(g * std::conj(std::polar(1.0, th))); }

double angular_derivative(cplx g, cplx z) { return std::real(g * std::conj(cplx(0.0, 1.0) * z)); }

std::string ray_label(int j, double th) {
  std::ostringstream os;
  os << "ray " << j << " (theta=" << th << ")";
  return os.str();
}

}  // namespace

double RadialGraphLevelSet::min_rho() const { return *std::min_element(rho.begin(), rho.end()); }
double RadialGraphLevelSet::max_rho() const { return *std::max_element(rho.begin(), rho.end()); }

RadialGraphLevelSet make_graph(double t, std::vector<double> rho, double rho0, std::vector<double> drho) {
  RadialGraphLevelSet g;
  const int N = static_cast<int>(rho.size());
  if (N < 4) throw DomainError("graph needs at least four rays");
  for (double v : rho)
    if (!(v > 0.0 && v < 1.0)) throw DomainError("graph radii must lie in (0,1)");
  g.t = t;
  g.rho0 = rho0;
  g.theta.resize(N);
  for (int j = 0; j < N; ++j) g.theta[j] = 2.0 * std::numbers::pi * j / N;
  g.rho = std::move(rho);
  if (drho.empty())
    g.drho = SphereFunction(g.rho).derivative_samples();
  else
    g.drho = std::move(drho);
  g.volume = level_volume(g, 1);
  g.r = ball_volume_inverse(g.volume, 1);
  g.bergman_u.resize(N);
  for (int j = 0; j < N; ++j) g.bergman_u[j] = 2.0 * std::atanh(g.rho[j]) / g.r - 1.0;
  return g;
}

RadialGraphLevelSet extract_field_graph(const PlanarField& U, double c, int points, double lo, double hi,
                                        bool decreasing) {
  if (points < 4) throw DomainError("need at least four rays");
  const double sgn = decreasing ? 1.0 : -1.0;  // sgn*(U - c) decreases along rays
  std::vector<double> rho(points), drho(points);
  for (int j = 0; j < points; ++j) {
    const double th = 2.0 * std::numbers::pi * j / points;
    const cplx dir = std::polar(1.0, th);
    auto F = [&](double r) { return sgn * (U.value(r * dir) - c); };
    double flo = F(lo), fhi = F(hi);
    if (!(flo > 0.0 && fhi < 0.0))
      throw RegimeError(Regime::LevelOutsideWindow, "no sign change on " + ray_label(j, th));
    for (int k = 0; k <= kMonotoneSamples; ++k) {
      double r = lo + (hi - lo) * k / kMonotoneSamples;
      if (!(sgn * radial_derivative(U.gradient(r * dir), th) < 0.0))
        throw RegimeError(Regime::OutsideRadialGraphRegime, "level function not monotone on " + ray_label(j, th));
    }
    boost::uintmax_t iters = 200;
    auto br = boost::math::tools::toms748_solve(F, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(52),
                                                iters);
    double r = 0.5 * (br.first + br.second);
    // Newton polish; F is smooth and strictly monotone here.
    for (int it = 0; it < 4 && std::abs(F(r)) >= 1e-13; ++it) {
      double d = sgn * radial_derivative(U.gradient(r * dir), th);
      double step = F(r) / d;
      if (r - step > br.first - 1e-12 && r - step < br.second + 1e-12) r -= step;
    }
    if (!(std::abs(F(r)) < 1e-12)) {
      std::ostringstream os;
      os << "root residual " << std::abs(F(r)) << " on " << ray_label(j, th);
      throw SolverError(os.str());
    }
    cplx z = r * dir;
    cplx g = U.gradient(z);
    rho[j] = r;
    drho[j] = -angular_derivative(g, z) / radial_derivative(g, th);
  }
  return make_graph(c, std::move(rho), 0.0, std::move(drho));
}

RadialGraphLevelSet extract_level_graph(const WeightedSymbol& u, double t, int points, const LevelWindow& window) {
  if (u.params().n != 1) throw DomainError("level-set extraction is implemented for n = 1");
  if (!(t > 0.0)) throw RegimeError(Regime::LevelOutsideWindow, "level must be positive");
  HoloFunc phi = u.f().minus_one();
  double sup_phi = sup_on_sphere(phi, window.rho_work);
  if (sup_phi > 0.5) {
    std::ostringstream os;
    os << "sup |phi| = " << sup_phi << " exceeds 1/2 on the working subball";
    throw RegimeError(Regime::OutsideRadialGraphRegime, os.str());
  }
  PlanarField field{[&](cplx z) { return u.log_u(z); }, [&](cplx z) { return u.grad_log_u(z); }};
  RadialGraphLevelSet g =
      extract_field_graph(field, std::log(t), points, window.bracket_lo(), window.bracket_hi(), true);
  g.t = t;
  g.rho0 = model_radius(std::min(t, 1.0), u.params().alpha);
  return g;
}

double level_volume(const RadialGraphLevelSet& g, int n) {
  if (n != 1) throw DomainError("graph volume is implemented for n = 1");
  double s = 0.0;
  for (double r : g.rho) s += ball_volume_euclid(r, 1);
  return s / g.size();
}

namespace {

// Sum of (1-|z|^2)^{-n-1/2} sqrt(1-|<N,z>|^2) dH over the graph, with the
// unnormalized normal supplied per ray.
template <class NormalAt>
double perimeter_sum(const RadialGraphLevelSet& g, int n, NormalAt normal_at) {
  if (n != 1) throw DomainError("graph perimeter is implemented for n = 1");
  const int N = g.size();
  double s = 0.0;
  for (int j = 0; j < N; ++j) {
    const double r = g.rho[j];
    const cplx z = std::polar(r, g.theta[j]);
    cplx nv = normal_at(j, z);
    double nn = std::abs(nv);
    if (!(nn >= 1e-10)) throw RegimeError(Regime::NonRegularValue, ray_label(j, g.theta[j]));
    double nz = std::abs(nv / nn * std::conj(z));
    double dens = std::pow(1.0 - r * r, -n - 0.5) * std::sqrt(std::max(0.0, 1.0 - nz * nz));
    s += dens * std::hypot(r, g.drho[j]);
  }
  return s * 2.0 * std::numbers::pi / N;
}

}  // namespace

double field_perimeter(const RadialGraphLevelSet& g, const std::function<cplx(cplx)>& gradient, int n) {
  return perimeter_sum(g, n, [&](int, cplx z) { return gradient(z); });
}

double level_perimeter(const RadialGraphLevelSet& g, const WeightedSymbol& u) {
  return perimeter_sum(g, u.params().n, [&](int, cplx z) { return u.grad_u(z); });
}

double graph_perimeter(const RadialGraphLevelSet& g) {
  // Outward normal of rho(theta) e^{i theta} is (rho - i rho') e^{i theta}.
  return perimeter_sum(g, 1, [&](int j, cplx) { return cplx(g.rho[j], -g.drho[j]) * std::polar(1.0, g.theta[j]); });
}

double coarea_flux_J(const RadialGraphLevelSet& g, const WeightedSymbol& u) {
  // |grad_b u|_b d sigma_b = |grad u| dH in the plane.
  const int N = g.size();
  double s = 0.0;
  for (int j = 0; j < N; ++j) {
    cplx z = std::polar(g.rho[j], g.theta[j]);
    double gn = std::abs(u.grad_u(z));
    if (!(gn >= 1e-10)) throw RegimeError(Regime::NonRegularValue, ray_label(j, g.theta[j]));
    s += gn * std::hypot(g.rho[j], g.drho[j]);
  }
  return s * 2.0 * std::numbers::pi / N;
}

double inverse_flux(const RadialGraphLevelSet& g, const WeightedSymbol& u) {
  const int N = g.size();
  double s = 0.0;
  for (int j = 0; j < N; ++j) {
    const double r = g.rho[j];
    cplx z = std::polar(r, g.theta[j]);
    double gn = std::abs(u.grad_u(z));
    if (!(gn >= 1e-10)) throw RegimeError(Regime::NonRegularValue, ray_label(j, g.theta[j]));
    s += std::pow(1.0 - r * r, -2.0) / gn * std::hypot(r, g.drho[j]);
  }
  return s * 2.0 * std::numbers::pi / N;
}

double min_gradient(const RadialGraphLevelSet& g, const WeightedSymbol& u) {
  double m = INFINITY;
  for (int j = 0; j < g.size(); ++j) m = std::min(m, std::abs(u.grad_u(std::polar(g.rho[j], g.theta[j]))));
  return m;
}

std::size_t DistributionProfile::regular_count() const {
  return static_cast<std::size_t>(std::count_if(levels.begin(), levels.end(), [](const ProfileLevel& l) { return l.regular; }));
}

std::vector<double> level_grid(const WeightParams& params, const LevelWindow& window, int count) {
  if (count < 2) throw DomainError("level grid needs at least two levels");
  double lo = window.t_min(params.alpha), hi = window.t_max(params.alpha);
  std::vector<double> t(count);
  for (int k = 0; k < count; ++k) t[k] = lo + (hi - lo) * k / (count - 1);
  return t;
}

double level_measure(const WeightedSymbol& u, double t, const ProfileOptions& opts) {
  return extract_level_graph(u, t, opts.points, opts.window).volume;
}

DistributionProfile distribution_profile(const WeightedSymbol& u, const std::vector<double>& grid,
                                         const ProfileOptions& opts) {
  DistributionProfile prof{u.params(), opts.window, std::vector<ProfileLevel>(grid.size()),
                           std::vector<std::optional<RadialGraphLevelSet>>(grid.size())};
  for (std::size_t k = 1; k < grid.size(); ++k)
    if (!(grid[k] > grid[k - 1])) throw DomainError("level grid must be increasing");
  parallel_for(
      grid.size(),
      [&](std::size_t k) {
        ProfileLevel& L = prof.levels[k];
        const double t = grid[k];
        L.t = t;
        L.mu_star = model_profile(t, u.params());
        try {
          RadialGraphLevelSet g = extract_level_graph(u, t, opts.points, opts.window);
          L.mu = g.volume;
          L.min_grad = min_gradient(g, u);
          if (!(L.min_grad >= 1e-10)) throw RegimeError(Regime::NonRegularValue, "vanishing gradient on level");
          L.perimeter = level_perimeter(g, u);
          L.J = coarea_flux_J(g, u);
          L.dmu_flux = inverse_flux(g, u);
          const double h = opts.stencil * t;
          double m[4];
          const int off[4] = {-2, -1, 1, 2};
          for (int i = 0; i < 4; ++i) m[i] = level_measure(u, t + off[i] * h, opts);
          L.dmu = -(m[0] - 8.0 * m[1] + 8.0 * m[2] - m[3]) / (12.0 * h);
          L.regular = true;
          if (opts.keep_graphs) prof.graphs[k] = std::move(g);
        } catch (const RegimeError& e) {
          L.regular = false;
          L.reason = e.what();
        } catch (const SolverError& e) {
          L.regular = false;
          L.reason = e.what();
        }
      },
      opts.threads);
  return prof;
}

}  // namespace bergman
