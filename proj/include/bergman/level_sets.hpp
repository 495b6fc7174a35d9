#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bergman/holo.hpp"

namespace bergman {

// Radii (Euclidean) bounding the level window and the working subball.
struct LevelWindow {
  double rho_minus = 0.25;
  double rho_plus = 0.75;
  double rho_work = 0.9;

  double t_min(double alpha) const { return model_level(rho_plus, alpha); }
  double t_max(double alpha) const { return model_level(rho_minus, alpha); }
  double bracket_lo() const { return 0.5 * rho_minus; }
  double bracket_hi() const { return 0.5 * (rho_plus + rho_work); }
};

// Star-shaped planar set {rho e^{i theta} : rho < rho(theta)} sampled on a
// uniform angular grid. `bergman_u` is the graph function relative to the
// Bergman ball of equal volume: rho = tanh((r/2)(1+u)).
struct RadialGraphLevelSet {
  double t = 0.0;
  std::vector<double> theta;
  std::vector<double> rho;
  std::vector<double> drho;
  double rho0 = 0.0;
  double volume = 0.0;
  double r = 0.0;
  std::vector<double> bergman_u;

  int size() const { return static_cast<int>(rho.size()); }
  double min_rho() const;
  double max_rho() const;
};

// Builds a graph from samples; drho is filled spectrally when not supplied.
RadialGraphLevelSet make_graph(double t, std::vector<double> rho, double rho0,
                               std::vector<double> drho = {});

// Level set of a planar function given by its value and packed Euclidean gradient.
struct PlanarField {
  std::function<double(cplx)> value;
  std::function<cplx(cplx)> gradient;
};

// {U = c} as a radial graph for U strictly monotone along rays in [lo, hi].
// `decreasing` selects the expected direction.
RadialGraphLevelSet extract_field_graph(const PlanarField& U, double c, int points, double lo, double hi,
                                        bool decreasing);

RadialGraphLevelSet extract_level_graph(const WeightedSymbol& u, double t, int points = 256,
                                        const LevelWindow& window = {});

double level_volume(const RadialGraphLevelSet& g, int n = 1);
// Invariant perimeter of a level set of a field with the normal taken from its gradient.
double field_perimeter(const RadialGraphLevelSet& g, const std::function<cplx(cplx)>& gradient, int n = 1);
double level_perimeter(const RadialGraphLevelSet& g, const WeightedSymbol& u);
// Same surface integral with the normal taken from the graph itself.
double graph_perimeter(const RadialGraphLevelSet& g);
double coarea_flux_J(const RadialGraphLevelSet& g, const WeightedSymbol& u);
// -mu'(t) as the coarea integral of 1/|grad_b u|_b over {u = t}.
double inverse_flux(const RadialGraphLevelSet& g, const WeightedSymbol& u);
double min_gradient(const RadialGraphLevelSet& g, const WeightedSymbol& u);

struct ProfileOptions {
  int points = 256;
  LevelWindow window{};
  double stencil = 1e-3;  // relative step of the local derivative stencil
  bool keep_graphs = true;
  int threads = 0;
};

struct ProfileLevel {
  double t = 0.0;
  double mu = 0.0;
  double mu_star = 0.0;
  double perimeter = 0.0;
  double J = 0.0;
  double dmu = 0.0;       // -mu'(t), five-point stencil
  double dmu_flux = 0.0;  // -mu'(t), coarea route
  double min_grad = 0.0;
  bool regular = false;
  std::string reason;
};

struct DistributionProfile {
  WeightParams params;
  LevelWindow window;
  std::vector<ProfileLevel> levels;
  std::vector<std::optional<RadialGraphLevelSet>> graphs;

  std::size_t regular_count() const;
};

// Uniform grid of `count` levels whose model radii span the window.
std::vector<double> level_grid(const WeightParams& params, const LevelWindow& window, int count);

double level_measure(const WeightedSymbol& u, double t, const ProfileOptions& opts = {});
DistributionProfile distribution_profile(const WeightedSymbol& u, const std::vector<double>& grid,
                                         const ProfileOptions& opts = {});

}  // namespace bergman
