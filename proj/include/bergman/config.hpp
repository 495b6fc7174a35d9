#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bergman/holo.hpp"
#include "bergman/level_sets.hpp"

namespace bergman {

// Experiment plan read from an INI-style file. Every field has a default so
// an empty file is a valid config; to_ini() writes the fully resolved form.
struct ExperimentConfig {
  std::string command = "norms";
  std::string out = "out";
  std::uint64_t seed = 20240601;
  int threads = 1;
  double tolerance_scale = 1.0;

  // [function]: "index re im" terms separated by ';', multi-indices comma separated.
  int n = 1;
  std::vector<HoloFunc::Term> coeffs{{{0}, 1.0}};

  // [params]
  double p = 2.0;
  double alpha = 2.0;
  double q = 4.0;
  double beta = 4.0;

  // [quadrature]
  int radial_order = 64;
  int sphere_points = 256;
  int graph_points = 256;
  int barycenter_nodes = 48;

  // [levels]
  int level_count = 16;
  LevelWindow window{};
  double stencil = 1e-3;

  // [sweep]
  std::vector<double> eps{0.05, 0.025, 0.0125};
  std::vector<int> modes{2, 3};
  std::vector<double> gamma_offsets{0.5, 0.2, 0.1, 0.05, 0.02};
  double hardy_r = 2.0;
  double fuglede_r = 1.0;  // Bergman radius of the synthetic sets
  std::vector<double> line_scales{1.5, 2.0};
  int phi_count = 500;
  int phi_knots = 32;

  // [setup]
  double r0 = 3.0;
  double eps0 = 0.1;
  double bar_tol = 1e-8;

  HoloFunc function() const;
  WeightParams params() const { return {n, p, alpha}; }
  ContractiveLine line() const { return {params(), q, beta}; }
  QuadOptions quad() const { return {radial_order, sphere_points}; }
  ProfileOptions profile_options() const;
  // Tolerance scaled by tolerance_scale.
  double tol(double base) const { return base * tolerance_scale; }
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string to_ini(const ExperimentConfig& cfg);

// Applies BERGMAN_LAB_COMMAND, _OUT, _SEED, _THREADS and _TOLERANCE_SCALE.
// `getenv` is injectable for tests.
void apply_env_overrides(ExperimentConfig& cfg,
                         const std::function<const char*(const char*)>& getenv = nullptr);

}  // namespace bergman
