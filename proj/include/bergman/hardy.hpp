#pragma once

#include <functional>
#include <vector>

#include "bergman/holo.hpp"

namespace bergman {

double poisson_szego(const Point& z, const Point& zeta);
double poisson_szego(cplx z, cplx zeta);

// Poisson integral of boundary data g at z (n = 1).
double poisson_extension(const std::function<double(cplx)>& g, cplx z, int points = 4096);

// Angular mean of |1 - rho e^{i theta}|^{-2 alpha}, graded toward theta = 0.
double kernel_angular_mean(double rho, double alpha);

// K_alpha = |P(., zeta)|_{L^{alpha/n}(mu_alpha)} truncated to |z| < R_k = 1 - 10^{-k}.
struct KAlphaResult {
  double alpha = 0.0;
  int n = 1;
  std::vector<double> radii;
  std::vector<double> values;  // truncated K (not K^q)
  bool converged = false;
  double value = 0.0;          // last truncated value
  double zeta_spread = 0.0;    // relative difference between two boundary points at R = 0.9
};

KAlphaResult K_alpha(double alpha, int n = 1, int max_k = 6);

struct HardyLimitRow {
  double gamma = 0.0;
  double a_norm = 0.0;
  double k_gamma = 0.0;
  bool k_converged = false;
  double hardy_norm = 0.0;
  double gap = 0.0;
  bool embedding_ok = false;
};

struct HardyLimitSweep {
  double r = 0.0;
  double hardy_norm = 0.0;
  std::vector<HardyLimitRow> rows;
  bool gaps_decreasing = false;
  bool k_decreasing = false;
};

// Orders are doubled automatically when gamma - n <= 0.02.
double borderline_bergman_norm(const HoloFunc& f, const WeightParams& params, const QuadOptions& q = {});
HardyLimitSweep hardy_limit_sweep(const HoloFunc& f, double r, const std::vector<double>& gammas,
                                  const QuadOptions& q = {}, bool with_kernel = true);

struct ChainReport {
  double a_beta_q = 0.0;
  double a_alpha_p = 0.0;
  double h_nr = 0.0;
  double c1_norm = 0.0;
  bool pass = false;
};

ChainReport chain_check(const HoloFunc& f, const ContractiveLine& line, const QuadOptions& q = {},
                        double tol = 1e-8);

// (int_S |f(rho zeta)|^q d sigma)^{1/q}
double invariant_mean(const HoloFunc& f, double q, double rho, const QuadOptions& opts = {});

}  // namespace bergman
