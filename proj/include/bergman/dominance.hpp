#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "bergman/level_sets.hpp"

namespace bergman {

struct DominanceOptions {
  double tol = 1e-6;
  double anchor_tol = 1e-8;
  std::size_t min_regular = 8;
};

struct DominanceLevel {
  double t = 0.0;
  double mu = 0.0;
  double mu_star = 0.0;
  double margin = 0.0;  // mu_star - mu
  double G_mu = 0.0;
  double G_mu_star = 0.0;
  bool regular = false;
  bool in_window = false;
  bool ok = true;
};

struct DominanceReport {
  bool anchor_found = false;
  double anchor_t = 0.0;
  double anchor_gap = 0.0;  // mu - mu_star at the anchor
  double t_minus = 0.0;
  double t_plus = 0.0;
  std::vector<DominanceLevel> levels;
  bool sign_agreement = true;
  bool pass = false;
  double min_margin = 0.0;
  std::string reason;
};

// Anchors at the first level with mu <= mu_star (refined by bisection with
// `mu_at` when given) and checks mu <= mu_star + tol above it.
DominanceReport verify_dominance(const DistributionProfile& profile,
                                 const std::function<double(double)>& mu_at = {},
                                 const DominanceOptions& opts = {});

// int u^s d mu for the weighted symbol behind `profile`.
struct LayerCake {
  double value = 0.0;
  double window = 0.0;
  double lower_tail = 0.0;
  double upper_tail = 0.0;
};

LayerCake layer_cake_moment(const DistributionProfile& profile, const WeightedSymbol& u, double s,
                            int radial_nodes = 48);
// Same moment by direct ball quadrature.
double direct_moment(const WeightedSymbol& u, double s, const QuadOptions& q = {});

struct ContractionResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double deficit = 0.0;
  double norm_p = 0.0;
};

// Normalizes f in A^p_alpha and compares |f|_{A^q_beta}^q with |1|^q = 1.
ContractionResult contraction_check(const HoloFunc& f, const ContractiveLine& line, const QuadOptions& q = {});

struct GapResult {
  double deficit = 0.0;
  double shape_integral = 0.0;
  double ratio = 0.0;
};

// shape_integral = int t^{s-1} |u~_t|^2_{W^{1,2}} dt over the given levels (trapezoid).
GapResult gap_check(const HoloFunc& f, const ContractiveLine& line, const std::vector<double>& levels,
                    const std::vector<RadialGraphLevelSet>& recentered, const QuadOptions& q = {});

// Hinge integrals H(t) = int (X - t)_+ d mu on a level grid, plus the mean int X d mu.
struct HingeProfile {
  std::vector<double> t;
  std::vector<double> H;
  double mean = 0.0;

  double at(double tau) const;
};

// Tail integration of the distribution function over the profile grid with the
// top tail H(t_last) supplied.
HingeProfile hinge_from_distribution(const DistributionProfile& profile, double top_tail, double mean);
// Direct polar quadrature of (u - t)_+ centered at the maximizer of u.
HingeProfile hinge_direct(const WeightedSymbol& u, const std::vector<double>& t, int points = 256,
                          int radial_nodes = 48);
HingeProfile hinge_model(const WeightParams& params, const std::vector<double>& t);
cplx symbol_maximizer(const WeightedSymbol& u);

struct HingeDominance {
  std::vector<double> margin;  // H_Y - H_X
  std::vector<bool> pass;
  bool all = false;
};

HingeDominance hinge_dominance(const HingeProfile& X, const HingeProfile& Y, double tol = 1e-8,
                               double mean_tol = 1e-6);

// Convex piecewise-linear function on [0,1] with Phi(0) = 0.
class ConvexTestFunction {
 public:
  ConvexTestFunction(std::vector<double> knots, std::vector<double> values);
  static ConvexTestFunction hinge(double t);
  static ConvexTestFunction affine(double slope);
  static ConvexTestFunction random(std::mt19937_64& rng, int knots = 32);

  double operator()(double x) const;
  const std::vector<double>& knots() const { return knots_; }
  double initial_slope() const { return slope0_; }
  // Weights c_k of the hinges (x - knot_k)_+ for interior knots.
  const std::vector<double>& hinge_weights() const { return c_; }

 private:
  std::vector<double> knots_;
  std::vector<double> values_;
  double slope0_ = 0.0;
  std::vector<double> c_;
};

struct ConvexTest {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
};

// lhs = int Phi(X) d mu, rhs = int Phi(Y) d mu through the hinge representation.
ConvexTest convex_functional_test(const HingeProfile& X, const HingeProfile& Y, const ConvexTestFunction& Phi);

}  // namespace bergman
