#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "bergman/geometry.hpp"

namespace bergman {

// Neumaier summation; the n = 2 tensor rules add up ~10^5 small terms.
class CompensatedSum {
 public:
  CompensatedSum& operator+=(double x) {
    double t = sum_ + x;
    comp_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
    sum_ = t;
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Jacobi rule on [-1,1] for the weight (1-x)^a (1+x)^b, a, b > -1.
GaussRule gauss_jacobi(int order, double a, double b);
GaussRule gauss_legendre(int order);
// Gauss-Legendre mapped to [lo, hi].
GaussRule gauss_legendre(int order, double lo, double hi);

// Rule for int_0^1 g(rho) rho^{2n-1} (1-rho^2)^{alpha-n-1} d rho.
struct RadialRule {
  double alpha;
  int n;
  int order;
  std::vector<double> nodes;
  std::vector<double> weights;
};

RadialRule radial_rule(double alpha, int n, int order);

// Quadrature on the unit sphere of C^n with weights summing to 1.
struct SphereRule {
  int n;
  int degree;
  std::vector<Point> nodes;
  std::vector<double> weights;
};

SphereRule circle_rule(int points);
// n = 1: uniform circle; n = 2: Hopf coordinates (|z1|^2 by Gauss-Legendre,
// both phases uniform). `resolution` is the number of phase samples.
SphereRule sphere_rule(int n, int resolution);

// Mass of [rho0, 1) under the normalized radial measure of mu_alpha.
double eta_alpha_mass(double rho0, double alpha, int n);

enum class BallMeasure { Weighted, Invariant };

// Tensor-product estimate of int F d mu_alpha (Weighted) or int F dv_g
// (Invariant, using the alpha of the radial rule to absorb the boundary).
double ball_integral(const std::function<double(const Point&)>& F, const RadialRule& radial,
                     const SphereRule& sphere, BallMeasure measure = BallMeasure::Weighted);

}  // namespace bergman
