#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bergman/level_sets.hpp"

namespace bergman {

// Polar quadrature of the invariant measure over a radial graph.
struct SetQuadrature {
  std::vector<cplx> z;
  std::vector<double> w;
  double mass = 0.0;
};

SetQuadrature set_quadrature(const RadialGraphLevelSet& E, int radial_nodes = 48);

double L_functional(const SetQuadrature& Q, cplx a);
double L_functional(const RadialGraphLevelSet& E, cplx a);
// Real gradient on R^2, packed as dL/dx + i dL/dy.
cplx L_gradient(const SetQuadrature& Q, cplx a);
cplx L_gradient(const RadialGraphLevelSet& E, cplx a);
Eigen::Matrix2d L_hessian(const SetQuadrature& Q, cplx a);

struct BarycenterOptions {
  double tol = 1e-10;
  int max_iter = 100;
  int radial_nodes = 48;
};

struct BarycenterResult {
  cplx a;
  double gradient_norm = 0.0;
  int iterations = 0;
  double L_value = 0.0;
  double grad0_norm = 0.0;
  double m0 = 0.0;     // invariant volume of the inscribed centered disc
  double bound = 0.0;  // |grad L(0)| / (2 m0)
  bool certificate_ok = false;
  std::vector<std::string> trace;
};

BarycenterResult barycenter(const RadialGraphLevelSet& E, const BarycenterOptions& opts = {}, cplx start = 0.0);

// Image of E under the recentering automorphism z -> (z-a)/(1-conj(a) z),
// resampled as a radial graph on the same angular grid.
RadialGraphLevelSet recenter(const RadialGraphLevelSet& E, cplx a);

}  // namespace bergman
