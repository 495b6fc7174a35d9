#include "bergman/quadrature.hpp"

#include <Eigen/Dense>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bergman/errors.hpp"

namespace bergman {

GaussRule gauss_jacobi(int order, double a, double b) {
  if (order < 1) throw DomainError("quadrature order must be positive");
  if (!(a > -1.0) || !(b > -1.0)) throw DomainError("Jacobi parameters must exceed -1");
  Eigen::VectorXd diag(order);
  Eigen::VectorXd sub(std::max(order - 1, 1));
  const double ab = a + b;
  diag(0) = (b - a) / (ab + 2.0);
  for (int k = 1; k < order; ++k) {
    double s = 2.0 * k + ab;
    diag(k) = (b * b - a * a) / (s * (s + 2.0));
  }
  for (int k = 1; k < order; ++k) {
    double s = 2.0 * k + ab;
    double beta;
    if (k == 1)
      beta = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    else
      beta = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    sub(k - 1) = std::sqrt(beta);
  }
  const double mu0 = std::pow(2.0, ab + 1.0) * boost::math::beta(a + 1.0, b + 1.0);
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  if (order == 1) {
    rule.nodes[0] = diag(0);
    rule.weights[0] = mu0;
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub.head(order - 1), Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw SolverError("Golub-Welsch eigensolver failed");
  for (int i = 0; i < order; ++i) {
    rule.nodes[i] = es.eigenvalues()(i);
    double v0 = es.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

GaussRule gauss_legendre(int order) { return gauss_jacobi(order, 0.0, 0.0); }

GaussRule gauss_legendre(int order, double lo, double hi) {
  GaussRule r = gauss_legendre(order);
  double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
  for (int i = 0; i < order; ++i) {
    r.nodes[i] = mid + half * r.nodes[i];
    r.weights[i] *= half;
  }
  return r;
}

RadialRule radial_rule(double alpha, int n, int order) {
  if (n < 1) throw DomainError("dimension n must be >= 1");
  if (!(alpha > n)) throw DomainError("alpha must exceed n");
  if (order < 4) throw DomainError("radial order must be >= 4");
  GaussRule gj = gauss_jacobi(order, alpha - n - 1.0, n - 1.0);
  RadialRule rule{alpha, n, order, {}, {}};
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const double scale = std::pow(2.0, -alpha);
  for (int i = 0; i < order; ++i) {
    rule.nodes[i] = std::sqrt(0.5 * (1.0 + gj.nodes[i]));
    rule.weights[i] = scale * gj.weights[i];
  }
  return rule;
}

SphereRule circle_rule(int points) {
  if (points < 1) throw DomainError("circle rule needs at least one point");
  SphereRule rule{1, points - 1, {}, {}};
  rule.nodes.reserve(points);
  rule.weights.assign(points, 1.0 / points);
  for (int j = 0; j < points; ++j) {
    double th = 2.0 * std::numbers::pi * j / points;
    rule.nodes.push_back(Point{std::polar(1.0, th)});
  }
  return rule;
}

SphereRule sphere_rule(int n, int resolution) {
  if (n == 1) return circle_rule(resolution);
  if (n != 2) throw DomainError("sphere rules are implemented for n = 1 and n = 2");
  if (resolution < 2) throw DomainError("sphere resolution must be >= 2");
  const int m = resolution / 4 + 1;
  GaussRule gl = gauss_legendre(m, 0.0, 1.0);
  SphereRule rule{2, std::min(resolution - 1, 4 * m - 2), {}, {}};
  rule.nodes.reserve(static_cast<std::size_t>(m) * resolution * resolution);
  for (int i = 0; i < m; ++i) {
    double w = gl.nodes[i];
    double a = std::sqrt(w), b = std::sqrt(1.0 - w);
    double wt = gl.weights[i] / (static_cast<double>(resolution) * resolution);
    for (int j = 0; j < resolution; ++j) {
      cplx e1 = std::polar(a, 2.0 * std::numbers::pi * j / resolution);
      for (int k = 0; k < resolution; ++k) {
        rule.nodes.push_back(Point{e1, std::polar(b, 2.0 * std::numbers::pi * k / resolution)});
        rule.weights.push_back(wt);
      }
    }
  }
  return rule;
}

double eta_alpha_mass(double rho0, double alpha, int n) {
  if (!(rho0 > 0.0 && rho0 < 1.0)) throw DomainError("rho0 must lie in (0,1)");
  if (!(alpha > n)) throw DomainError("alpha must exceed n");
  // In s = rho^2 the mass is int_{rho0^2}^1 s^{n-1}(1-s)^{alpha-n-1} ds / B(n, alpha-n).
  const double s0 = rho0 * rho0, L = 1.0 - s0;
  GaussRule gj = gauss_jacobi(std::max(n, 4), alpha - n - 1.0, 0.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < gj.nodes.size(); ++i) {
    double s = s0 + 0.5 * L * (1.0 + gj.nodes[i]);
    sum += gj.weights[i] * std::pow(s, n - 1);
  }
  sum *= std::pow(0.5 * L, alpha - n);
  return sum / boost::math::beta(static_cast<double>(n), alpha - n);
}

double ball_integral(const std::function<double(const Point&)>& F, const RadialRule& radial,
                     const SphereRule& sphere, BallMeasure measure) {
  if (sphere.n != radial.n) throw DomainError("radial and sphere rules disagree on n");
  const double Cn = sphere_area(radial.n);
  double prefactor = Cn;
  if (measure == BallMeasure::Weighted) prefactor *= normalization_constants(radial.n, radial.alpha).c_alpha_n;
  CompensatedSum total;
  Point z(radial.n);
  for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
    const double rho = radial.nodes[i];
    CompensatedSum inner;
    for (std::size_t j = 0; j < sphere.nodes.size(); ++j) {
      for (int k = 0; k < radial.n; ++k) z[k] = rho * sphere.nodes[j][k];
      double v = F(z);
      if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "non-finite integrand at radial node " << i << " (rho=" << rho << "), sphere node " << j;
        throw EvaluationError(os.str());
      }
      inner += sphere.weights[j] * v;
    }
    double w = radial.weights[i];
    if (measure == BallMeasure::Invariant) w *= std::pow(1.0 - rho * rho, -radial.alpha);
    total += w * inner.value();
  }
  return prefactor * total.value();
}

}  // namespace bergman
