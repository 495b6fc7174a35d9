#include "bergman/geometry.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <numbers>

#include "bergman/errors.hpp"

namespace bergman {

namespace {

void require_dimension(int n) {
  if (n < 1) throw DomainError("dimension n must be >= 1");
}

}  // namespace

double norm2(const Point& z) {
  double s = 0.0;
  for (const auto& c : z) s += std::norm(c);
  return s;
}

cplx hermitian(const Point& z, const Point& w) {
  if (z.size() != w.size()) throw DomainError("dimension mismatch in hermitian product");
  cplx s = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j) s += z[j] * std::conj(w[j]);
  return s;
}

WeightParams::WeightParams(int n_, double p_, double alpha_) : n(n_), p(p_), alpha(alpha_) {
  require_dimension(n);
  if (!(p > 0.0)) throw DomainError("p must be positive");
  if (!(alpha > n)) throw DomainError("alpha must exceed n");
}

ContractiveLine::ContractiveLine(const WeightParams& b, double q_, double beta_)
    : base(b), q(q_), beta(beta_) {
  if (!(q > base.p)) throw DomainError("q must exceed p");
  if (!(beta > base.alpha)) throw DomainError("beta must exceed alpha");
  double lhs = q / base.p, rhs = beta / base.alpha;
  if (std::abs(lhs - rhs) > 1e-12 * std::abs(rhs))
    throw DomainError("q/p must equal beta/alpha");
}

ContractiveLine ContractiveLine::scaled(const WeightParams& b, double s) {
  return ContractiveLine(b, s * b.p, s * b.alpha);
}

double sphere_area(int n) {
  require_dimension(n);
  return 2.0 * std::pow(std::numbers::pi, n) / std::tgamma(static_cast<double>(n));
}

NormalizationConstants normalization_constants(int n, double alpha) {
  require_dimension(n);
  if (!(alpha > n)) throw DomainError("alpha must exceed n");
  double inv = 0.5 * sphere_area(n) * boost::math::beta(static_cast<double>(n), alpha - n);
  return {1.0, 1.0 / inv};
}

double invariant_measure_density(const Point& z) {
  double s = norm2(z);
  if (!(s < 1.0)) throw DomainError("point outside the open ball");
  return std::pow(1.0 - s, -static_cast<double>(z.size()) - 1.0);
}

double invariant_measure_density(cplx z) { return invariant_measure_density(Point{z}); }

double euclid_radius(double r) { return std::tanh(0.5 * r); }

double bergman_radius(double t) {
  if (!(t >= 0.0 && t < 1.0)) throw DomainError("Euclidean radius must lie in [0,1)");
  return 2.0 * std::atanh(t);
}

double ball_volume_euclid(double t, int n) {
  require_dimension(n);
  if (!(t >= 0.0 && t < 1.0)) throw DomainError("Euclidean radius must lie in [0,1)");
  double t2 = t * t;
  return sphere_area(n) / (2.0 * n) * std::pow(t2 / (1.0 - t2), n);
}

double ball_volume(double r, int n) {
  if (!(r >= 0.0)) throw DomainError("radius must be nonnegative");
  return ball_volume_euclid(euclid_radius(r), n);
}

double ball_perimeter_euclid(double t, int n) {
  require_dimension(n);
  if (!(t > 0.0 && t < 1.0)) throw DomainError("Euclidean radius must lie in (0,1)");
  return sphere_area(n) * std::pow(t, 2 * n - 1) * std::pow(1.0 - t * t, -n);
}

double ball_perimeter(double r, int n) {
  if (!(r > 0.0)) throw DomainError("radius must be positive");
  return ball_perimeter_euclid(euclid_radius(r), n);
}

GeodesicBall geodesic_ball(double r, int n) {
  double t = euclid_radius(r);
  return {r, t, ball_volume(r, n), r > 0.0 ? ball_perimeter(r, n) : 0.0};
}

double ball_volume_inverse_euclid(double volume, int n) {
  require_dimension(n);
  if (!(volume >= 0.0) || !std::isfinite(volume)) throw DomainError("volume must be finite and nonnegative");
  // V = (C_n/2n) X^n with X = t^2/(1-t^2).
  double X = std::pow(2.0 * n * volume / sphere_area(n), 1.0 / n);
  return std::sqrt(X / (1.0 + X));
}

double ball_volume_inverse(double volume, int n) {
  return bergman_radius(ball_volume_inverse_euclid(volume, n));
}

double iso_profile_phi(double xi, const WeightParams& params) {
  if (!(xi > 0.0)) throw DomainError("volume must be positive");
  double t = ball_volume_inverse_euclid(xi, params.n);
  double S = ball_perimeter_euclid(t, params.n);
  return S * S / (4.0 * params.n * params.alpha * xi);
}

double comparison_G(double x, double x_ref, const WeightParams& params) {
  if (!(x > 0.0) || !(x_ref > 0.0)) throw DomainError("volumes must be positive");
  if (x == x_ref) return 0.0;
  // Integrate in y = log(xi): dxi/Phi = xi dy/Phi.
  auto integrand = [&](double y) {
    double xi = std::exp(y);
    return xi / iso_profile_phi(xi, params);
  };
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, std::log(x), std::log(x_ref), 20, 1e-14, &err);
}

double model_radius(double t, double alpha) {
  if (!(t > 0.0 && t <= 1.0)) throw DomainError("model level must lie in (0,1]");
  return std::sqrt(1.0 - std::pow(t, 1.0 / alpha));
}

double model_level(double rho, double alpha) {
  if (!(rho >= 0.0 && rho < 1.0)) throw DomainError("radius must lie in [0,1)");
  return std::pow(1.0 - rho * rho, alpha);
}

double model_profile(double t, const WeightParams& params) {
  return ball_volume_euclid(model_radius(t, params.alpha), params.n);
}

Point mobius_involution(const Point& a, const Point& z) {
  if (a.size() != z.size()) throw DomainError("dimension mismatch");
  double a2 = norm2(a);
  if (!(a2 < 1.0) || !(norm2(z) < 1.0)) throw DomainError("automorphism arguments must lie in the open ball");
  cplx za = hermitian(z, a);
  cplx den = 1.0 - za;
  Point out(z.size());
  if (a2 == 0.0) {
    for (std::size_t j = 0; j < z.size(); ++j) out[j] = -z[j];
    return out;
  }
  double s = std::sqrt(1.0 - a2);
  for (std::size_t j = 0; j < z.size(); ++j) {
    cplx Pz = za / a2 * a[j];
    cplx Qz = z[j] - Pz;
    out[j] = (a[j] - Pz - s * Qz) / den;
  }
  return out;
}

Point point_automorphism(const Point& a, const Point& z) {
  Point w = mobius_involution(a, z);
  for (auto& c : w) c = -c;
  return w;
}

cplx point_automorphism(cplx a, cplx z) {
  if (!(std::norm(a) < 1.0) || !(std::norm(z) < 1.0))
    throw DomainError("automorphism arguments must lie in the open ball");
  return (z - a) / (1.0 - std::conj(a) * z);
}

cplx mobius_involution(cplx a, cplx z) { return -point_automorphism(a, z); }

}  // namespace bergman
