#pragma once

#include <complex>
#include <vector>

namespace bergman {

using cplx = std::complex<double>;
// A point of C^n stored coordinate-wise.
using Point = std::vector<cplx>;

double norm2(const Point& z);
// Hermitian product <z, w> = sum z_j conj(w_j).
cplx hermitian(const Point& z, const Point& w);

struct WeightParams {
  int n;
  double p;
  double alpha;

  WeightParams(int n, double p, double alpha);
  double ratio() const { return p / alpha; }
};

// (q, beta) on the line through (p, alpha) with q/p = beta/alpha.
struct ContractiveLine {
  WeightParams base;
  double q;
  double beta;

  ContractiveLine(const WeightParams& base, double q, double beta);
  static ContractiveLine scaled(const WeightParams& base, double s);
  double s() const { return q / base.p; }
  WeightParams target() const { return {base.n, q, beta}; }
};

struct GeodesicBall {
  double r;
  double t;
  double V;
  double S;
};

struct NormalizationConstants {
  double c_n;
  double c_alpha_n;
};

// Surface area of the unit sphere S^{2n-1}.
double sphere_area(int n);
NormalizationConstants normalization_constants(int n, double alpha);

double invariant_measure_density(const Point& z);
double invariant_measure_density(cplx z);

double euclid_radius(double r);
double bergman_radius(double t);

double ball_volume(double r, int n);
double ball_volume_euclid(double t, int n);
double ball_perimeter(double r, int n);
double ball_perimeter_euclid(double t, int n);
GeodesicBall geodesic_ball(double r, int n);
// Inverse of ball_volume; returns the Bergman radius.
double ball_volume_inverse(double volume, int n);
double ball_volume_inverse_euclid(double volume, int n);

double iso_profile_phi(double xi, const WeightParams& params);
double comparison_G(double x, double x_ref, const WeightParams& params);

// Euclidean radius of the model superlevel set {(1-|z|^2)^alpha > t}.
double model_radius(double t, double alpha);
// Level whose model superlevel set has Euclidean radius rho.
double model_level(double rho, double alpha);
double model_profile(double t, const WeightParams& params);

// Recentering map: sends a to 0, identity at a = 0, inverse is the map at -a.
Point point_automorphism(const Point& a, const Point& z);
cplx point_automorphism(cplx a, cplx z);
// Involutive automorphism exchanging a and 0 (equals -point_automorphism).
Point mobius_involution(const Point& a, const Point& z);
cplx mobius_involution(cplx a, cplx z);

}  // namespace bergman
