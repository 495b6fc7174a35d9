#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace bergman {

// Real function on the unit circle sampled at theta_j = 2 pi j / N, with its
// discrete Fourier coefficients c_k (u = sum c_k e^{ik theta}).
class SphereFunction {
 public:
  explicit SphereFunction(std::vector<double> samples);
  static SphereFunction from_function(const std::function<double(double)>& u, int points);

  int size() const { return static_cast<int>(samples_.size()); }
  const std::vector<double>& samples() const { return samples_; }
  // c_k for k in (-N/2, N/2]; index with coeff(k).
  std::complex<double> coeff(int k) const;
  double theta(int j) const;
  // Trigonometric interpolant and its derivative.
  double eval(double theta) const;
  double eval_derivative(double theta) const;
  std::vector<double> derivative_samples() const;
  double mean() const { return coeff(0).real(); }

 private:
  std::vector<double> samples_;
  std::vector<std::complex<double>> c_;  // FFT order, divided by N
};

struct SphereNorms {
  double w1inf;
  double w12;
  double w12sq;
  double l2;
  double mean;
  double first_harmonic_norm;
};

// Averaged-measure norms: |u|_{W^{1,2}}^2 = sum (1+k^2)|c_k|^2,
// |u|_{W^{1,inf}} = sup|u| + sup|u'| on the grid.
SphereNorms sphere_norms(const SphereFunction& u);

}  // namespace bergman
