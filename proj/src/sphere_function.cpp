#include "bergman/sphere_function.hpp"

#include <unsupported/Eigen/FFT>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "bergman/errors.hpp"

namespace bergman {

SphereFunction::SphereFunction(std::vector<double> samples) : samples_(std::move(samples)) {
  if (samples_.size() < 2) throw DomainError("sphere function needs at least two samples");
  const std::size_t N = samples_.size();
  std::vector<std::complex<double>> in(samples_.begin(), samples_.end());
  Eigen::FFT<double> fft;
  fft.fwd(c_, in);
  for (auto& c : c_) c /= static_cast<double>(N);
}

SphereFunction SphereFunction::from_function(const std::function<double(double)>& u, int points) {
  std::vector<double> s(points);
  for (int j = 0; j < points; ++j) s[j] = u(2.0 * std::numbers::pi * j / points);
  return SphereFunction(std::move(s));
}

std::complex<double> SphereFunction::coeff(int k) const {
  const int N = size();
  if (2 * k <= -N || 2 * k > N) return 0.0;
  return c_[((k % N) + N) % N];
}

double SphereFunction::theta(int j) const { return 2.0 * std::numbers::pi * j / size(); }

double SphereFunction::eval(double th) const {
  const int N = size();
  double s = c_[0].real();
  for (int k = 1; k < (N + 1) / 2; ++k) s += 2.0 * std::real(c_[k] * std::polar(1.0, k * th));
  if (N % 2 == 0) s += std::real(c_[N / 2]) * std::cos(0.5 * N * th);
  return s;
}

double SphereFunction::eval_derivative(double th) const {
  const int N = size();
  double s = 0.0;
  for (int k = 1; k < (N + 1) / 2; ++k)
    s += 2.0 * std::real(std::complex<double>(0.0, k) * c_[k] * std::polar(1.0, k * th));
  if (N % 2 == 0) s -= 0.5 * N * std::real(c_[N / 2]) * std::sin(0.5 * N * th);
  return s;
}

std::vector<double> SphereFunction::derivative_samples() const {
  const int N = size();
  std::vector<std::complex<double>> spectrum(N, 0.0);
  for (int k = 1; k < (N + 1) / 2; ++k) {
    spectrum[k] = std::complex<double>(0.0, k) * c_[k];
    spectrum[N - k] = std::complex<double>(0.0, -k) * c_[N - k];
  }
  std::vector<std::complex<double>> out;
  Eigen::FFT<double> fft;
  fft.inv(out, spectrum);
  std::vector<double> d(N);
  for (int j = 0; j < N; ++j) d[j] = out[j].real() * N;
  return d;
}

SphereNorms sphere_norms(const SphereFunction& u) {
  const int N = u.size();
  SphereNorms r{};
  double sup_u = 0.0, sup_d = 0.0;
  for (double v : u.samples()) sup_u = std::max(sup_u, std::abs(v));
  for (double v : u.derivative_samples()) sup_d = std::max(sup_d, std::abs(v));
  r.w1inf = sup_u + sup_d;
  double l2 = 0.0, w12 = 0.0;
  for (int i = 0; i < N; ++i) {
    int k = i <= N / 2 ? i : i - N;
    double a = std::norm(u.coeff(k));
    l2 += a;
    w12 += (1.0 + static_cast<double>(k) * k) * a;
  }
  r.l2 = std::sqrt(l2);
  r.w12sq = w12;
  r.w12 = std::sqrt(w12);
  r.mean = u.mean();
  r.first_harmonic_norm = std::sqrt(2.0) * std::abs(u.coeff(1));
  return r;
}

}  // namespace bergman
