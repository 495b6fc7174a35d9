#include "bergman/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bergman/errors.hpp"

namespace bergman {

namespace {

constexpr int kPanelNodes = 20;

// |1 - rho e^{i theta}|^2 without cancellation near theta = 0.
double gap_sq(double rho, double th) {
  double s = std::sin(0.5 * th);
  return (1.0 - rho) * (1.0 - rho) + 4.0 * rho * s * s;
}

}  // namespace

double poisson_szego(const Point& z, const Point& zeta) {
  if (!(norm2(z) < 1.0)) throw DomainError("z must lie in the open ball");
  if (std::abs(norm2(zeta) - 1.0) > 1e-12) throw DomainError("zeta must lie on the unit sphere");
  const double n = static_cast<double>(z.size());
  return std::pow(1.0 - norm2(z), n) / std::pow(std::norm(1.0 - hermitian(z, zeta)), n);
}

double poisson_szego(cplx z, cplx zeta) { return poisson_szego(Point{z}, Point{zeta}); }

double poisson_extension(const std::function<double(cplx)>& g, cplx z, int points) {
  double s = 0.0;
  for (int j = 0; j < points; ++j) {
    cplx zeta = std::polar(1.0, 2.0 * std::numbers::pi * j / points);
    s += poisson_szego(z, zeta) * g(zeta);
  }
  return s / points;
}

double kernel_angular_mean(double rho, double alpha) {
  if (!(rho >= 0.0 && rho < 1.0)) throw DomainError("rho must lie in [0,1)");
  static const GaussRule gl = gauss_legendre(kPanelNodes);
  // Panels [0, d], [d, 2d], [2d, 4d], ... up to pi with d ~ (1 - rho) / 4.
  std::vector<double> edges{0.0};
  double d = std::max(0.25 * (1.0 - rho), 1e-15);
  while (d < std::numbers::pi) {
    edges.push_back(d);
    d *= 2.0;
  }
  edges.push_back(std::numbers::pi);
  double s = 0.0;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    double a = edges[p], b = edges[p + 1], half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (int i = 0; i < kPanelNodes; ++i) s += half * gl.weights[i] * std::pow(gap_sq(rho, mid + half * gl.nodes[i]), -alpha);
  }
  return s / std::numbers::pi;
}

KAlphaResult K_alpha(double alpha, int n, int max_k) {
  if (n != 1) throw DomainError("K_alpha is implemented for n = 1");
  if (!(alpha > n)) throw DomainError("alpha must exceed n");
  KAlphaResult res;
  res.alpha = alpha;
  res.n = n;
  const double q = alpha / n;
  const double c = normalization_constants(n, alpha).c_alpha_n;
  static const GaussRule gl = gauss_legendre(kPanelNodes);
  auto radial_integrand = [&](double rho, const std::function<double(double)>& mean) {
    return rho * std::pow(1.0 - rho * rho, 2.0 * alpha - 2.0) * mean(rho);
  };
  auto panel = [&](double a, double b, const std::function<double(double)>& mean) {
    double half = 0.5 * (b - a), mid = 0.5 * (a + b), s = 0.0;
    for (int i = 0; i < kPanelNodes; ++i) s += half * gl.weights[i] * radial_integrand(mid + half * gl.nodes[i], mean);
    return s;
  };
  auto graded = [&](double rho) { return kernel_angular_mean(rho, alpha); };
  // Radial panels with 1 - rho halving, accumulated across truncation radii.
  double acc = 0.0, x = 1.0;  // x = 1 - rho at the current panel edge
  for (int k = 1; k <= max_k; ++k) {
    const double target = std::pow(10.0, -k);
    while (x > target * (1.0 + 1e-12)) {
      double xn = std::max(0.5 * x, target);
      acc += panel(1.0 - x, 1.0 - xn, graded);
      x = xn;
    }
    double Kq = c * 2.0 * std::numbers::pi * acc;
    res.radii.push_back(1.0 - target);
    res.values.push_back(std::pow(Kq, 1.0 / q));
  }
  res.value = res.values.back();
  if (res.values.size() >= 2) {
    double a = res.values[res.values.size() - 2], b = res.values.back();
    res.converged = (b - a) <= 1e-6 * b;
  }
  // Second boundary point, uniform angular rule, truncated at R = 0.9.
  const cplx zeta2 = std::polar(1.0, 0.7);
  auto uniform = [&](double rho) {
    const int N = 8192;
    double s = 0.0;
    for (int j = 0; j < N; ++j) {
      cplx z = std::polar(rho, 2.0 * std::numbers::pi * j / N);
      s += std::pow(std::norm(1.0 - z * std::conj(zeta2)), -alpha);
    }
    return s / N;
  };
  double a1 = 0.0, a2 = 0.0;
  x = 1.0;
  while (x > 0.1 * (1.0 + 1e-12)) {
    double xn = std::max(0.5 * x, 0.1);
    a1 += panel(1.0 - x, 1.0 - xn, graded);
    a2 += panel(1.0 - x, 1.0 - xn, uniform);
    x = xn;
  }
  res.zeta_spread = std::abs(a1 - a2) / a1;
  return res;
}

double borderline_bergman_norm(const HoloFunc& f, const WeightParams& params, const QuadOptions& q) {
  QuadOptions qq = q;
  if (params.alpha - params.n <= 0.02 + 1e-12) qq.radial_order *= 2;
  return bergman_norm(f, params, qq);
}

HardyLimitSweep hardy_limit_sweep(const HoloFunc& f, double r, const std::vector<double>& gammas,
                                  const QuadOptions& q, bool with_kernel) {
  if (!(r > 0.0)) throw DomainError("r must be positive");
  const int n = f.n();
  HardyLimitSweep sw;
  sw.r = r;
  sw.hardy_norm = hardy_norm(f, r * n, q);
  for (double g : gammas) {
    if (!(g > n)) throw DomainError("every gamma must exceed n");
    HardyLimitRow row;
    row.gamma = g;
    row.a_norm = borderline_bergman_norm(f, WeightParams(n, r * g, g), q);
    row.hardy_norm = sw.hardy_norm;
    row.gap = std::abs(row.a_norm - sw.hardy_norm);
    if (with_kernel) {
      KAlphaResult K = K_alpha(g, n);
      row.k_gamma = K.value;
      row.k_converged = K.converged;
      row.embedding_ok = row.a_norm <= std::pow(K.value, 1.0 / (r * n)) * sw.hardy_norm + 1e-8;
    }
    sw.rows.push_back(row);
  }
  sw.gaps_decreasing = true;
  sw.k_decreasing = with_kernel;
  for (std::size_t i = 1; i < sw.rows.size(); ++i) {
    if (sw.rows[i].gap > sw.rows[i - 1].gap + 1e-6) sw.gaps_decreasing = false;
    if (with_kernel && !(sw.rows[i].k_gamma < sw.rows[i - 1].k_gamma)) sw.k_decreasing = false;
  }
  return sw;
}

ChainReport chain_check(const HoloFunc& f, const ContractiveLine& line, const QuadOptions& q, double tol) {
  ChainReport c;
  c.a_beta_q = bergman_norm(f, line.target(), q);
  c.a_alpha_p = bergman_norm(f, line.base, q);
  c.h_nr = hardy_norm(f, line.base.n * line.base.ratio(), q);
  c.c1_norm = c1_norm_on_subball(f.minus_one(), 0.9);
  c.pass = c.a_beta_q <= c.a_alpha_p + tol && c.a_alpha_p <= c.h_nr + tol;
  return c;
}

double invariant_mean(const HoloFunc& f, double q, double rho, const QuadOptions& opts) {
  return std::pow(sphere_mean(f, q, rho, opts), 1.0 / q);
}

}  // namespace bergman
