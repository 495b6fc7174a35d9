#include "bergman/dominance.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bergman/errors.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/sphere_function.hpp"

namespace bergman {

namespace {

void require_uniform(const std::vector<double>& t) {
  if (t.size() < 2) throw DomainError("need at least two levels");
  const double h = t[1] - t[0];
  for (std::size_t k = 1; k < t.size(); ++k)
    if (std::abs((t[k] - t[k - 1]) - h) > 1e-9 * h) throw DomainError("level grid must be uniform");
}

void require_all_regular(const DistributionProfile& p) {
  for (const auto& L : p.levels)
    if (!L.regular) throw DomainError("every profile level must be regular (t=" + std::to_string(L.t) + ")");
}

std::vector<double> profile_levels(const DistributionProfile& p) {
  std::vector<double> t;
  for (const auto& L : p.levels) t.push_back(L.t);
  return t;
}

}  // namespace

DominanceReport verify_dominance(const DistributionProfile& profile, const std::function<double(double)>& mu_at,
                                 const DominanceOptions& opts) {
  if (profile.regular_count() < opts.min_regular) throw DomainError("profile has too few regular levels");
  DominanceReport rep;
  const auto& P = profile.params;
  std::vector<std::size_t> reg;
  for (std::size_t k = 0; k < profile.levels.size(); ++k)
    if (profile.levels[k].regular) reg.push_back(k);

  std::size_t first_ok = reg.size();
  for (std::size_t i = 0; i < reg.size(); ++i) {
    const auto& L = profile.levels[reg[i]];
    if (L.mu <= L.mu_star) {
      first_ok = i;
      break;
    }
  }
  rep.t_plus = profile.levels[reg.back()].t;
  rep.levels.resize(profile.levels.size());
  for (std::size_t k = 0; k < profile.levels.size(); ++k) {
    const auto& L = profile.levels[k];
    auto& D = rep.levels[k];
    D.t = L.t;
    D.mu = L.mu;
    D.mu_star = L.mu_star;
    D.margin = L.mu_star - L.mu;
    D.regular = L.regular;
  }
  if (first_ok == reg.size()) {
    rep.anchor_found = false;
    rep.reason = "anchor not found";
    rep.pass = false;
    return rep;
  }
  rep.anchor_found = true;
  const auto& hit = profile.levels[reg[first_ok]];
  rep.anchor_t = hit.t;
  rep.anchor_gap = hit.mu - hit.mu_star;
  if (first_ok > 0 && mu_at) {
    double lo = profile.levels[reg[first_ok - 1]].t, hi = hit.t;
    double d_hi = hit.mu - hit.mu_star;
    double t_best = hi, d_best = d_hi;
    for (int it = 0; it < 200 && std::abs(d_best) > opts.anchor_tol && hi - lo > 1e-15 * hi; ++it) {
      double mid = 0.5 * (lo + hi);
      double d = mu_at(mid) - model_profile(mid, P);
      if (d > 0.0) {
        lo = mid;
      } else {
        hi = mid;
        t_best = mid;
        d_best = d;
      }
      if (std::abs(d) <= opts.anchor_tol) {
        t_best = mid;
        d_best = d;
        break;
      }
    }
    rep.anchor_t = t_best;
    rep.anchor_gap = d_best;
  }
  rep.t_minus = rep.anchor_t;
  const double x_ref = model_profile(rep.anchor_t, P);
  rep.pass = true;
  rep.min_margin = INFINITY;
  for (auto& D : rep.levels) {
    if (!D.regular) continue;
    D.G_mu = comparison_G(D.mu, x_ref, P);
    D.G_mu_star = comparison_G(D.mu_star, x_ref, P);
    const double scale = 1e-13 * D.mu_star;
    const double dg = D.G_mu - D.G_mu_star;
    if ((D.margin > scale && dg < 0.0) || (D.margin < -scale && dg > 0.0)) rep.sign_agreement = false;
    D.in_window = D.t >= rep.anchor_t;
    if (D.in_window) {
      D.ok = D.mu <= D.mu_star + opts.tol;
      rep.min_margin = std::min(rep.min_margin, D.margin);
      if (!D.ok) rep.pass = false;
    }
  }
  if (!rep.pass) rep.reason = "mu exceeds mu_star on the window";
  return rep;
}

double direct_moment(const WeightedSymbol& u, double s, const QuadOptions& q) {
  const auto& P = u.params();
  WeightParams target(P.n, P.p * s, P.alpha * s);
  return bergman_integral(u.f(), target, q) / normalization_constants(P.n, target.alpha).c_alpha_n;
}

LayerCake layer_cake_moment(const DistributionProfile& profile, const WeightedSymbol& u, double s, int radial_nodes) {
  if (!(s >= 1.0)) throw DomainError("layer-cake exponent must be >= 1");
  require_all_regular(profile);
  std::vector<double> t = profile_levels(profile);
  require_uniform(t);
  if (!profile.graphs.front() || !profile.graphs.back()) throw DomainError("profile must keep its end graphs");
  const auto& P = u.params();
  const std::size_t K = t.size();
  const double h = t[1] - t[0];
  LayerCake lc;

  auto g = [&](std::size_t k) { return s * std::pow(t[k], s - 1.0) * profile.levels[k].mu; };
  auto dg = [&](std::size_t k) {
    const auto& L = profile.levels[k];
    return s * (s - 1.0) * std::pow(t[k], s - 2.0) * L.mu - s * std::pow(t[k], s - 1.0) * L.dmu;
  };
  double trap = 0.5 * (g(0) + g(K - 1));
  for (std::size_t k = 1; k + 1 < K; ++k) trap += g(k);
  lc.window = h * trap - h * h / 12.0 * (dg(K - 1) - dg(0));

  // Below t_-: t_-^s mu(t_-) plus the integral of u^s outside A_{t_-}.
  const RadialGraphLevelSet& lo = *profile.graphs.front();
  GaussRule gj = gauss_jacobi(radial_nodes, P.alpha * s - 2.0, 0.0);
  double outer = 0.0;
  for (int j = 0; j < lo.size(); ++j) {
    const double x0 = lo.rho[j] * lo.rho[j], L = 1.0 - x0;
    const cplx dir = std::polar(1.0, lo.theta[j]);
    double acc = 0.0;
    for (int i = 0; i < radial_nodes; ++i) {
      double x = x0 + 0.5 * L * (1.0 + gj.nodes[i]);
      acc += gj.weights[i] * std::pow(std::abs(u.f().eval(std::sqrt(x) * dir)), P.p * s);
    }
    outer += 0.5 * std::pow(0.5 * L, P.alpha * s - 1.0) * acc;
  }
  outer *= 2.0 * std::numbers::pi / lo.size();
  lc.lower_tail = outer + std::pow(t.front(), s) * profile.levels.front().mu;

  // Above t_+: int over A_{t_+} of (u^s - t_+^s).
  const RadialGraphLevelSet& hi = *profile.graphs.back();
  GaussRule gl = gauss_legendre(radial_nodes);
  const double ts = std::pow(t.back(), s);
  double inner = 0.0;
  for (int j = 0; j < hi.size(); ++j) {
    const double R = hi.rho[j];
    const cplx dir = std::polar(1.0, hi.theta[j]);
    for (int i = 0; i < radial_nodes; ++i) {
      double r = 0.5 * R * (1.0 + gl.nodes[i]);
      double w = 0.5 * R * gl.weights[i] * r / ((1.0 - r * r) * (1.0 - r * r));
      inner += w * (std::pow(u.u(r * dir), s) - ts);
    }
  }
  lc.upper_tail = inner * 2.0 * std::numbers::pi / hi.size();
  lc.value = lc.window + lc.lower_tail + lc.upper_tail;
  return lc;
}

ContractionResult contraction_check(const HoloFunc& f, const ContractiveLine& line, const QuadOptions& q) {
  ContractionResult r;
  r.norm_p = bergman_norm(f, line.base, q);
  HoloFunc g = f.scaled(1.0 / r.norm_p);
  r.lhs = bergman_integral(g, line.target(), q);
  r.rhs = 1.0;
  r.deficit = r.rhs - r.lhs;
  return r;
}

GapResult gap_check(const HoloFunc& f, const ContractiveLine& line, const std::vector<double>& levels,
                    const std::vector<RadialGraphLevelSet>& recentered, const QuadOptions& q) {
  if (recentered.empty() || recentered.size() != levels.size())
    throw DomainError("recentered graphs missing for the gap check");
  GapResult r;
  r.deficit = contraction_check(f, line, q).deficit;
  const double s = line.s();
  std::vector<double> y(levels.size());
  for (std::size_t k = 0; k < levels.size(); ++k)
    y[k] = std::pow(levels[k], s - 1.0) * sphere_norms(SphereFunction(recentered[k].bergman_u)).w12sq;
  for (std::size_t k = 1; k < levels.size(); ++k) r.shape_integral += 0.5 * (levels[k] - levels[k - 1]) * (y[k] + y[k - 1]);
  r.ratio = r.shape_integral > 0.0 ? r.deficit / r.shape_integral : 0.0;
  return r;
}

double HingeProfile::at(double tau) const {
  for (std::size_t k = 0; k < t.size(); ++k)
    if (std::abs(t[k] - tau) <= 1e-12) return H[k];
  throw DomainError("hinge level " + std::to_string(tau) + " is not on the profile grid");
}

HingeProfile hinge_from_distribution(const DistributionProfile& profile, double top_tail, double mean) {
  require_all_regular(profile);
  HingeProfile hp;
  hp.t = profile_levels(profile);
  require_uniform(hp.t);
  hp.mean = mean;
  const std::size_t K = hp.t.size();
  const double h = hp.t[1] - hp.t[0];
  hp.H.assign(K, 0.0);
  hp.H[K - 1] = top_tail;
  for (std::size_t k = K - 1; k-- > 0;) {
    const auto& a = profile.levels[k];
    const auto& b = profile.levels[k + 1];
    // Corrected trapezoid panel; mu' = -dmu.
    double panel = 0.5 * h * (a.mu + b.mu) - h * h / 12.0 * (-b.dmu + a.dmu);
    hp.H[k] = hp.H[k + 1] + panel;
  }
  return hp;
}

cplx symbol_maximizer(const WeightedSymbol& u) {
  cplx c = 0.0;
  for (int it = 0; it < 50; ++it) {
    cplx g = u.grad_log_u(c);
    if (std::abs(g) < 1e-14) break;
    const double h = 1e-6;
    cplx gx = (u.grad_log_u(c + h) - u.grad_log_u(c - h)) / (2.0 * h);
    cplx gy = (u.grad_log_u(c + cplx(0, h)) - u.grad_log_u(c - cplx(0, h))) / (2.0 * h);
    Eigen::Matrix2d H;
    H << gx.real(), gy.real(), gx.imag(), gy.imag();
    Eigen::Vector2d step = H.fullPivLu().solve(Eigen::Vector2d(g.real(), g.imag()));
    c -= cplx(step(0), step(1));
    if (!(std::norm(c) < 1.0)) throw SolverError("maximizer search left the disc");
  }
  return c;
}

HingeProfile hinge_direct(const WeightedSymbol& u, const std::vector<double>& t, int points, int radial_nodes) {
  if (u.params().n != 1) throw DomainError("direct hinge quadrature is implemented for n = 1");
  HingeProfile hp;
  hp.t = t;
  hp.mean = direct_moment(u, 1.0);
  const cplx c = symbol_maximizer(u);
  const double umax = u.u(c);
  GaussRule gl = gauss_legendre(radial_nodes);
  constexpr int kSamples = 64;
  for (double tau : t) {
    if (tau <= 0.0) {
      hp.H.push_back(hp.mean);
      continue;
    }
    if (tau >= umax) {
      hp.H.push_back(0.0);
      continue;
    }
    const double lt = std::log(tau);
    double sum = 0.0;
    for (int j = 0; j < points; ++j) {
      const cplx dir = std::polar(1.0, 2.0 * std::numbers::pi * j / points);
      const double b = std::real(std::conj(c) * dir);
      const double smax = (-b + std::sqrt(b * b + 1.0 - std::norm(c))) * (1.0 - 1e-12);
      auto F = [&](double s) { return u.log_u(c + s * dir) - lt; };
      int changes = 0;
      double lo = 0.0, hi = smax, prev = F(0.0);
      for (int k = 1; k <= kSamples; ++k) {
        double s = smax * k / kSamples;
        double cur = F(s);
        if ((prev > 0.0) != (cur > 0.0)) {
          ++changes;
          lo = smax * (k - 1) / kSamples;
          hi = s;
        }
        prev = cur;
      }
      if (changes != 1)
        throw RegimeError(Regime::OutsideRadialGraphRegime, "superlevel set is not star-shaped about the maximizer");
      boost::uintmax_t iters = 200;
      auto br = boost::math::tools::toms748_solve(F, lo, hi, boost::math::tools::eps_tolerance<double>(52), iters);
      const double R = 0.5 * (br.first + br.second);
      for (int i = 0; i < radial_nodes; ++i) {
        double s = 0.5 * R * (1.0 + gl.nodes[i]);
        cplx z = c + s * dir;
        double d = 1.0 - std::norm(z);
        sum += 0.5 * R * gl.weights[i] * s * (u.u(z) - tau) / (d * d);
      }
    }
    hp.H.push_back(sum * 2.0 * std::numbers::pi / points);
  }
  return hp;
}

HingeProfile hinge_model(const WeightParams& params, const std::vector<double>& t) {
  HingeProfile hp;
  hp.t = t;
  hp.mean = 1.0 / normalization_constants(params.n, params.alpha).c_alpha_n;
  const double a = params.alpha;
  for (double tau : t) {
    if (tau >= 1.0) {
      hp.H.push_back(0.0);
    } else if (tau <= 0.0) {
      hp.H.push_back(hp.mean);
    } else if (params.n == 1) {
      double beta = (a - 1.0) / a;
      hp.H.push_back(std::numbers::pi * ((1.0 - std::pow(tau, beta)) / (a - 1.0) - std::pow(tau, beta) + tau));
    } else {
      auto mu = [&](double x) { return model_profile(x, params); };
      hp.H.push_back(boost::math::quadrature::gauss_kronrod<double, 31>::integrate(mu, tau, 1.0, 20, 1e-13));
    }
  }
  return hp;
}

HingeDominance hinge_dominance(const HingeProfile& X, const HingeProfile& Y, double tol, double mean_tol) {
  if (X.t.size() != Y.t.size()) throw DomainError("hinge profiles are on different grids");
  for (std::size_t k = 0; k < X.t.size(); ++k)
    if (std::abs(X.t[k] - Y.t[k]) > 1e-12) throw DomainError("hinge profiles are on different grids");
  if (std::abs(X.mean - Y.mean) > mean_tol * std::max(1.0, std::abs(Y.mean))) {
    std::ostringstream os;
    os << "mean mismatch: " << X.mean << " vs " << Y.mean;
    throw DomainError(os.str());
  }
  HingeDominance d;
  d.all = true;
  for (std::size_t k = 0; k < X.t.size(); ++k) {
    double m = Y.H[k] - X.H[k];
    d.margin.push_back(m);
    d.pass.push_back(m >= -tol);
    if (m < -tol) d.all = false;
  }
  return d;
}

ConvexTestFunction::ConvexTestFunction(std::vector<double> knots, std::vector<double> values)
    : knots_(std::move(knots)), values_(std::move(values)) {
  const std::size_t K = knots_.size();
  if (K < 2 || values_.size() != K) throw DomainError("convex test function needs matching knots and values");
  if (knots_.front() != 0.0 || knots_.back() != 1.0) throw DomainError("knots must span [0,1]");
  if (std::abs(values_.front()) > 1e-15) throw DomainError("test function must vanish at 0");
  std::vector<double> slope(K - 1);
  for (std::size_t k = 0; k + 1 < K; ++k) {
    if (!(knots_[k + 1] > knots_[k])) throw DomainError("knots must be increasing");
    slope[k] = (values_[k + 1] - values_[k]) / (knots_[k + 1] - knots_[k]);
  }
  double scale = 0.0;
  for (double s : slope) scale = std::max(scale, std::abs(s));
  slope0_ = slope[0];
  for (std::size_t k = 1; k + 1 < K; ++k) {
    double c = slope[k] - slope[k - 1];
    if (c < -1e-12 * std::max(scale, 1.0)) throw DomainError("test function is not convex");
    c_.push_back(std::max(c, 0.0));
  }
}

ConvexTestFunction ConvexTestFunction::hinge(double t) {
  if (!(t > 0.0 && t < 1.0)) throw DomainError("hinge knot must lie in (0,1)");
  return ConvexTestFunction({0.0, t, 1.0}, {0.0, 0.0, 1.0 - t});
}

ConvexTestFunction ConvexTestFunction::affine(double slope) { return ConvexTestFunction({0.0, 1.0}, {0.0, slope}); }

ConvexTestFunction ConvexTestFunction::random(std::mt19937_64& rng, int K) {
  if (K < 3) throw DomainError("need at least three knots");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> knots(K), values(K, 0.0);
  for (int k = 0; k < K; ++k) knots[k] = static_cast<double>(k) / (K - 1);
  knots.back() = 1.0;
  double slope = 2.0 * unit(rng) - 1.0;
  for (int k = 1; k < K; ++k) {
    values[k] = values[k - 1] + slope * (knots[k] - knots[k - 1]);
    slope += 2.0 * unit(rng) / (K - 2);
  }
  return ConvexTestFunction(std::move(knots), std::move(values));
}

double ConvexTestFunction::operator()(double x) const {
  double v = slope0_ * x;
  for (std::size_t k = 0; k < c_.size(); ++k) v += c_[k] * std::max(0.0, x - knots_[k + 1]);
  return v;
}

ConvexTest convex_functional_test(const HingeProfile& X, const HingeProfile& Y, const ConvexTestFunction& Phi) {
  ConvexTest r;
  r.lhs = Phi.initial_slope() * X.mean;
  r.rhs = Phi.initial_slope() * Y.mean;
  const auto& c = Phi.hinge_weights();
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double tau = Phi.knots()[k + 1];
    r.lhs += c[k] * X.at(tau);
    r.rhs += c[k] * Y.at(tau);
  }
  r.margin = r.rhs - r.lhs;
  return r;
}

}  // namespace bergman
