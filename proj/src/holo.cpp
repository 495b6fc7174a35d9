#include "bergman/holo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bergman/errors.hpp"

namespace bergman {

HoloFunc::HoloFunc(int n, std::vector<Term> terms) : n_(n) {
  if (n < 1) throw DomainError("dimension n must be >= 1");
  for (auto& t : terms) {
    if (static_cast<int>(t.index.size()) != n) throw DomainError("multi-index length must equal n");
    for (int e : t.index)
      if (e < 0) throw DomainError("multi-index entries must be nonnegative");
    if (t.coeff == cplx(0.0)) continue;
    auto it = std::find_if(terms_.begin(), terms_.end(), [&](const Term& s) { return s.index == t.index; });
    if (it != terms_.end())
      it->coeff += t.coeff;
    else
      terms_.push_back(t);
  }
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.index < b.index; });
  if (n_ == 1) {
    dense_.assign(degree() + 1, 0.0);
    for (const auto& t : terms_) dense_[t.index[0]] += t.coeff;
  }
}

HoloFunc HoloFunc::constant(int n, cplx c) { return HoloFunc(n, {{MultiIndex(n, 0), c}}); }

HoloFunc HoloFunc::one_plus(int n, cplx eps, int k) {
  MultiIndex idx(n, 0);
  idx[0] = k;
  return HoloFunc(n, {{MultiIndex(n, 0), 1.0}, {idx, eps}});
}

HoloFunc HoloFunc::monomial(int n, int k, cplx c) {
  MultiIndex idx(n, 0);
  idx[0] = k;
  return HoloFunc(n, {{idx, c}});
}

int HoloFunc::degree() const {
  int d = 0;
  for (const auto& t : terms_) {
    int s = 0;
    for (int e : t.index) s += e;
    d = std::max(d, s);
  }
  return d;
}

cplx HoloFunc::eval(cplx z) const {
  if (n_ != 1) return eval(Point{z});
  cplx acc = 0.0;
  for (auto it = dense_.rbegin(); it != dense_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

cplx HoloFunc::deriv(cplx z) const {
  if (n_ != 1) throw DomainError("scalar derivative requires n = 1");
  cplx acc = 0.0;
  for (std::size_t k = dense_.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * dense_[k];
  return acc;
}

cplx HoloFunc::eval(const Point& z) const {
  if (static_cast<int>(z.size()) != n_) throw DomainError("point dimension mismatch");
  if (n_ == 1) return eval(z[0]);
  cplx s = 0.0;
  for (const auto& t : terms_) {
    cplx m = t.coeff;
    for (int j = 0; j < n_; ++j)
      if (t.index[j]) m *= std::pow(z[j], t.index[j]);
    s += m;
  }
  return s;
}

Point HoloFunc::grad(const Point& z) const {
  if (static_cast<int>(z.size()) != n_) throw DomainError("point dimension mismatch");
  if (n_ == 1) return Point{deriv(z[0])};
  Point g(n_, 0.0);
  for (const auto& t : terms_) {
    for (int j = 0; j < n_; ++j) {
      if (t.index[j] == 0) continue;
      cplx m = t.coeff * static_cast<double>(t.index[j]);
      for (int k = 0; k < n_; ++k) {
        int e = t.index[k] - (k == j ? 1 : 0);
        if (e) m *= std::pow(z[k], e);
      }
      g[j] += m;
    }
  }
  return g;
}

HoloFunc HoloFunc::scaled(cplx c) const {
  std::vector<Term> t = terms_;
  for (auto& s : t) s.coeff *= c;
  return HoloFunc(n_, std::move(t));
}

HoloFunc HoloFunc::minus_one() const {
  std::vector<Term> t = terms_;
  t.push_back({MultiIndex(n_, 0), -1.0});
  return HoloFunc(n_, std::move(t));
}

std::string HoloFunc::describe() const {
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << "; ";
    first = false;
    for (std::size_t j = 0; j < t.index.size(); ++j) os << (j ? "," : "") << t.index[j];
    os << " " << t.coeff.real() << " " << t.coeff.imag();
  }
  return os.str();
}

namespace {

SphereRule rule_for(int n, const QuadOptions& q) {
  return n == 1 ? circle_rule(q.sphere_points) : sphere_rule(n, std::max(8, q.sphere_points / 8));
}

}  // namespace

double bergman_integral(const HoloFunc& f, const WeightParams& params, const QuadOptions& q) {
  RadialRule rr = radial_rule(params.alpha, params.n, q.radial_order);
  SphereRule sr = rule_for(params.n, q);
  auto F = [&](const Point& z) { return std::pow(std::abs(f.eval(z)), params.p); };
  return ball_integral(F, rr, sr, BallMeasure::Weighted);
}

double bergman_norm(const HoloFunc& f, const WeightParams& params, const QuadOptions& q) {
  if (f.n() != params.n) throw DomainError("function and weight dimensions differ");
  // Constants are integrated exactly by construction.
  if (f.degree() == 0) return f.terms().empty() ? 0.0 : std::abs(f.terms()[0].coeff);
  return std::pow(bergman_integral(f, params, q), 1.0 / params.p);
}

HoloFunc normalized(const HoloFunc& f, const WeightParams& params, const QuadOptions& q) {
  double nrm = bergman_norm(f, params, q);
  if (!(nrm > 0.0)) throw DomainError("cannot normalize the zero function");
  return f.scaled(1.0 / nrm);
}

double sphere_mean(const HoloFunc& f, double p, double r, const QuadOptions& q) {
  if (!(p > 0.0)) throw DomainError("p must be positive");
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("radius must lie in [0,1]");
  SphereRule sr = rule_for(f.n(), q);
  CompensatedSum s;
  Point z(f.n());
  for (std::size_t j = 0; j < sr.nodes.size(); ++j) {
    for (int k = 0; k < f.n(); ++k) z[k] = r * sr.nodes[j][k];
    s += sr.weights[j] * std::pow(std::abs(f.eval(z)), p);
  }
  return s.value();
}

double hardy_norm(const HoloFunc& f, double p, const std::vector<double>& radii, const QuadOptions& q) {
  if (radii.empty()) throw DomainError("hardy_norm needs at least one radius");
  double prev = -1.0, prev_r = -1.0;
  for (double r : radii) {
    if (!(r > prev_r)) throw DomainError("radii must be increasing");
    double m = sphere_mean(f, p, r, q);
    if (m < prev - 1e-12 * std::max(1.0, prev)) {
      std::ostringstream os;
      os << "sphere means decrease at r=" << r;
      throw EvaluationError(os.str());
    }
    prev = m;
    prev_r = r;
  }
  double boundary = sphere_mean(f, p, 1.0, q);
  if (boundary < prev - 1e-12 * std::max(1.0, prev)) throw EvaluationError("boundary mean below interior mean");
  return std::pow(boundary, 1.0 / p);
}

double hardy_norm(const HoloFunc& f, double p, const QuadOptions& q) {
  return hardy_norm(f, p, {0.5, 0.9, 0.99}, q);
}

double c1_norm_on_subball(const HoloFunc& phi, double rho) {
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("rho must lie in (0,1)");
  const double step = 1e-2 * rho;
  const int nr = 100;
  double best = 0.0;
  auto measure = [&](const Point& z) {
    Point g = phi.grad(z);
    return std::abs(phi.eval(z)) + std::sqrt(norm2(g));
  };
  if (phi.n() == 1) {
    const int na = static_cast<int>(std::ceil(2.0 * std::numbers::pi / 1e-2));
    for (int i = 0; i <= nr; ++i) {
      double r = i * step;
      for (int j = 0; j < (i == 0 ? 1 : na); ++j)
        best = std::max(best, measure(Point{std::polar(r, 2.0 * std::numbers::pi * j / na)}));
    }
    return best;
  }
  SphereRule sr = sphere_rule(phi.n(), 16);
  for (int i = 0; i <= nr; ++i) {
    double r = i * step;
    for (const auto& w : sr.nodes) {
      Point z = w;
      for (auto& c : z) c *= r;
      best = std::max(best, measure(z));
    }
  }
  return best;
}

double sup_on_sphere(const HoloFunc& phi, double rho, int points) {
  SphereRule sr = sphere_rule(phi.n(), phi.n() == 1 ? points : 16);
  double best = 0.0;
  for (const auto& w : sr.nodes) {
    Point z = w;
    for (auto& c : z) c *= rho;
    best = std::max(best, std::abs(phi.eval(z)));
  }
  return best;
}

WeightedSymbol::WeightedSymbol(HoloFunc f, WeightParams params) : f_(std::move(f)), params_(params) {
  if (f_.n() != params_.n) throw DomainError("function and weight dimensions differ");
}

double WeightedSymbol::value(const Point& z, SymbolVariant variant) const {
  double s = norm2(z);
  if (!(s < 1.0)) throw DomainError("point outside the open ball");
  double af = std::abs(f_.eval(z));
  if (variant == SymbolVariant::U) return std::pow(af, params_.p) * std::pow(1.0 - s, params_.alpha);
  return std::pow(af, params_.p / params_.alpha) * (1.0 - s);
}

double WeightedSymbol::u(cplx z) const {
  return std::pow(std::abs(f_.eval(z)), params_.p) * std::pow(1.0 - std::norm(z), params_.alpha);
}

double WeightedSymbol::log_u(cplx z) const {
  return params_.p * std::log(std::abs(f_.eval(z))) + params_.alpha * std::log1p(-std::norm(z));
}

cplx WeightedSymbol::grad_log_u(cplx z) const {
  cplx ratio = f_.deriv(z) / f_.eval(z);
  return params_.p * std::conj(ratio) - 2.0 * params_.alpha * z / (1.0 - std::norm(z));
}

double WeightedSymbol::dlog_u_drho(cplx z) const {
  double r = std::abs(z);
  cplx dir = r > 0.0 ? z / r : cplx(1.0);
  cplx ratio = f_.deriv(z) / f_.eval(z);
  return params_.p * std::real(ratio * dir) - 2.0 * params_.alpha * r / (1.0 - r * r);
}

double WeightedSymbol::dlog_u_dtheta(cplx z) const {
  cplx ratio = f_.deriv(z) / f_.eval(z);
  return params_.p * std::real(ratio * cplx(0.0, 1.0) * z);
}

}  // namespace bergman
