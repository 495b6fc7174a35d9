#include "bergman/barycenter.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bergman/errors.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/sphere_function.hpp"

namespace bergman {

namespace {

void require_inside(cplx a) {
  if (!(std::norm(a) < 1.0)) throw DomainError("barycenter argument must lie in the open disc");
}

}  // namespace

SetQuadrature set_quadrature(const RadialGraphLevelSet& E, int radial_nodes) {
  SetQuadrature Q;
  const int N = E.size();
  GaussRule gl = gauss_legendre(radial_nodes);
  Q.z.reserve(static_cast<std::size_t>(N) * radial_nodes);
  Q.w.reserve(Q.z.capacity());
  const double dth = 2.0 * std::numbers::pi / N;
  for (int j = 0; j < N; ++j) {
    const double R = E.rho[j];
    const cplx dir = std::polar(1.0, E.theta[j]);
    for (int i = 0; i < radial_nodes; ++i) {
      double r = 0.5 * R * (1.0 + gl.nodes[i]);
      double w = 0.5 * R * gl.weights[i] * dth * r / ((1.0 - r * r) * (1.0 - r * r));
      Q.z.push_back(r * dir);
      Q.w.push_back(w);
      Q.mass += w;
    }
  }
  return Q;
}

double L_functional(const SetQuadrature& Q, cplx a) {
  require_inside(a);
  double s = -Q.mass * std::log1p(-std::norm(a));
  const cplx ac = std::conj(a);
  for (std::size_t i = 0; i < Q.z.size(); ++i) {
    const cplx z = Q.z[i];
    s += Q.w[i] * (-std::log1p(-std::norm(z)) + std::log(std::norm(1.0 - ac * z)));
  }
  return s;
}

double L_functional(const RadialGraphLevelSet& E, cplx a) { return L_functional(set_quadrature(E), a); }

cplx L_gradient(const SetQuadrature& Q, cplx a) {
  require_inside(a);
  const cplx ac = std::conj(a);
  cplx s = 0.0;
  for (std::size_t i = 0; i < Q.z.size(); ++i) s += Q.w[i] * (Q.z[i] / (1.0 - ac * Q.z[i]));
  return 2.0 * a / (1.0 - std::norm(a)) * Q.mass - 2.0 * s;
}

cplx L_gradient(const RadialGraphLevelSet& E, cplx a) { return L_gradient(set_quadrature(E), a); }

Eigen::Matrix2d L_hessian(const SetQuadrature& Q, cplx a) {
  require_inside(a);
  const double d = 1.0 - std::norm(a);
  Eigen::Vector2d av(a.real(), a.imag());
  Eigen::Matrix2d H = Q.mass * (2.0 / d * Eigen::Matrix2d::Identity() + 4.0 / (d * d) * av * av.transpose());
  // The log|1 - conj(a) z|^2 part is harmonic in a; its Hessian is built from g'' = -z^2/w^2.
  const cplx ac = std::conj(a);
  cplx g2 = 0.0;
  for (std::size_t i = 0; i < Q.z.size(); ++i) {
    cplx w = 1.0 - ac * Q.z[i];
    g2 += Q.w[i] * (-(Q.z[i] * Q.z[i]) / (w * w));
  }
  H(0, 0) += 2.0 * g2.real();
  H(1, 1) -= 2.0 * g2.real();
  H(0, 1) += 2.0 * g2.imag();
  H(1, 0) += 2.0 * g2.imag();
  return H;
}

BarycenterResult barycenter(const RadialGraphLevelSet& E, const BarycenterOptions& opts, cplx start) {
  require_inside(start);
  SetQuadrature Q = set_quadrature(E, opts.radial_nodes);
  if (!(Q.mass > 0.0)) throw DomainError("set has zero measure");
  BarycenterResult res;
  res.m0 = ball_volume_euclid(E.min_rho(), 1);
  res.grad0_norm = std::abs(L_gradient(Q, 0.0));
  res.bound = res.grad0_norm / (2.0 * res.m0);

  cplx a = start;
  double L = L_functional(Q, a);
  cplx g = L_gradient(Q, a);
  int it = 0;
  auto log_step = [&](const char* kind, double step) {
    std::ostringstream os;
    os.precision(6);
    os << "iter " << it << " " << kind << " |g|=" << std::abs(g) << " L=" << L << " step=" << step;
    res.trace.push_back(os.str());
  };
  while (std::abs(g) > opts.tol) {
    if (it >= opts.max_iter) {
      std::ostringstream os;
      os << "barycenter did not converge in " << opts.max_iter << " iterations (|grad|=" << std::abs(g) << ")";
      throw SolverError(os.str(), res.trace);
    }
    ++it;
    Eigen::Matrix2d H = L_hessian(Q, a);
    Eigen::Vector2d gv(g.real(), g.imag());
    Eigen::Vector2d dv;
    const char* kind = "newton";
    Eigen::LLT<Eigen::Matrix2d> llt(H);
    if (llt.info() == Eigen::Success) {
      dv = -llt.solve(gv);
      if (!(dv.dot(gv) < 0.0)) {
        dv = -gv;
        kind = "gradient";
      }
    } else {
      dv = -gv;
      kind = "gradient";
    }
    cplx d(dv(0), dv(1));
    const double slope = dv.dot(gv);
    double step = 1.0;
    bool accepted = false;
    for (int k = 0; k < 60; ++k, step *= 0.5) {
      cplx trial = a + step * d;
      if (!(std::norm(trial) < 1.0)) continue;
      double Lt = L_functional(Q, trial);
      cplx gt = L_gradient(Q, trial);
      // Armijo, or a strict gradient decrease once L is flat to rounding.
      if (Lt <= L + 1e-4 * step * slope || std::abs(gt) < 0.5 * std::abs(g)) {
        a = trial;
        L = Lt;
        g = gt;
        accepted = true;
        break;
      }
    }
    log_step(kind, step);
    if (!accepted) throw SolverError("line search failed in barycenter", res.trace);
  }
  res.a = a;
  res.L_value = L;
  res.gradient_norm = std::abs(g);
  res.iterations = it;
  res.certificate_ok = std::abs(a) <= res.bound + 1e-8;
  return res;
}

RadialGraphLevelSet recenter(const RadialGraphLevelSet& E, cplx a) {
  require_inside(a);
  const int N = E.size();
  if (a == cplx(0.0)) return E;
  SphereFunction rho_E(E.rho);
  auto boundary = [&](double th) { return rho_E.eval(th); };
  constexpr int kSamples = 64;
  const double s_max = 1.0 - 1e-9;
  std::vector<double> rho(N);
  for (int j = 0; j < N; ++j) {
    const cplx dir = std::polar(1.0, E.theta[j]);
    // w = s*dir lies in the image iff its preimage (w + a)/(1 + conj(a) w) lies in E.
    auto G = [&](double s) {
      cplx pre = point_automorphism(-a, s * dir);
      return std::abs(pre) - boundary(std::arg(pre));
    };
    int changes = 0;
    double lo = 0.0, hi = 0.0;
    double prev = G(0.0);
    if (!(prev < 0.0))
      throw RegimeError(Regime::RecenteringLeftGraphClass, "recentering point is not inside the set");
    for (int k = 1; k <= kSamples; ++k) {
      double s = s_max * k / kSamples;
      double cur = G(s);
      if ((prev < 0.0) != (cur < 0.0)) {
        ++changes;
        lo = s_max * (k - 1) / kSamples;
        hi = s;
      }
      prev = cur;
    }
    if (changes != 1) {
      std::ostringstream os;
      os << "ray " << j << " meets the boundary " << changes << " times";
      throw RegimeError(Regime::RecenteringLeftGraphClass, os.str());
    }
    boost::uintmax_t iters = 200;
    auto br = boost::math::tools::toms748_solve(G, lo, hi, boost::math::tools::eps_tolerance<double>(52), iters);
    rho[j] = 0.5 * (br.first + br.second);
  }
  return make_graph(E.t, std::move(rho), E.rho0);
}

}  // namespace bergman
