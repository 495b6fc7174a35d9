#include "bergman/setup.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "bergman/csv.hpp"
#include "bergman/errors.hpp"
#include "bergman/parallel.hpp"
#include "bergman/stability.hpp"

namespace bergman {

SetupCertificate verify_setup(const HoloFunc& f, const WeightParams& params, double r0, const SetupOptions& opts) {
  return verify_setup_on(f, params, r0, level_grid(params, opts.window, opts.levels), opts);
}

SetupCertificate verify_setup_on(const HoloFunc& f, const WeightParams& params, double r0,
                                 const std::vector<double>& levels, const SetupOptions& opts) {
  if (!(r0 > 0.0)) throw DomainError("r0 must be positive");
  SetupCertificate cert;
  cert.r0 = r0;
  cert.eps0 = opts.eps0;
  cert.c1_norm = c1_norm_on_subball(f.minus_one(), opts.window.rho_work);
  cert.levels.resize(levels.size());
  cert.recentered.resize(levels.size());
  WeightedSymbol u(f, params);
  parallel_for(
      levels.size(),
      [&](std::size_t k) {
        SetupLevel& L = cert.levels[k];
        L.t = levels[k];
        try {
          RadialGraphLevelSet g = extract_level_graph(u, L.t, opts.points, opts.window);
          if (!(min_gradient(g, u) >= 1e-10)) throw RegimeError(Regime::NonRegularValue, "vanishing gradient");
          L.r = g.r;
          L.r_ok = g.r <= r0;
          BarycenterResult bar = barycenter(g);
          L.bar_before = bar.a;
          L.bound = bar.bound;
          L.grad0_norm = bar.grad0_norm;
          L.w1inf_before = sphere_norms(SphereFunction(g.bergman_u)).w1inf;
          RadialGraphLevelSet h = recenter(g, bar.a);
          L.bar_after = std::abs(barycenter(h).a);
          SphereNorms nh = sphere_norms(SphereFunction(h.bergman_u));
          L.w1inf = nh.w1inf;
          L.w12sq = nh.w12sq;
          L.bar_ok = L.bar_after <= opts.bar_tol;
          L.w_ok = L.w1inf <= opts.eps0;
          L.regular = true;
          if (opts.keep_graphs) cert.recentered[k] = std::move(h);
        } catch (const RegimeError& e) {
          L.reason = e.what();
        } catch (const SolverError& e) {
          L.reason = e.what();
        }
      },
      opts.threads);

  bool any = false;
  bool ok = true;
  double tmin = INFINITY, tmax = -INFINITY;
  for (const auto& L : cert.levels) {
    if (!L.regular) continue;
    any = true;
    tmin = std::min(tmin, L.t);
    tmax = std::max(tmax, L.t);
    cert.max_bar = std::max(cert.max_bar, std::abs(L.bar_before));
    double denom = L.w1inf_before + std::abs(L.bar_before);
    if (denom > 0.0) cert.recenter_constant = std::max(cert.recenter_constant, L.w1inf / denom);
    if (!(L.r_ok && L.bar_ok && L.w_ok)) {
      if (ok) {
        cert.reason = "level t=" + fmt17(L.t) + " fails:" + (L.r_ok ? "" : " r(t) > r0") +
                      (L.bar_ok ? "" : " |Bar| too large") + (L.w_ok ? "" : " W1inf above eps0");
      }
      ok = false;
    }
  }
  if (!any) {
    cert.pass = false;
    std::string first;
    for (const auto& L : cert.levels)
      if (!L.reason.empty()) {
        first = L.reason;
        break;
      }
    cert.reason = "empty regular window" + (first.empty() ? std::string() : ": " + first);
    return cert;
  }
  cert.t_minus = tmin;
  cert.t_plus = tmax;
  cert.bar_constant = cert.c1_norm > 0.0 ? cert.max_bar / cert.c1_norm : 0.0;
  cert.pass = ok;
  return cert;
}

std::string certificate_json(const SetupCertificate& c) {
  nlohmann::ordered_json j;
  j["pass"] = c.pass;
  j["reason"] = c.reason;
  j["t_minus"] = c.t_minus;
  j["t_plus"] = c.t_plus;
  j["r0"] = c.r0;
  j["eps0"] = c.eps0;
  j["c1_norm"] = c.c1_norm;
  j["max_bar"] = c.max_bar;
  j["bar_constant"] = c.bar_constant;
  j["recenter_constant"] = c.recenter_constant;
  auto& arr = j["levels"] = nlohmann::ordered_json::array();
  for (const auto& L : c.levels) {
    nlohmann::ordered_json e;
    e["t"] = L.t;
    e["regular"] = L.regular;
    e["reason"] = L.reason;
    e["r"] = L.r;
    e["r_ok"] = L.r_ok;
    e["bar_before_re"] = L.bar_before.real();
    e["bar_before_im"] = L.bar_before.imag();
    e["bar_after"] = L.bar_after;
    e["bar_bound"] = L.bound;
    e["w1inf_before"] = L.w1inf_before;
    e["w1inf"] = L.w1inf;
    e["bar_ok"] = L.bar_ok;
    e["w_ok"] = L.w_ok;
    arr.push_back(e);
  }
  return j.dump(2) + "\n";
}

}  // namespace bergman
