#include "bergman/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "bergman/barycenter.hpp"
#include "bergman/dominance.hpp"
#include "bergman/errors.hpp"
#include "bergman/hardy.hpp"
#include "bergman/level_sets.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/setup.hpp"
#include "bergman/stability.hpp"

namespace bergman {

namespace {

using std::numbers::pi;

std::string fmt(double x, int digits = 3) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

std::string yes(bool b) { return b ? "1" : "0"; }

CriterionResult start(int id, std::string title, double limit, std::vector<std::string> header) {
  CriterionResult r;
  r.id = id;
  r.title = std::move(title);
  r.runtime_limit = limit;
  r.table = CsvTable(std::move(header));
  return r;
}

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double m = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

// Bergman disc of Euclidean radius t about b as a radial graph about 0.
RadialGraphLevelSet moved_disc(cplx b, double t, int points = 256) {
  PlanarField U{[=](cplx z) { return 1.0 - std::norm(point_automorphism(b, z)); },
                [=](cplx z) {
                  cplx w = point_automorphism(b, z);
                  cplx dw = (1.0 - std::norm(b)) / ((1.0 - std::conj(b) * z) * (1.0 - std::conj(b) * z));
                  return -2.0 * std::conj(std::conj(w) * dw);
                }};
  double lo = std::abs(b) > 0 ? 2 * std::abs(b) / (1 + std::norm(b)) + 0.02 : 1e-3;
  return extract_field_graph(U, 1.0 - t * t, points, lo, 0.99, true);
}

ProfileOptions profile_opts(const AcceptanceOptions& o) {
  ProfileOptions p;
  p.threads = o.threads;
  p.keep_graphs = false;
  return p;
}

CriterionResult normalization(const AcceptanceOptions& o) {
  CriterionResult r = start(1, "normalization of the constant function", 5, {"n", "p", "alpha", "norm", "error"});
  const double tol = 1e-10 * o.tolerance_scale;
  double worst = 0.0;
  for (double p : {1.0, 2.0, 3.5, 6.0})
    for (double alpha : {1.05, 2.0, 4.5}) {
      WeightParams P(1, p, alpha);
      double norm = std::pow(bergman_integral(HoloFunc::constant(1), P), 1.0 / p);
      worst = std::max(worst, std::abs(norm - 1.0));
      r.table.add_row({"1", fmt17(p), fmt17(alpha), fmt17(norm), fmt17(norm - 1.0)});
    }
  r.pass = worst <= tol;
  r.summary = "12 (p, alpha) pairs, max |norm - 1| = " + fmt(worst) + " (tol " + fmt(tol) + ")";
  return r;
}

CriterionResult model_ode(const AcceptanceOptions& o) {
  CriterionResult r = start(2, "model profile differential equation", 10,
                            {"n", "alpha", "t", "minus_dmu_star", "phi_over_t", "rel_error"});
  const double tol = 1e-6 * o.tolerance_scale, tol_phi = 1e-12 * o.tolerance_scale;
  double worst = 0.0, worst_phi = 0.0;
  for (int n : {1, 2})
    for (double alpha : {n + 0.5, n + 1.0, n + 3.0}) {
      WeightParams P(n, 2.0, alpha);
      const double Cn = sphere_area(n);
      for (int k = 0; k < 50; ++k) {
        double t = (k + 0.5) / 50.0;
        double rho = model_radius(t, alpha);
        // mu*(t) = V(rho(t)) with V'(rho) = C_n rho^{2n-1} (1-rho^2)^{-n-1} and 1 - rho^2 = t^{1/alpha}
        double dmu = Cn * std::pow(rho, 2 * n - 2) * std::pow(t, -(n + 1) / alpha) * std::pow(t, 1 / alpha - 1) /
                     (2 * alpha);
        double rhs = iso_profile_phi(model_profile(t, P), P) / t;
        double rel = std::abs(dmu - rhs) / dmu;
        worst = std::max(worst, rel);
        r.table.add_row({std::to_string(n), fmt17(alpha), fmt17(t), fmt17(dmu), fmt17(rhs), fmt17(rel)});
        if (n == 1) {
          double xi = model_profile(t, P);
          double closed = (pi + xi) / alpha;
          worst_phi = std::max(worst_phi, std::abs(iso_profile_phi(xi, P) - closed) / closed);
        }
      }
    }
  r.pass = worst <= tol && worst_phi <= tol_phi;
  r.summary = "50 levels x 3 alphas, n = 1, 2: max rel ODE error " + fmt(worst) + "; n = 1 closed-form Phi error " +
              fmt(worst_phi);
  return r;
}

CriterionResult perimeter(const AcceptanceOptions& o) {
  CriterionResult r = start(3, "perimeter of level sets of |z|", 10, {"radius", "field_perimeter", "closed_form", "rel_error"});
  const double tol = 1e-6 * o.tolerance_scale;
  PlanarField U{[](cplx z) { return std::abs(z); }, [](cplx z) { return z / std::abs(z); }};
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    double rho = 0.05 + 0.1 * k;
    RadialGraphLevelSet g = extract_field_graph(U, rho, 256, 0.01, 0.99, false);
    double got = field_perimeter(g, U.gradient);
    double want = ball_perimeter_euclid(rho, 1);
    double rel = std::abs(got - want) / want;
    worst = std::max(worst, rel);
    r.table.add_row({fmt17(rho), fmt17(got), fmt17(want), fmt17(rel)});
  }
  r.pass = worst <= tol;
  r.summary = "10 radii, max rel error " + fmt(worst);
  return r;
}

CriterionResult coarea(const AcceptanceOptions& o) {
  CriterionResult r = start(4, "coarea flux identity", 60, {"f", "t", "mu", "J", "rel_error", "regular"});
  const double tol = 1e-4 * o.tolerance_scale;
  WeightParams P(1, 2.0, 2.0);
  std::vector<std::pair<std::string, HoloFunc>> fs{{"1", HoloFunc::constant(1)},
                                                   {"1+0.05z", HoloFunc::one_plus(1, 0.05, 1)},
                                                   {"1+0.05z^2", HoloFunc::one_plus(1, 0.05, 2)}};
  double worst = 0.0;
  bool all_regular = true;
  for (const auto& [name, f] : fs) {
    WeightedSymbol u(f, P);
    DistributionProfile prof = distribution_profile(u, level_grid(P, {}, 20), profile_opts(o));
    for (const auto& L : prof.levels) {
      double rel = L.regular ? std::abs(L.J - 4 * P.alpha * L.t * L.mu) / L.J : 1.0;
      all_regular = all_regular && L.regular;
      worst = std::max(worst, rel);
      r.table.add_row({name, fmt17(L.t), fmt17(L.mu), fmt17(L.J), fmt17(rel), yes(L.regular)});
    }
  }
  r.pass = all_regular && worst < tol;
  r.summary = "3 functions x 20 levels, max rel error " + fmt(worst) + (all_regular ? "" : ", irregular level found");
  return r;
}

CriterionResult local_dominance(const AcceptanceOptions& o) {
  CriterionResult r = start(5, "local dominance of the distribution function", 120,
                            {"eps", "p", "alpha", "t", "mu", "mu_star", "margin", "in_window", "ok"});
  DominanceOptions d;
  d.tol = 1e-6 * o.tolerance_scale;
  bool all = true;
  double min_margin = 1e300;
  int windows = 0;
  for (double eps : {0.01, 0.05})
    for (auto [p, alpha] : {std::pair{2.0, 2.0}, std::pair{1.0, 1.5}}) {
      WeightParams P(1, p, alpha);
      WeightedSymbol u(normalized(HoloFunc::one_plus(1, eps), P), P);
      ProfileOptions po = profile_opts(o);
      DistributionProfile prof = distribution_profile(u, level_grid(P, {}, 16), po);
      DominanceReport rep = verify_dominance(prof, [&](double t) { return level_measure(u, t, po); }, d);
      all = all && rep.pass;
      windows += rep.anchor_found;
      for (const auto& L : rep.levels) {
        if (L.in_window) min_margin = std::min(min_margin, L.margin);
        r.table.add_row({fmt17(eps), fmt17(p), fmt17(alpha), fmt17(L.t), fmt17(L.mu), fmt17(L.mu_star),
                         fmt17(L.margin), yes(L.in_window), yes(L.ok)});
      }
    }
  r.pass = all;
  r.summary = "4 cases, " + std::to_string(windows) + " anchored, min margin on window " + fmt(min_margin);
  return r;
}

CriterionResult chain(const AcceptanceOptions& o) {
  CriterionResult r = start(6, "contraction and norm chain", 120,
                            {"eps", "p", "alpha", "s", "a_beta_q", "a_alpha_p", "h_nr", "contraction_deficit", "pass"});
  const double tol = 1e-8 * o.tolerance_scale;
  bool all = true;
  double slack = 1e300;
  for (double eps : {0.01, 0.05})
    for (auto [p, alpha] : {std::pair{2.0, 2.0}, std::pair{1.0, 1.5}})
      for (double s : {1.5, 2.0}) {
        HoloFunc f = HoloFunc::one_plus(1, eps);
        ContractiveLine line = ContractiveLine::scaled(WeightParams(1, p, alpha), s);
        ChainReport c = chain_check(f, line, {}, tol);
        ContractionResult k = contraction_check(f, line);
        bool ok = c.pass && k.lhs <= k.rhs + tol;
        all = all && ok;
        slack = std::min({slack, c.a_alpha_p - c.a_beta_q, c.h_nr - c.a_alpha_p, k.deficit});
        r.table.add_row({fmt17(eps), fmt17(p), fmt17(alpha), fmt17(s), fmt17(c.a_beta_q), fmt17(c.a_alpha_p),
                         fmt17(c.h_nr), fmt17(k.deficit), yes(ok)});
      }
  r.pass = all;
  r.summary = "8 cases, smallest slack " + fmt(slack);
  return r;
}

CriterionResult fuglede(const AcceptanceOptions& o) {
  CriterionResult r = start(7, "Fuglede deficit of synthetic graphs", 60,
                            {"k", "eps", "deficit", "deficit_over_eps2", "w12sq"});
  const double zero_tol = 1e-8 * o.tolerance_scale, ratio_tol = 0.1 * o.tolerance_scale;
  const std::vector<double> eps{0.02, 0.01, 0.005, 0.0025};
  bool ok = true;
  double worst_ratio = 0.0, worst_zero = 0.0;
  for (int k : {2, 3}) {
    double d0 = fuglede_deficit(synthetic_graph(1.0, 0.0, k)).deficit;
    worst_zero = std::max(worst_zero, std::abs(d0));
    r.table.add_row({std::to_string(k), "0", fmt17(d0), "", "0"});
    std::vector<double> q;
    for (double e : eps) {
      DeficitReport d = fuglede_deficit(synthetic_graph(1.0, e, k));
      ok = ok && d.deficit > zero_tol;
      q.push_back(d.deficit / (e * e));
      r.table.add_row({std::to_string(k), fmt17(e), fmt17(d.deficit), fmt17(q.back()), fmt17(d.w12sq)});
    }
    for (std::size_t i = 1; i < q.size(); ++i) worst_ratio = std::max(worst_ratio, std::abs(q[i] / q[i - 1] - 1.0));
  }
  r.pass = ok && worst_zero <= zero_tol && worst_ratio <= ratio_tol;
  r.summary = "k = 2, 3 over 4 halvings: max |ratio - 1| = " + fmt(worst_ratio) + ", |deficit(0)| = " + fmt(worst_zero) +
              (ok ? ", positive for eps > 0" : ", nonpositive deficit at eps > 0");
  return r;
}

CriterionResult gap(const AcceptanceOptions& o) {
  CriterionResult r = start(8, "quantitative gap scaling", 300, {"eps", "deficit", "shape_integral", "ratio"});
  WeightParams P(1, 2.0, 2.0);
  ContractiveLine line = ContractiveLine::scaled(P, 2.0);
  std::vector<double> eps{0.05, 0.025, 0.0125}, def, shape, ratio;
  for (double e : eps) {
    HoloFunc f = HoloFunc::one_plus(1, e);
    SetupOptions so;
    so.keep_graphs = true;
    so.threads = o.threads;
    SetupCertificate cert = verify_setup(f, P, 3.0, so);
    std::vector<double> levels;
    std::vector<RadialGraphLevelSet> graphs;
    for (std::size_t k = 0; k < cert.levels.size(); ++k)
      if (cert.recentered[k]) {
        levels.push_back(cert.levels[k].t);
        graphs.push_back(*cert.recentered[k]);
      }
    GapResult g = gap_check(f, line, levels, graphs);
    def.push_back(g.deficit);
    shape.push_back(g.shape_integral);
    ratio.push_back(g.ratio);
    r.table.add_row({fmt17(e), fmt17(g.deficit), fmt17(g.shape_integral), fmt17(g.ratio)});
  }
  const double slope_tol = 0.1 * o.tolerance_scale, spread_tol = 0.2 * o.tolerance_scale;
  bool positive = std::all_of(def.begin(), def.end(), [](double x) { return x > 0; }) &&
                  std::all_of(shape.begin(), shape.end(), [](double x) { return x > 0; });
  double sd = positive ? loglog_slope(eps, def) : NAN, ss = positive ? loglog_slope(eps, shape) : NAN;
  auto [lo, hi] = std::minmax_element(ratio.begin(), ratio.end());
  double spread = *lo > 0 ? *hi / *lo - 1.0 : NAN;
  bool slopes_ok = std::abs(sd - 2.0) <= slope_tol && std::abs(ss - 2.0) <= slope_tol;
  bool ratio_ok = positive && spread <= spread_tol;
  r.pass = slopes_ok && ratio_ok;
  r.summary = "slopes: deficit " + fmt(sd) + ", shape " + fmt(ss) + " (want 2 +- 0.1); ratio spread " + fmt(spread) +
              (ratio_ok ? " ok" : " too large");
  return r;
}

CriterionResult hardy_limit(const AcceptanceOptions& o) {
  CriterionResult r = start(9, "Hardy limit of borderline Bergman norms", 120,
                            {"f", "gamma", "a_norm", "hardy_norm", "gap", "k_gamma", "k_converged"});
  const double tol = 0.02 * o.tolerance_scale;
  std::vector<std::pair<std::string, HoloFunc>> fs{{"1", HoloFunc::constant(1)},
                                                   {"z", HoloFunc::monomial(1, 1)},
                                                   {"1+0.05z", HoloFunc::one_plus(1, 0.05)}};
  std::vector<double> gammas;
  for (double g : {0.5, 0.2, 0.1, 0.05, 0.02}) gammas.push_back(1.0 + g);
  bool gaps_ok = true, k_ok = true;
  double final_k = 0.0;
  bool final_converged = false;
  for (const auto& [name, f] : fs) {
    HardyLimitSweep sw = hardy_limit_sweep(f, 2.0, gammas);
    gaps_ok = gaps_ok && sw.gaps_decreasing && sw.rows.back().gap < tol * sw.hardy_norm;
    const auto& last = sw.rows.back();
    k_ok = k_ok && sw.k_decreasing && last.k_converged && last.k_gamma < 1.1;
    final_k = last.k_gamma;
    final_converged = last.k_converged;
    for (const auto& row : sw.rows)
      r.table.add_row({name, fmt17(row.gamma), fmt17(row.a_norm), fmt17(row.hardy_norm), fmt17(row.gap),
                       fmt17(row.k_gamma), yes(row.k_converged)});
  }
  r.pass = gaps_ok && k_ok;
  r.summary = std::string("norm gaps ") + (gaps_ok ? "decrease below 2%" : "FAIL") + "; K at gamma = 1.02: truncated " +
              fmt(final_k) + (final_converged ? " converged" : " not converged (diverges)");
  return r;
}

CriterionResult convex_order(const AcceptanceOptions& o) {
  CriterionResult r = start(10, "hinge dominance and random convex battery", 120, {"kind", "index", "t", "margin"});
  const double tol = 1e-8 * o.tolerance_scale;
  WeightParams P(1, 2.0, 2.0);
  WeightedSymbol u(normalized(HoloFunc::one_plus(1, 0.05), P), P);
  std::vector<double> window = level_grid(P, {}, 33);
  HingeDominance hd = hinge_dominance(hinge_direct(u, window), hinge_model(P, window), tol, 1e-6 * o.tolerance_scale);
  for (std::size_t k = 0; k < window.size(); ++k)
    r.table.add_row({"hinge", std::to_string(k), fmt17(window[k]), fmt17(hd.margin[k])});

  const int knots = 32;
  std::vector<double> grid(knots);
  for (int k = 0; k < knots; ++k) grid[k] = static_cast<double>(k) / (knots - 1);
  grid.back() = 1.0;
  HingeProfile X = hinge_direct(u, grid), Y = hinge_model(P, grid);
  std::mt19937_64 rng(o.seed);
  double worst = 1e300;
  for (int i = 0; i < 500; ++i) {
    ConvexTest c = convex_functional_test(X, Y, ConvexTestFunction::random(rng, knots));
    worst = std::min(worst, c.margin);
    r.table.add_row({"phi", std::to_string(i), "", fmt17(c.margin)});
  }
  double hinge_min = *std::min_element(hd.margin.begin(), hd.margin.end());
  r.pass = hd.all && worst >= -tol;
  r.summary = "hinge dominance " + std::string(hd.all ? "holds" : "fails") + " (min margin " + fmt(hinge_min) +
              "); 500 random Phi, min margin " + fmt(worst);
  return r;
}

CriterionResult barycenter_checks(const AcceptanceOptions& o) {
  CriterionResult r = start(11, "holomorphic barycenter", 60, {"check", "index", "value"});
  const double sc = o.tolerance_scale;
  bool ok = true;

  double sym = 0.0;
  int idx = 0;
  for (const RadialGraphLevelSet& E : {synthetic_graph(1.0, 0.05, 2), synthetic_graph(1.0, 0.05, 4), moved_disc(0.0, 0.5)}) {
    double a = std::abs(barycenter(E).a);
    sym = std::max(sym, a);
    r.table.add_row({"symmetric_bar", std::to_string(idx++), fmt17(a)});
  }
  ok = ok && sym < 1e-9 * sc;

  RadialGraphLevelSet D = moved_disc(cplx(0.1, -0.05), 0.5);
  SetQuadrature Q = set_quadrature(D);
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> box(-0.4, 0.4), unit(0.0, 1.0);
  double fd = 0.0;
  for (int i = 0; i < 10; ++i) {
    cplx a(box(rng), box(rng));
    const double h = 1e-6;
    cplx g = L_gradient(Q, a);
    cplx num((L_functional(Q, a + h) - L_functional(Q, a - h)) / (2 * h),
             (L_functional(Q, a + cplx(0, h)) - L_functional(Q, a - cplx(0, h))) / (2 * h));
    double rel = std::abs(g - num) / std::max(std::abs(g), 1.0);
    fd = std::max(fd, rel);
    r.table.add_row({"gradient_fd", std::to_string(i), fmt17(rel)});
  }
  ok = ok && fd < 1e-6 * sc;

  RadialGraphLevelSet S = moved_disc(cplx(0.03, 0.02), 0.5);
  SetQuadrature QS = set_quadrature(S);
  auto draw = [&] { return std::polar(0.3 * std::sqrt(unit(rng)), 2 * pi * unit(rng)); };
  double worst_convex = 1e300;
  for (int i = 0; i < 100; ++i) {
    cplx a = draw(), b = draw();
    double lhs = std::real((L_gradient(QS, a) - L_gradient(QS, b)) * std::conj(a - b));
    double slack = lhs - 2 * QS.mass * std::norm(a - b);
    worst_convex = std::min(worst_convex, slack);
    r.table.add_row({"strong_convexity", std::to_string(i), fmt17(slack)});
  }
  ok = ok && worst_convex >= -1e-10 * sc;

  double rec = 0.0;
  idx = 0;
  std::vector<double> lop(128);
  for (int j = 0; j < 128; ++j) {
    double th = 2 * pi * j / 128;
    lop[j] = 0.5 + 0.03 * std::cos(th) + 0.02 * std::sin(2 * th);
  }
  for (const RadialGraphLevelSet& E : {moved_disc(cplx(0.05, 0.02), 0.5), moved_disc(cplx(-0.1, 0.12), 0.5),
                                        make_graph(0.0, lop, 0.5)}) {
    BarycenterResult b = barycenter(E);
    double a = std::abs(barycenter(recenter(E, b.a)).a);
    rec = std::max(rec, a);
    r.table.add_row({"recentered_bar", std::to_string(idx++), fmt17(a)});
  }
  ok = ok && rec < 1e-8 * sc;

  r.pass = ok;
  r.summary = "symmetric |a| " + fmt(sym) + ", gradient vs FD " + fmt(fd) + ", convexity min slack " + fmt(worst_convex) +
              ", recentered |a| " + fmt(rec);
  return r;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

AcceptanceOptions AcceptanceOptions::from_config(const ExperimentConfig& cfg) {
  return {cfg.seed, cfg.threads, cfg.tolerance_scale};
}

CriterionResult run_criterion(int id, const AcceptanceOptions& opts) {
  switch (id) {
    case 1: return normalization(opts);
    case 2: return model_ode(opts);
    case 3: return perimeter(opts);
    case 4: return coarea(opts);
    case 5: return local_dominance(opts);
    case 6: return chain(opts);
    case 7: return fuglede(opts);
    case 8: return gap(opts);
    case 9: return hardy_limit(opts);
    case 10: return convex_order(opts);
    case 11: return barycenter_checks(opts);
    case 12: return determinism_check(std::filesystem::temp_directory_path() / "bergman_selftest", opts);
  }
  throw DomainError("no acceptance criterion " + std::to_string(id));
}

std::vector<CriterionResult> run_selftest(const std::filesystem::path& dir, const AcceptanceOptions& opts) {
  std::filesystem::create_directories(dir);
  std::vector<CriterionResult> out;
  CsvTable summary({"criterion", "title", "pass", "summary"});
  for (int id = 1; id < kCriterionCount; ++id) {
    CriterionResult r;
    try {
      r = run_criterion(id, opts);
    } catch (const std::exception& e) {
      r.id = id;
      r.pass = false;
      r.summary = std::string("error: ") + e.what();
    }
    char name[32];
    std::snprintf(name, sizeof name, "criterion_%02d.csv", id);
    write_file_atomic(dir / name, r.table.str());
    summary.add_row({std::to_string(id), r.title, yes(r.pass), r.summary});
    out.push_back(std::move(r));
  }
  write_file_atomic(dir / "summary.csv", summary.str());
  return out;
}

CriterionResult determinism_check(const std::filesystem::path& dir, const AcceptanceOptions& opts) {
  CriterionResult r = start(12, "selftest determinism", 0, {"file", "bytes", "identical"});
  namespace fs = std::filesystem;
  fs::path a = dir / "run_a", b = dir / "run_b";
  fs::remove_all(a);
  fs::remove_all(b);
  run_selftest(a, opts);
  run_selftest(b, opts);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(a)) files.push_back(e.path().filename());
  std::sort(files.begin(), files.end());
  bool same = !files.empty();
  for (const auto& f : files) {
    std::string x = read_file(a / f);
    bool eq = fs::exists(b / f) && x == read_file(b / f);
    same = same && eq;
    r.table.add_row({f.string(), std::to_string(x.size()), yes(eq)});
  }
  std::size_t count_b = std::distance(fs::directory_iterator(b), fs::directory_iterator{});
  same = same && count_b == files.size();
  r.pass = same;
  r.summary = std::to_string(files.size()) + " files, " + (same ? "byte-identical" : "outputs differ");
  return r;
}

}  // namespace bergman
