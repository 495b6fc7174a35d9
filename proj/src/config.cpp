#include "bergman/config.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/lexical_cast.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "bergman/csv.hpp"
#include "bergman/errors.hpp"

namespace bergman {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>> kKeys = {
    {"run", {"command", "out", "seed", "threads", "tolerance_scale"}},
    {"function", {"n", "coeffs"}},
    {"params", {"p", "alpha", "q", "beta", "s"}},
    {"quadrature", {"radial_order", "sphere_points", "graph_points", "barycenter_nodes"}},
    {"levels", {"count", "rho_minus", "rho_plus", "rho_work", "stencil"}},
    {"sweep", {"eps", "modes", "gamma_offsets", "hardy_r", "fuglede_r", "line_scales", "phi_count", "phi_knots"}},
    {"setup", {"r0", "eps0", "bar_tol"}},
};

template <class T>
T convert(const std::string& key, std::string v) {
  boost::algorithm::trim(v);
  try {
    return boost::lexical_cast<T>(v);
  } catch (const boost::bad_lexical_cast&) {
    throw ConfigError("cannot parse " + key + " = '" + v + "'");
  }
}

template <class T>
std::vector<T> convert_list(const std::string& key, const std::string& v) {
  std::vector<std::string> parts;
  boost::algorithm::split(parts, v, boost::is_any_of(","));
  std::vector<T> out;
  for (auto& s : parts) {
    boost::algorithm::trim(s);
    if (!s.empty()) out.push_back(convert<T>(key, s));
  }
  if (out.empty()) throw ConfigError(key + " must not be empty");
  return out;
}

std::vector<HoloFunc::Term> parse_coeffs(const std::string& v, int n) {
  std::vector<std::string> terms;
  boost::algorithm::split(terms, v, boost::is_any_of(";"));
  std::vector<HoloFunc::Term> out;
  for (auto& t : terms) {
    boost::algorithm::trim(t);
    if (t.empty()) continue;
    std::vector<std::string> f;
    boost::algorithm::split(f, t, boost::is_space(), boost::token_compress_on);
    if (f.size() < 2 || f.size() > 3) throw ConfigError("function.coeffs term '" + t + "' needs: index re [im]");
    HoloFunc::Term term;
    for (int i : convert_list<int>("function.coeffs index", f[0])) {
      if (i < 0) throw ConfigError("function.coeffs indices must be nonnegative");
      term.index.push_back(i);
    }
    if (static_cast<int>(term.index.size()) != n)
      throw ConfigError("function.coeffs index '" + f[0] + "' does not have n components");
    double re = convert<double>("function.coeffs", f[1]);
    double im = f.size() == 3 ? convert<double>("function.coeffs", f[2]) : 0.0;
    term.coeff = cplx(re, im);
    out.push_back(term);
  }
  if (out.empty()) throw ConfigError("function.coeffs must list at least one term");
  return out;
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    if constexpr (std::is_same_v<T, double>)
      s += fmt17(v[i]);
    else
      s += std::to_string(v[i]);
  }
  return s;
}

void validate(const ExperimentConfig& c) {
  if (c.n != 1 && c.n != 2) throw ConfigError("function.n must be 1 or 2");
  if (c.threads < 1) throw ConfigError("run.threads must be >= 1");
  if (!(c.tolerance_scale > 0.0)) throw ConfigError("run.tolerance_scale must be positive");
  if (c.radial_order < 4 || c.sphere_points < 4 || c.graph_points < 8 || c.barycenter_nodes < 4)
    throw ConfigError("quadrature orders are too small");
  if (c.level_count < 2) throw ConfigError("levels.count must be >= 2");
  if (!(0.0 < c.window.rho_minus && c.window.rho_minus < c.window.rho_plus && c.window.rho_plus < c.window.rho_work &&
        c.window.rho_work < 1.0))
    throw ConfigError("levels radii must satisfy 0 < rho_minus < rho_plus < rho_work < 1");
  if (!(c.fuglede_r > 0.0) || !(c.hardy_r > 0.0)) throw ConfigError("sweep.fuglede_r and sweep.hardy_r must be positive");
  if (c.phi_count < 0 || c.phi_knots < 3) throw ConfigError("sweep.phi_count/phi_knots out of range");
  for (double g : c.gamma_offsets)
    if (!(g > 0.0)) throw ConfigError("sweep.gamma_offsets must be positive");
  try {
    ContractiveLine line(c.params(), c.q, c.beta);
    (void)line;
  } catch (const DomainError& e) {
    throw ConfigError(std::string("params: ") + e.what());
  }
}

}  // namespace

HoloFunc ExperimentConfig::function() const { return HoloFunc(n, coeffs); }

ProfileOptions ExperimentConfig::profile_options() const {
  ProfileOptions o;
  o.points = graph_points;
  o.window = window;
  o.stencil = stencil;
  o.threads = threads;
  return o;
}

ExperimentConfig parse_config(const std::string& text) {
  pt::ptree tree;
  std::istringstream is(text);
  try {
    pt::ini_parser::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  for (const auto& [section, body] : tree) {
    auto it = kKeys.find(section);
    if (it == kKeys.end()) {
      if (!body.data().empty()) throw ConfigError("key '" + section + "' outside any section");
      throw ConfigError("unknown section [" + section + "]");
    }
    for (const auto& [key, _] : body)
      if (!it->second.count(key)) throw ConfigError("unknown key " + section + "." + key);
  }
  ExperimentConfig c;
  auto get = [&](const std::string& path) -> std::optional<std::string> {
    auto v = tree.get_optional<std::string>(pt::ptree::path_type(path, '/'));
    if (v) return *v;
    return std::nullopt;
  };
  auto set = [&]<class T>(const std::string& path, T& dst) {
    if (auto v = get(path)) dst = convert<T>(path, *v);
  };
  if (auto v = get("run/command")) c.command = boost::algorithm::trim_copy(*v);
  if (auto v = get("run/out")) c.out = boost::algorithm::trim_copy(*v);
  set("run/seed", c.seed);
  set("run/threads", c.threads);
  set("run/tolerance_scale", c.tolerance_scale);
  set("function/n", c.n);
  if (c.n != 1 && c.n != 2) throw ConfigError("function.n must be 1 or 2");
  if (auto v = get("function/coeffs"))
    c.coeffs = parse_coeffs(*v, c.n);
  else
    c.coeffs = {{MultiIndex(c.n, 0), 1.0}};
  set("params/p", c.p);
  set("params/alpha", c.alpha);
  double s = 2.0;
  set("params/s", s);
  c.q = s * c.p;
  c.beta = s * c.alpha;
  set("params/q", c.q);
  set("params/beta", c.beta);
  set("quadrature/radial_order", c.radial_order);
  set("quadrature/sphere_points", c.sphere_points);
  set("quadrature/graph_points", c.graph_points);
  set("quadrature/barycenter_nodes", c.barycenter_nodes);
  set("levels/count", c.level_count);
  set("levels/rho_minus", c.window.rho_minus);
  set("levels/rho_plus", c.window.rho_plus);
  set("levels/rho_work", c.window.rho_work);
  set("levels/stencil", c.stencil);
  if (auto v = get("sweep/eps")) c.eps = convert_list<double>("sweep.eps", *v);
  if (auto v = get("sweep/modes")) c.modes = convert_list<int>("sweep.modes", *v);
  if (auto v = get("sweep/gamma_offsets")) c.gamma_offsets = convert_list<double>("sweep.gamma_offsets", *v);
  set("sweep/hardy_r", c.hardy_r);
  set("sweep/fuglede_r", c.fuglede_r);
  if (auto v = get("sweep/line_scales")) c.line_scales = convert_list<double>("sweep.line_scales", *v);
  set("sweep/phi_count", c.phi_count);
  set("sweep/phi_knots", c.phi_knots);
  set("setup/r0", c.r0);
  set("setup/eps0", c.eps0);
  set("setup/bar_tol", c.bar_tol);
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

std::string to_ini(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "[run]\n"
     << "command = " << c.command << "\n"
     << "out = " << c.out << "\n"
     << "seed = " << c.seed << "\n"
     << "threads = " << c.threads << "\n"
     << "tolerance_scale = " << fmt17(c.tolerance_scale) << "\n\n";
  os << "[function]\n"
     << "n = " << c.n << "\n"
     << "coeffs = ";
  for (std::size_t i = 0; i < c.coeffs.size(); ++i) {
    if (i) os << "; ";
    os << join(c.coeffs[i].index) << " " << fmt17(c.coeffs[i].coeff.real()) << " " << fmt17(c.coeffs[i].coeff.imag());
  }
  os << "\n\n";
  os << "[params]\n"
     << "p = " << fmt17(c.p) << "\n"
     << "alpha = " << fmt17(c.alpha) << "\n"
     << "q = " << fmt17(c.q) << "\n"
     << "beta = " << fmt17(c.beta) << "\n\n";
  os << "[quadrature]\n"
     << "radial_order = " << c.radial_order << "\n"
     << "sphere_points = " << c.sphere_points << "\n"
     << "graph_points = " << c.graph_points << "\n"
     << "barycenter_nodes = " << c.barycenter_nodes << "\n\n";
  os << "[levels]\n"
     << "count = " << c.level_count << "\n"
     << "rho_minus = " << fmt17(c.window.rho_minus) << "\n"
     << "rho_plus = " << fmt17(c.window.rho_plus) << "\n"
     << "rho_work = " << fmt17(c.window.rho_work) << "\n"
     << "stencil = " << fmt17(c.stencil) << "\n\n";
  os << "[sweep]\n"
     << "eps = " << join(c.eps) << "\n"
     << "modes = " << join(c.modes) << "\n"
     << "gamma_offsets = " << join(c.gamma_offsets) << "\n"
     << "hardy_r = " << fmt17(c.hardy_r) << "\n"
     << "fuglede_r = " << fmt17(c.fuglede_r) << "\n"
     << "line_scales = " << join(c.line_scales) << "\n"
     << "phi_count = " << c.phi_count << "\n"
     << "phi_knots = " << c.phi_knots << "\n\n";
  os << "[setup]\n"
     << "r0 = " << fmt17(c.r0) << "\n"
     << "eps0 = " << fmt17(c.eps0) << "\n"
     << "bar_tol = " << fmt17(c.bar_tol) << "\n";
  return os.str();
}

void apply_env_overrides(ExperimentConfig& cfg, const std::function<const char*(const char*)>& getenv) {
  auto env = [&](const char* name) -> const char* { return getenv ? getenv(name) : std::getenv(name); };
  if (const char* v = env("BERGMAN_LAB_COMMAND")) cfg.command = v;
  if (const char* v = env("BERGMAN_LAB_OUT")) cfg.out = v;
  if (const char* v = env("BERGMAN_LAB_SEED")) cfg.seed = convert<std::uint64_t>("BERGMAN_LAB_SEED", v);
  if (const char* v = env("BERGMAN_LAB_THREADS")) cfg.threads = convert<int>("BERGMAN_LAB_THREADS", v);
  if (const char* v = env("BERGMAN_LAB_TOLERANCE_SCALE"))
    cfg.tolerance_scale = convert<double>("BERGMAN_LAB_TOLERANCE_SCALE", v);
  validate(cfg);
}

}  // namespace bergman
