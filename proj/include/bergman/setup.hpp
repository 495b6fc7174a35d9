#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bergman/barycenter.hpp"

namespace bergman {

struct SetupOptions {
  LevelWindow window{};
  int levels = 16;
  int points = 256;
  double eps0 = 0.1;
  double bar_tol = 1e-8;
  bool keep_graphs = false;
  int threads = 0;
};

struct SetupLevel {
  double t = 0.0;
  bool regular = false;
  std::string reason;
  double r = 0.0;
  bool r_ok = false;
  cplx bar_before;
  double bar_after = 0.0;
  double bound = 0.0;
  double grad0_norm = 0.0;
  double w1inf_before = 0.0;
  double w1inf = 0.0;
  double w12sq = 0.0;
  bool bar_ok = false;
  bool w_ok = false;
};

struct SetupCertificate {
  double t_minus = 0.0;
  double t_plus = 0.0;
  double r0 = 0.0;
  double eps0 = 0.0;
  double c1_norm = 0.0;
  std::vector<SetupLevel> levels;
  bool pass = false;
  std::string reason;
  double max_bar = 0.0;
  double bar_constant = 0.0;       // max |Bar(A_t)| / |phi|_{C^1}
  double recenter_constant = 0.0;  // max |u~|_{W^{1,inf}} / (|u|_{W^{1,inf}} + |a|)
  std::vector<std::optional<RadialGraphLevelSet>> recentered;
};

SetupCertificate verify_setup(const HoloFunc& f, const WeightParams& params, double r0,
                              const SetupOptions& opts = {});

// Runs the setup pipeline on an explicit list of levels.
SetupCertificate verify_setup_on(const HoloFunc& f, const WeightParams& params, double r0,
                                 const std::vector<double>& levels, const SetupOptions& opts);

std::string certificate_json(const SetupCertificate& c);

}  // namespace bergman
