#include <doctest.h>

#include <map>
#include <string>

#include "bergman/config.hpp"
#include "bergman/errors.hpp"

using namespace bergman;

TEST_CASE("empty config resolves to defaults") {
  ExperimentConfig c = parse_config("");
  CHECK(c.command == "norms");
  CHECK(c.n == 1);
  CHECK(c.q == 4.0);
  CHECK(c.beta == 4.0);
  CHECK(c.function().degree() == 0);
  CHECK(c.eps.size() == 3);
}

TEST_CASE("sections, lists and coefficients") {
  ExperimentConfig c = parse_config(R"(
[run]
command = dominance
seed = 7
[function]
n = 2
coeffs = 0,0 1; 1,0 0.05 0.01 ; 0,2 -0.5
[params]
p = 1
alpha = 3
s = 1.5
[sweep]
eps = 0.1, 0.2
modes = 4
)");
  CHECK(c.command == "dominance");
  CHECK(c.seed == 7);
  CHECK(c.coeffs.size() == 3);
  CHECK(c.coeffs[1].index == MultiIndex{1, 0});
  CHECK(c.coeffs[1].coeff == cplx(0.05, 0.01));
  CHECK(c.q == doctest::Approx(1.5));
  CHECK(c.beta == doctest::Approx(4.5));
  CHECK(c.eps == std::vector<double>{0.1, 0.2});
  CHECK(c.modes == std::vector<int>{4});
  CHECK(std::abs(c.function().eval(Point{cplx(0.5), cplx(0.5)}) - cplx(1.025 - 0.125, 0.005)) < 1e-15);
}

TEST_CASE("resolved config round-trips through its echo") {
  ExperimentConfig c = parse_config("[params]\nalpha = 2.5\np = 3\n[levels]\ncount = 9\n");
  std::string ini = to_ini(c);
  ExperimentConfig d = parse_config(ini);
  CHECK(to_ini(d) == ini);
  CHECK(d.alpha == 2.5);
  CHECK(d.level_count == 9);
}

TEST_CASE("malformed configs are rejected") {
  CHECK_THROWS_AS(parse_config("[bogus]\nx = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[run]\nthreadz = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[run]\nthreads = two\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[params]\nq = 3\n"), ConfigError);  // off the line q/p = beta/alpha
  CHECK_THROWS_AS(parse_config("[function]\ncoeffs = 0,1 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[function]\nn = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[levels]\nrho_minus = 0.8\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("no section = 1\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.ini"), ConfigError);
}

TEST_CASE("environment overrides") {
  std::map<std::string, std::string> env{{"BERGMAN_LAB_SEED", "99"}, {"BERGMAN_LAB_THREADS", "3"}};
  auto get = [&](const char* k) -> const char* {
    auto it = env.find(k);
    return it == env.end() ? nullptr : it->second.c_str();
  };
  ExperimentConfig c;
  apply_env_overrides(c, get);
  CHECK(c.seed == 99);
  CHECK(c.threads == 3);
  env["BERGMAN_LAB_THREADS"] = "0";
  CHECK_THROWS_AS(apply_env_overrides(c, get), ConfigError);
}
