#include <doctest.h>

#include <cmath>

#include <json.hpp>

#include "bergman/csv.hpp"
#include "bergman/errors.hpp"
#include "bergman/setup.hpp"

using namespace bergman;

TEST_CASE("setup certificate for a small perturbation") {
  WeightParams P(1, 2.0, 2.0);
  HoloFunc f = HoloFunc::one_plus(1, cplx(0.03, 0.01), 1);
  SetupOptions o;
  o.levels = 6;
  o.keep_graphs = true;
  SetupCertificate c = verify_setup(f, P, 3.0, o);
  CHECK(c.pass);
  CHECK(c.reason.empty());
  CHECK(c.t_minus < c.t_plus);
  for (std::size_t k = 0; k < c.levels.size(); ++k) {
    const auto& L = c.levels[k];
    CHECK(L.regular);
    CHECK(L.bar_after <= 1e-8);
    CHECK(std::abs(L.bar_before) <= L.bound + 1e-8);
    REQUIRE(c.recentered[k].has_value());
    CHECK(c.recentered[k]->volume == doctest::Approx(c.levels[k].r > 0 ? ball_volume(c.levels[k].r, 1) : 0).epsilon(1e-8));
  }
  CHECK(c.bar_constant > 0.0);
  auto j = nlohmann::json::parse(certificate_json(c));
  CHECK(j["pass"] == true);
  CHECK(j["levels"].size() == 6);
}

TEST_CASE("setup failures are reported") {
  WeightParams P(1, 2.0, 2.0);
  SetupOptions o;
  o.levels = 4;
  SetupCertificate small_r0 = verify_setup(HoloFunc::one_plus(1, 0.02), P, 0.1, o);
  CHECK_FALSE(small_r0.pass);
  CHECK(small_r0.reason.find("r(t) > r0") != std::string::npos);
  SetupCertificate big = verify_setup(HoloFunc::one_plus(1, 0.9), P, 3.0, o);
  CHECK_FALSE(big.pass);
  CHECK(big.reason.find("empty regular window") == 0);
  CHECK_THROWS_AS(verify_setup(HoloFunc::constant(1), P, 0.0, o), DomainError);
}

TEST_CASE("csv formatting") {
  CHECK(fmt17(0.1) == "0.10000000000000001");
  CHECK(std::stod(fmt17(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(fmt17(NAN) == "nan");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_escape("plain") == "plain");
  CsvTable t({"x", "y"});
  t.add_row({"1", "2"});
  CHECK(t.str() == "x,y\r\n1,2\r\n");
  CHECK_THROWS(t.add_row({"1"}));
}
