#include <doctest.h>

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bdd/commands.hpp"

using namespace bdd;
using namespace bdd::cli;

namespace {

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("parse_grid accepts ranges and lists") {
  auto r = parse_grid("0.5:0.25:1.5");
  REQUIRE(r.size() == 5);
  CHECK(r.front() == doctest::Approx(0.5));
  CHECK(r.back() == doctest::Approx(1.5));
  auto l = parse_grid("1,2.5,-4");
  REQUIRE(l.size() == 3);
  CHECK(l[2] == doctest::Approx(-4.0));
  CHECK_THROWS_AS(parse_grid(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("0:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("0:-1:5"), std::invalid_argument);
}

TEST_CASE("params emits the reference row") {
  ParamsOptions opt{320, 0.05, 1.6};
  CommonOptions common;
  std::ostringstream os;
  CHECK(run_params(opt, common, os) == kExitOk);
  std::string out = os.str();
  CHECK(contains(out, "n,p_f,c,theta0,gamma,gamma_approx,zeta"));
  CHECK(contains(out, "320,0.05,1.6,0.109598"));
  CHECK(contains(out, ",44,44,0.02"));
  CHECK(contains(out, "config_hash"));
}

TEST_CASE("params in jsonl format carries a meta record") {
  ParamsOptions opt{1280, 0.05, 1.6};
  CommonOptions common;
  common.format = OutputFormat::Jsonl;
  std::ostringstream os;
  CHECK(run_params(opt, common, os) == kExitOk);
  std::string out = os.str();
  CHECK(contains(out, "\"command\":\"params\""));
  CHECK(contains(out, "\"gamma\":159"));
  CHECK(contains(out, "\"zeta\":0.59"));
}

TEST_CASE("identical configuration produces byte-identical output") {
  RocOptions opt;
  opt.n = 100;
  opt.alpha = 0.8;
  opt.pf_grid = {0.05, 0.1};
  CommonOptions common;
  common.trials = 2000;
  common.seed = 42;
  std::ostringstream a, b;
  CHECK(run_roc(opt, common, a) == kExitOk);
  CHECK(run_roc(opt, common, b) == kExitOk);
  CHECK(a.str() == b.str());
  CHECK_FALSE(a.str().empty());
}

TEST_CASE("roc rejects ambiguous variance specifications") {
  RocOptions opt;
  opt.n = 100;
  opt.pf_grid = {0.05};
  CommonOptions common;
  std::ostringstream os;
  CHECK_THROWS_AS(run_roc(opt, common, os), std::invalid_argument);
  opt.alpha = 0.8;
  opt.delta_var = 1.0;
  CHECK_THROWS_AS(run_roc(opt, common, os), std::invalid_argument);
}

TEST_CASE("dry runs skip simulation yet keep the theory column") {
  RocOptions opt;
  opt.n = 320;
  opt.delta_var = 1.0 / 6.0;
  opt.sigma0_sq = 6.0;
  opt.pf_grid = {0.05};
  CommonOptions common;
  common.dry_run = true;
  common.trials = 1000000000;  // would be prohibitive if actually run
  std::ostringstream os;
  CHECK(run_roc(opt, common, os) == kExitOk);
  CHECK(contains(os.str(), ",-,-,-"));
}

TEST_CASE("sweep-c reports an argmax note per alpha") {
  SweepCOptions opt;
  opt.n = 2560;
  opt.p_f = 0.05;
  opt.alphas = {0.9};
  opt.c_grid = parse_grid("0.2:0.2:4.0");
  CommonOptions common;
  std::ostringstream os;
  CHECK(run_sweep_c(opt, common, os) == kExitOk);
  CHECK(contains(os.str(), "argmax alpha=0.9"));
  CHECK(contains(os.str(), "c=1.6"));
}

TEST_CASE("sim-wsn dry run covers the snr x tau grid") {
  SimWsnOptions opt;
  opt.snr_db_grid = {-4.0, 8.0};
  opt.taus = {1, 4};
  CommonOptions common;
  common.dry_run = true;
  std::ostringstream os;
  CHECK(run_sim_wsn(opt, common, os) == kExitOk);
  std::string out = os.str();
  int rows = 0;
  for (std::size_t pos = 0; (pos = out.find("\n-4,", pos)) != std::string::npos; ++pos)
    ++rows;
  CHECK(rows == 2);
  CHECK(contains(out, "theory_exact"));
}

TEST_CASE("sim-mimo dry run theory matches the detector closed form") {
  SimMimoOptions opt;
  opt.scenario.m_antennas = 32;
  opt.scenario.k_users = 5;
  opt.scenario.tau = 5;
  opt.jammer_power_db_grid = {0.0};
  CommonOptions common;
  common.dry_run = true;
  std::ostringstream os;
  CHECK(run_sim_mimo(opt, common, os) == kExitOk);
  MimoScenario sc = opt.scenario;
  sc.jammer_power = 1.0;
  double expect = detection_probability(sc.observation_count(), 0.05, 1.6, sc.alpha());
  CHECK(contains(os.str(), format_number(expect)));
}

TEST_CASE("sim-bsc epsilon grid runs end to end") {
  SimBscOptions opt;
  opt.n = 100;
  opt.epsilon_grid = {0.0, 0.1};
  CommonOptions common;
  common.trials = 2000;
  common.seed = 3;
  std::ostringstream os;
  CHECK(run_sim_bsc(opt, common, os) == kExitOk);
  std::string out = os.str();
  CHECK(contains(out, "epsilon,theory_pd"));
  CHECK(contains(out, "\n0,"));
  CHECK(contains(out, "\n0.1,"));
  SimBscOptions bad = opt;
  bad.epsilon_grid.clear();
  CHECK_THROWS_AS(run_sim_bsc(bad, common, os), std::invalid_argument);
}
