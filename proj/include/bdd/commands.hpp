#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bdd/scenarios.hpp"
#include "bdd/table.hpp"

namespace bdd::cli {

/// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalError = 3;

struct CommonOptions {
  std::uint64_t seed = 0;
  std::int64_t trials = 10000;
  OutputFormat format = OutputFormat::Csv;
  bool paired_baseline = false;
  bool dry_run = false;
  int threads = 0;
};

/// Parses "lo:step:hi" ranges or comma-separated lists of numbers.
std::vector<double> parse_grid(const std::string& text);

struct ParamsOptions {
  std::int64_t n = 0;
  double p_f = 0.05;
  double c = 1.6;
};
int run_params(const ParamsOptions& opt, const CommonOptions& common,
               std::ostream& os);

struct RocOptions {
  std::int64_t n = 0;
  double c = 1.6;
  double sigma0_sq = 1.0;
  std::optional<double> alpha;      ///< exactly one of alpha / delta_var
  std::optional<double> delta_var;
  std::vector<double> pf_grid;
};
int run_roc(const RocOptions& opt, const CommonOptions& common, std::ostream& os);

struct SweepCOptions {
  std::int64_t n = 0;
  double p_f = 0.05;
  std::vector<double> alphas;
  std::vector<double> c_grid;
};
int run_sweep_c(const SweepCOptions& opt, const CommonOptions& common,
                std::ostream& os);

struct SimMimoOptions {
  MimoScenario scenario;  ///< jammer_power is taken from the grid
  double p_f = 0.05;
  double c = 1.6;
  std::vector<double> jammer_power_db_grid;
};
int run_sim_mimo(const SimMimoOptions& opt, const CommonOptions& common,
                 std::ostream& os);

struct SimWsnOptions {
  std::int64_t n_sensors = 20;
  double p_f = 0.05;
  double c = 1.6;
  std::vector<double> snr_db_grid;
  std::vector<std::int64_t> taus;
};
int run_sim_wsn(const SimWsnOptions& opt, const CommonOptions& common,
                std::ostream& os);

struct SimBscOptions {
  std::int64_t n = 0;
  double p_f = 0.05;
  double c = 1.6;
  double delta_var = 1.0;
  double sigma0_sq = 1.0;
  std::vector<double> epsilon_grid;
};
int run_sim_bsc(const SimBscOptions& opt, const CommonOptions& common,
                std::ostream& os);

}  // namespace bdd::cli
