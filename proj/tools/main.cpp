#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "bdd/commands.hpp"
#include "bdd/errors.hpp"

namespace {

using namespace bdd;
using namespace bdd::cli;

struct OutputTarget {
  std::unique_ptr<std::ofstream> file;
  std::ostream* stream = &std::cout;

  void open(const std::string& path) {
    if (path.empty()) return;
    file = std::make_unique<std::ofstream>(path);
    if (!*file) throw std::invalid_argument("cannot open output file: " + path);
    stream = file.get();
  }
};

void add_common(CLI::App* cmd, CommonOptions& common, std::string& out_path,
                std::string& format) {
  cmd->add_option("--seed", common.seed, "master RNG seed");
  cmd->add_option("--trials", common.trials, "Monte-Carlo trials per grid point");
  cmd->add_option("--out", out_path, "output file (default: stdout)");
  cmd->add_option("--format", format, "output format: csv|jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  cmd->add_flag("--paired-baseline", common.paired_baseline,
                "run the unquantized chi-square baseline on the same samples");
  cmd->add_flag("--dry-run", common.dry_run,
                "validate the configuration, print resolved parameters, run no trials");
  cmd->add_option("--threads", common.threads, "worker threads (default: all cores)");
  cmd->set_config("--config", "", "key=value configuration file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Window-comparator quantization and bit-density detection toolkit"};
  app.require_subcommand(1);

  CommonOptions common;
  std::string out_path, format = "csv";

  // params
  ParamsOptions params_opt;
  auto* cmd_params = app.add_subcommand("params", "compute gamma, zeta, theta0");
  cmd_params->add_option("--n", params_opt.n, "number of binary observations")->required();
  cmd_params->add_option("--pf", params_opt.p_f, "target false-alarm probability");
  cmd_params->add_option("--c", params_opt.c, "window parameter");
  add_common(cmd_params, common, out_path, format);

  // roc
  RocOptions roc_opt;
  std::string roc_pf_grid = "0.01:0.01:0.2";
  double roc_alpha = -1.0, roc_delta_var = -1.0;
  auto* cmd_roc = app.add_subcommand("roc", "theory and simulated P_D over a P_F grid");
  cmd_roc->add_option("--n", roc_opt.n, "observations per trial")->required();
  cmd_roc->add_option("--c", roc_opt.c, "window parameter");
  cmd_roc->add_option("--sigma0-sq", roc_opt.sigma0_sq, "null variance");
  cmd_roc->add_option("--alpha", roc_alpha, "variance ratio sigma0/sigma1");
  cmd_roc->add_option("--delta-var", roc_delta_var, "variance increase under H1");
  cmd_roc->add_option("--pf-grid", roc_pf_grid, "P_F grid, lo:step:hi or list");
  add_common(cmd_roc, common, out_path, format);

  // sweep-c
  SweepCOptions sweep_opt;
  std::string sweep_alphas = "0.8,0.85,0.9", sweep_c_grid = "0.1:0.05:4";
  auto* cmd_sweep = app.add_subcommand("sweep-c", "P_D surface over the window parameter");
  cmd_sweep->add_option("--n", sweep_opt.n, "observations per trial")->required();
  cmd_sweep->add_option("--pf", sweep_opt.p_f, "target false-alarm probability");
  cmd_sweep->add_option("--alpha", sweep_alphas, "alpha list");
  cmd_sweep->add_option("--c-grid", sweep_c_grid, "c grid, lo:step:hi or list");
  add_common(cmd_sweep, common, out_path, format);

  // sim-mimo
  SimMimoOptions mimo_opt;
  std::string mimo_pj_grid = "-6:1:4";
  double mimo_user_power_db = 0.0;
  auto* cmd_mimo = app.add_subcommand("sim-mimo", "jamming detection in massive MIMO");
  cmd_mimo->add_option("--m", mimo_opt.scenario.m_antennas, "BS antennas")->required();
  cmd_mimo->add_option("--blocks", mimo_opt.scenario.n_blocks, "coherence blocks");
  cmd_mimo->add_option("--k", mimo_opt.scenario.k_users, "users")->required();
  cmd_mimo->add_option("--tau", mimo_opt.scenario.tau, "pilot length")->required();
  cmd_mimo->add_option("--user-power-db", mimo_user_power_db, "per-user power, dB");
  cmd_mimo->add_option("--beta", mimo_opt.scenario.large_scale, "user large-scale gain");
  cmd_mimo->add_option("--jammer-beta", mimo_opt.scenario.jammer_beta,
                       "jammer large-scale gain");
  cmd_mimo->add_option("--jammer-antennas", mimo_opt.scenario.jammer_antennas,
                       "jammer antennas N_J");
  cmd_mimo->add_option("--noise-var", mimo_opt.scenario.noise_var, "noise variance");
  bool mimo_one_symbol = false;
  cmd_mimo->add_flag("--one-symbol-per-block", mimo_one_symbol,
                     "use one pilot symbol per coherence block");
  cmd_mimo->add_option("--pj-db-grid", mimo_pj_grid, "jammer power grid in dB");
  cmd_mimo->add_option("--pf", mimo_opt.p_f, "target false-alarm probability");
  cmd_mimo->add_option("--c", mimo_opt.c, "window parameter");
  add_common(cmd_mimo, common, out_path, format);

  // sim-wsn
  SimWsnOptions wsn_opt;
  std::string wsn_snr_grid = "-4", wsn_taus = "1,2,4";
  auto* cmd_wsn = app.add_subcommand("sim-wsn", "low-power transmitter probing in a WSN");
  cmd_wsn->add_option("--sensors", wsn_opt.n_sensors, "number of sensors");
  cmd_wsn->add_option("--snr-db-grid", wsn_snr_grid, "SNR grid in dB");
  cmd_wsn->add_option("--tau", wsn_taus, "probe lengths, list");
  cmd_wsn->add_option("--pf", wsn_opt.p_f, "target false-alarm probability");
  cmd_wsn->add_option("--c", wsn_opt.c, "window parameter");
  add_common(cmd_wsn, common, out_path, format);

  // sim-bsc
  SimBscOptions bsc_opt;
  std::string bsc_eps_grid = "0,0.05,0.1,0.2";
  auto* cmd_bsc = app.add_subcommand("sim-bsc",
                                     "detection with bits degraded by a BSC link");
  cmd_bsc->add_option("--n", bsc_opt.n, "observations per trial")->required();
  cmd_bsc->add_option("--pf", bsc_opt.p_f, "target false-alarm probability");
  cmd_bsc->add_option("--c", bsc_opt.c, "window parameter");
  cmd_bsc->add_option("--delta-var", bsc_opt.delta_var, "variance increase under H1");
  cmd_bsc->add_option("--sigma0-sq", bsc_opt.sigma0_sq, "null variance");
  cmd_bsc->add_option("--epsilon-grid", bsc_eps_grid, "crossover grid");
  add_common(cmd_bsc, common, out_path, format);

  CLI11_PARSE(app, argc, argv);

  try {
    common.format = (format == "jsonl") ? OutputFormat::Jsonl : OutputFormat::Csv;
    OutputTarget target;
    target.open(out_path);
    std::ostream& os = *target.stream;

    if (cmd_params->parsed()) return run_params(params_opt, common, os);
    if (cmd_roc->parsed()) {
      if (roc_alpha > 0.0) roc_opt.alpha = roc_alpha;
      if (roc_delta_var >= 0.0) roc_opt.delta_var = roc_delta_var;
      roc_opt.pf_grid = parse_grid(roc_pf_grid);
      return run_roc(roc_opt, common, os);
    }
    if (cmd_sweep->parsed()) {
      sweep_opt.alphas = parse_grid(sweep_alphas);
      sweep_opt.c_grid = parse_grid(sweep_c_grid);
      return run_sweep_c(sweep_opt, common, os);
    }
    if (cmd_mimo->parsed()) {
      mimo_opt.scenario.use_all_pilots = !mimo_one_symbol;
      mimo_opt.scenario.user_power = std::pow(10.0, mimo_user_power_db / 10.0);
      mimo_opt.jammer_power_db_grid = parse_grid(mimo_pj_grid);
      return run_sim_mimo(mimo_opt, common, os);
    }
    if (cmd_wsn->parsed()) {
      wsn_opt.snr_db_grid = parse_grid(wsn_snr_grid);
      for (double t : parse_grid(wsn_taus))
        wsn_opt.taus.push_back(static_cast<std::int64_t>(t));
      return run_sim_wsn(wsn_opt, common, os);
    }
    if (cmd_bsc->parsed()) {
      bsc_opt.epsilon_grid = parse_grid(bsc_eps_grid);
      return run_sim_bsc(bsc_opt, common, os);
    }
    return kExitConfigError;
  } catch (const bdd::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumericalError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}
