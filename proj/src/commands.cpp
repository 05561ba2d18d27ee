#include "bdd/commands.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "bdd/baseline.hpp"
#include "bdd/detector.hpp"
#include "bdd/numerics.hpp"
#include "bdd/quantizer.hpp"

namespace bdd::cli {

namespace {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

using Meta = std::vector<std::pair<std::string, std::string>>;

void add_common_meta(Meta& meta, const std::string& command,
                     const CommonOptions& common) {
  meta.emplace_back("tool", "bddetect");
  meta.emplace_back("command", command);
  meta.emplace_back("seed", std::to_string(common.seed));
  meta.emplace_back("trials", std::to_string(common.trials));
}

void finish_meta(Meta& meta) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "0x%016llx",
                static_cast<unsigned long long>(config_hash(meta)));
  meta.emplace_back("config_hash", buf);
}

std::string fmt(double v) { return format_number(v); }

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  if (text.empty()) throw std::invalid_argument("empty grid specification");
  const auto colon1 = text.find(':');
  if (colon1 != std::string::npos) {
    const auto colon2 = text.find(':', colon1 + 1);
    if (colon2 == std::string::npos)
      throw std::invalid_argument("range grid must be lo:step:hi: " + text);
    double lo = std::stod(text.substr(0, colon1));
    double step = std::stod(text.substr(colon1 + 1, colon2 - colon1 - 1));
    double hi = std::stod(text.substr(colon2 + 1));
    if (!(step > 0.0)) throw std::invalid_argument("grid step must be > 0");
    for (double v = lo; v <= hi + 0.5 * step; v += step) out.push_back(v);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  if (out.empty()) throw std::invalid_argument("empty grid specification");
  return out;
}

int run_params(const ParamsOptions& opt, const CommonOptions& common,
               std::ostream& os) {
  DetectorParams p = DetectorParams::compute(opt.n, opt.p_f, opt.c);
  std::int64_t gamma_approx = approx_threshold(opt.n, opt.p_f, opt.c);

  Meta meta;
  add_common_meta(meta, "params", common);
  meta.emplace_back("n", std::to_string(opt.n));
  meta.emplace_back("p_f", fmt(opt.p_f));
  meta.emplace_back("c", fmt(opt.c));
  finish_meta(meta);

  TableWriter table(os, common.format,
                    {"n", "p_f", "c", "theta0", "gamma", "gamma_approx", "zeta"},
                    meta);
  table.row({p.n, p.p_f, p.c, p.theta0, p.gamma, gamma_approx, p.zeta});
  return kExitOk;
}

int run_roc(const RocOptions& opt, const CommonOptions& common, std::ostream& os) {
  if (opt.alpha.has_value() == opt.delta_var.has_value())
    throw std::invalid_argument("roc: give exactly one of alpha or delta_var");
  if (opt.pf_grid.empty()) throw std::invalid_argument("roc: empty p_f grid");
  double delta_var =
      opt.delta_var ? *opt.delta_var
                    : opt.sigma0_sq * (1.0 / (*opt.alpha * *opt.alpha) - 1.0);
  GaussianScenario sc{opt.sigma0_sq, delta_var, opt.n};
  sc.validate();

  Meta meta;
  add_common_meta(meta, "roc", common);
  meta.emplace_back("scenario", sc.descriptor());
  meta.emplace_back("c", fmt(opt.c));
  meta.emplace_back("alpha", fmt(sc.alpha()));
  finish_meta(meta);

  std::vector<std::string> cols = {"p_f", "theory_pd", "empirical_pf",
                                   "empirical_pd", "pd_ci"};
  if (common.paired_baseline) {
    cols.push_back("baseline_pf");
    cols.push_back("baseline_pd");
  }
  TableWriter table(os, common.format, cols, meta);

  for (double pf : opt.pf_grid) {
    double theory = detection_probability(opt.n, pf, opt.c, sc.alpha());
    if (common.dry_run) {
      table.row({pf, theory, std::string("-"), std::string("-"), std::string("-")});
      continue;
    }
    MonteCarloOptions mc{pf, opt.c, common.trials, common.seed,
                         common.paired_baseline, std::nullopt, common.threads};
    TrialReport rep = run_monte_carlo(sc, mc);
    std::vector<Cell> row = {pf, theory, rep.empirical_pf, rep.empirical_pd,
                             rep.pd_ci};
    if (common.paired_baseline) {
      row.emplace_back(rep.baseline_pf.value_or(0.0));
      row.emplace_back(rep.baseline_pd.value_or(0.0));
    }
    table.row(row);
  }
  return kExitOk;
}

int run_sweep_c(const SweepCOptions& opt, const CommonOptions& common,
                std::ostream& os) {
  if (opt.alphas.empty()) throw std::invalid_argument("sweep-c: empty alpha list");
  if (opt.c_grid.empty()) throw std::invalid_argument("sweep-c: empty c grid");

  Meta meta;
  add_common_meta(meta, "sweep-c", common);
  meta.emplace_back("n", std::to_string(opt.n));
  meta.emplace_back("p_f", fmt(opt.p_f));
  finish_meta(meta);

  TableWriter table(os, common.format, {"alpha", "c", "pd"}, meta);
  for (double alpha : opt.alphas) {
    double best_c = opt.c_grid.front();
    double best_pd = -1.0;
    for (double c : opt.c_grid) {
      double pd = detection_probability(opt.n, opt.p_f, c, alpha);
      table.row({alpha, c, pd});
      if (pd > best_pd) {
        best_pd = pd;
        best_c = c;
      }
    }
    std::ostringstream key;
    key << "argmax alpha=" << fmt(alpha);
    table.note(key.str(), "c=" + fmt(best_c) + " pd=" + fmt(best_pd));
  }
  return kExitOk;
}

int run_sim_mimo(const SimMimoOptions& opt, const CommonOptions& common,
                 std::ostream& os) {
  if (opt.jammer_power_db_grid.empty())
    throw std::invalid_argument("sim-mimo: empty jammer power grid");
  MimoScenario base = opt.scenario;
  base.jammer_power = 0.0;
  base.validate();

  Meta meta;
  add_common_meta(meta, "sim-mimo", common);
  meta.emplace_back("scenario", base.descriptor());
  meta.emplace_back("p_f", fmt(opt.p_f));
  meta.emplace_back("c", fmt(opt.c));
  finish_meta(meta);

  std::vector<std::string> cols = {"jammer_power_db", "n",           "alpha",
                                   "theory_pd",       "empirical_pf", "empirical_pd",
                                   "pd_ci"};
  if (common.paired_baseline) {
    cols.push_back("baseline_pf");
    cols.push_back("baseline_pd");
    cols.push_back("gap");
  }
  TableWriter table(os, common.format, cols, meta);

  for (double pj_db : opt.jammer_power_db_grid) {
    MimoScenario sc = base;
    sc.jammer_power = db_to_linear(pj_db);
    sc.validate();
    double theory = detection_probability(sc.observation_count(), opt.p_f, opt.c,
                                          sc.alpha());
    if (common.dry_run) {
      table.row({pj_db, sc.observation_count(), sc.alpha(), theory,
                 std::string("-"), std::string("-"), std::string("-")});
      continue;
    }
    MonteCarloOptions mc{opt.p_f, opt.c, common.trials, common.seed,
                         common.paired_baseline, std::nullopt, common.threads};
    TrialReport rep = run_monte_carlo(sc, mc);
    std::vector<Cell> row = {pj_db,          sc.observation_count(), sc.alpha(),
                             theory,         rep.empirical_pf,       rep.empirical_pd,
                             rep.pd_ci};
    if (common.paired_baseline) {
      double bpf = rep.baseline_pf.value_or(0.0);
      double bpd = rep.baseline_pd.value_or(0.0);
      row.emplace_back(bpf);
      row.emplace_back(bpd);
      row.emplace_back(bpd - rep.empirical_pd);
    }
    table.row(row);
  }
  return kExitOk;
}

int run_sim_wsn(const SimWsnOptions& opt, const CommonOptions& common,
                std::ostream& os) {
  if (opt.snr_db_grid.empty()) throw std::invalid_argument("sim-wsn: empty SNR grid");
  if (opt.taus.empty()) throw std::invalid_argument("sim-wsn: empty tau list");

  Meta meta;
  add_common_meta(meta, "sim-wsn", common);
  meta.emplace_back("n_sensors", std::to_string(opt.n_sensors));
  meta.emplace_back("p_f", fmt(opt.p_f));
  meta.emplace_back("c", fmt(opt.c));
  finish_meta(meta);

  std::vector<std::string> cols = {"snr_db",    "tau",          "n",
                                   "theory_pd", "theory_exact", "empirical_pf",
                                   "empirical_pd", "pd_ci"};
  if (common.paired_baseline) {
    cols.push_back("baseline_pf");
    cols.push_back("baseline_pd");
  }
  TableWriter table(os, common.format, cols, meta);

  for (double snr_db : opt.snr_db_grid) {
    for (std::int64_t tau : opt.taus) {
      WsnScenario sc{opt.n_sensors, db_to_linear(snr_db), tau};
      sc.validate();
      double theory = detection_probability(sc.observation_count(), opt.p_f, opt.c,
                                            sc.alpha());
      if (common.dry_run) {
        table.row({snr_db, tau, sc.observation_count(), theory,
                   static_cast<std::int64_t>(sc.exact_iid()), std::string("-"),
                   std::string("-"), std::string("-")});
        continue;
      }
      MonteCarloOptions mc{opt.p_f, opt.c, common.trials, common.seed,
                           common.paired_baseline, std::nullopt, common.threads};
      TrialReport rep = run_monte_carlo(sc, mc);
      std::vector<Cell> row = {snr_db,
                               tau,
                               sc.observation_count(),
                               theory,
                               static_cast<std::int64_t>(sc.exact_iid()),
                               rep.empirical_pf,
                               rep.empirical_pd,
                               rep.pd_ci};
      if (common.paired_baseline) {
        row.emplace_back(rep.baseline_pf.value_or(0.0));
        row.emplace_back(rep.baseline_pd.value_or(0.0));
      }
      table.row(row);
    }
  }
  return kExitOk;
}

int run_sim_bsc(const SimBscOptions& opt, const CommonOptions& common,
                std::ostream& os) {
  if (opt.epsilon_grid.empty())
    throw std::invalid_argument("sim-bsc: empty epsilon grid");
  GaussianScenario sc{opt.sigma0_sq, opt.delta_var, opt.n};
  sc.validate();

  Meta meta;
  add_common_meta(meta, "sim-bsc", common);
  meta.emplace_back("scenario", sc.descriptor());
  meta.emplace_back("p_f", fmt(opt.p_f));
  meta.emplace_back("c", fmt(opt.c));
  finish_meta(meta);

  TableWriter table(os, common.format,
                    {"epsilon", "theory_pd", "empirical_pf", "empirical_pd", "pd_ci"},
                    meta);
  for (double eps : opt.epsilon_grid) {
    double theory = detection_probability_bsc(opt.n, opt.p_f, opt.c, sc.alpha(),
                                              BscChannel(eps));
    if (common.dry_run) {
      table.row({eps, theory, std::string("-"), std::string("-"), std::string("-")});
      continue;
    }
    MonteCarloOptions mc{opt.p_f, opt.c,       common.trials, common.seed,
                         false,   std::optional<double>(eps), common.threads};
    TrialReport rep = run_monte_carlo(sc, mc);
    table.row({eps, theory, rep.empirical_pf, rep.empirical_pd, rep.pd_ci});
  }
  return kExitOk;
}

}  // namespace bdd::cli
