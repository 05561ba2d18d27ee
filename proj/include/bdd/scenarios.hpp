#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bdd/detector.hpp"
#include "bdd/rng.hpp"

namespace bdd {

/// Two zero-mean Gaussian processes differing only in variance:
/// sigma1^2 = sigma0^2 + delta_var. Real-valued model.
struct GaussianScenario {
  double sigma0_sq = 1.0;
  double delta_var = 0.0;
  std::int64_t n = 0;

  void validate() const;
  double sigma1_sq() const { return sigma0_sq + delta_var; }
  double alpha() const;
  std::int64_t observation_count() const { return n; }
  std::string descriptor() const;
};

/// Uplink training phase of a single-cell multiuser MIMO system with an
/// optional jammer. Complex model; the observed sequence is the stacked
/// real and imaginary parts of the received pilot block(s).
struct MimoScenario {
  std::int64_t m_antennas = 0;      ///< M
  std::int64_t n_blocks = 1;        ///< N independent coherence blocks
  std::int64_t k_users = 0;         ///< K
  std::int64_t tau = 0;             ///< pilot length
  double user_power = 1.0;          ///< p_i, linear, common to all users
  double large_scale = 1.0;         ///< beta_i, common to all users
  double jammer_power = 0.0;        ///< p_J, linear, per jammer antenna
  double jammer_beta = 1.0;         ///< beta_J
  std::int64_t jammer_antennas = 1; ///< N_J
  double noise_var = 1.0;           ///< sigma_w^2
  bool use_all_pilots = true;       ///< needs K == tau (orthogonal pilots)

  void validate() const;
  double sigma0_sq() const;
  double sigma1_sq() const;
  double alpha() const;
  std::int64_t observation_count() const;
  std::string descriptor() const;
};

/// Sensors observing a low-power transmitter over Rayleigh channels that
/// stay constant across the tau probe symbols. Complex model; each
/// sensor quantizes the real and imaginary parts locally.
struct WsnScenario {
  std::int64_t n_sensors = 0;
  double snr = 0.0;      ///< average received SNR per complex symbol, linear
  std::int64_t tau = 1;  ///< symbols per probe

  void validate() const;
  double sigma1_sq() const { return 1.0 + snr; }
  double alpha() const;
  std::int64_t observation_count() const { return n_sensors * 2 * tau; }
  /// i.i.d. Bernoulli model is exact only for tau = 1; for tau > 1 the
  /// shared channel across symbols introduces intra-probe correlation.
  bool exact_iid() const { return tau == 1; }
  std::string descriptor() const;
};

using Scenario = std::variant<GaussianScenario, MimoScenario, WsnScenario>;

struct MonteCarloOptions {
  double p_f = 0.05;
  double c = 1.6;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  bool paired_baseline = false;
  std::optional<double> bsc_epsilon;  ///< flip sensor bits with this rate
  int threads = 0;                    ///< <= 0 means hardware concurrency
};

/// Aggregated result of one Monte-Carlo experiment. CI fields are the
/// half-width of the 3-sigma binomial interval around the estimate.
struct TrialReport {
  std::string descriptor;
  std::uint64_t seed = 0;
  std::int64_t trials = 0;
  double empirical_pf = 0.0;
  double pf_ci = 0.0;
  double empirical_pd = 0.0;
  double pd_ci = 0.0;
  std::optional<double> theory_pd;
  bool theory_exact = false;
  std::optional<double> baseline_pf;
  std::optional<double> baseline_pd;
  double wall_time_s = 0.0;
};

/// n i.i.d. draws with the hypothesis-matched variance.
std::vector<double> generate_gaussian(const GaussianScenario& sc, Hypothesis hyp,
                                      TrialRng& rng);

/// Fresh Rayleigh channels per coherence block, received pilot symbols,
/// stacked as the real block followed by the imaginary block
/// (column-major over blocks). Entries are i.i.d. N(0, sigma^2/2) under
/// the matching hypothesis.
std::vector<double> simulate_mimo_block(const MimoScenario& sc, Hypothesis hyp,
                                        TrialRng& rng);

/// Per-sensor independent channels and noise; each sensor quantizes its
/// tau complex observations locally (real parts first, then imaginary)
/// with window parameter c, bits concatenated in sensor-major order.
std::vector<std::uint8_t> simulate_wsn_probe(const WsnScenario& sc, Hypothesis hyp,
                                             TrialRng& rng, double c = 1.6);

/// Unquantized counterpart of simulate_wsn_probe: the stacked real
/// samples the sensors would have quantized, in the same order.
std::vector<double> simulate_wsn_samples(const WsnScenario& sc, Hypothesis hyp,
                                         TrialRng& rng);

/// Runs both hypothesis branches over `trials` paired trials.
/// Deterministic given (scenario, options): every trial derives its
/// random stream from (seed, trial index), the H0/H1 branches share the
/// common channel and noise draws, and the unquantized baseline (when
/// enabled) consumes the same sample streams.
TrialReport run_monte_carlo(const Scenario& scenario, const MonteCarloOptions& opt);

}  // namespace bdd
