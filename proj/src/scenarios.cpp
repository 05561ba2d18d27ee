#include "bdd/scenarios.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "bdd/baseline.hpp"
#include "bdd/numerics.hpp"
#include "bdd/quantizer.hpp"

namespace bdd {

namespace {

using cplx = std::complex<double>;

constexpr double kInvSqrt2 = 0.70710678118654752440;

cplx draw_cn01(TrialRng& rng) {
  // CN(0,1): unit variance per complex dimension.
  return {kInvSqrt2 * rng.normal(), kInvSqrt2 * rng.normal()};
}

cplx draw_qpsk(TrialRng& rng) {
  double re = rng.uniform() < 0.5 ? kInvSqrt2 : -kInvSqrt2;
  double im = rng.uniform() < 0.5 ? kInvSqrt2 : -kInvSqrt2;
  return {re, im};
}

// Orthogonal unit-modulus pilots: DFT rows, S[i][t] = exp(2 pi j i t / tau).
std::vector<cplx> dft_pilots(std::int64_t k, std::int64_t tau) {
  std::vector<cplx> s(static_cast<std::size_t>(k * tau));
  for (std::int64_t i = 0; i < k; ++i)
    for (std::int64_t t = 0; t < tau; ++t) {
      double phase = 2.0 * M_PI * static_cast<double>(i * t) / static_cast<double>(tau);
      s[static_cast<std::size_t>(i * tau + t)] = {std::cos(phase), std::sin(phase)};
    }
  return s;
}

// Fills the stacked real sequences for one trial. out0/out1 may be null
// when only one hypothesis branch is needed. The common stream feeds the
// user channels and noise, the jam stream everything jammer-side, so the
// H0 branch is unaffected by the jammer draws.
void simulate_mimo_into(const MimoScenario& sc, TrialRng& common, TrialRng& jam,
                        std::vector<double>* out0, std::vector<double>* out1) {
  const std::int64_t m = sc.m_antennas;
  const std::int64_t sym_per_block = sc.use_all_pilots ? sc.tau : 1;
  const std::int64_t cols = sc.n_blocks * sym_per_block;
  const std::int64_t n = 2 * m * cols;
  const std::size_t half = static_cast<std::size_t>(m * cols);
  if (out0) out0->resize(static_cast<std::size_t>(n));
  if (out1) out1->resize(static_cast<std::size_t>(n));

  static thread_local std::vector<cplx> pilots;
  static thread_local std::int64_t pilots_k = -1, pilots_tau = -1;
  if (sc.use_all_pilots && (pilots_k != sc.k_users || pilots_tau != sc.tau)) {
    pilots = dft_pilots(sc.k_users, sc.tau);
    pilots_k = sc.k_users;
    pilots_tau = sc.tau;
  }

  const double user_amp = std::sqrt(sc.user_power * sc.large_scale);
  const double jam_amp = std::sqrt(sc.jammer_power * sc.jammer_beta);
  const double noise_sd = std::sqrt(sc.noise_var);

  static thread_local std::vector<cplx> h, g, sj;
  h.resize(static_cast<std::size_t>(sc.k_users));
  g.resize(static_cast<std::size_t>(sc.jammer_antennas));
  sj.resize(static_cast<std::size_t>(sc.jammer_antennas * sym_per_block));

  for (std::int64_t b = 0; b < sc.n_blocks; ++b) {
    // Jammer pilots for this block: the single-antenna jammer spoofs the
    // first user's pilot; a multi-antenna jammer sends random QPSK.
    if (out1) {
      if (sc.jammer_antennas == 1) {
        for (std::int64_t t = 0; t < sym_per_block; ++t)
          sj[static_cast<std::size_t>(t)] =
              sc.use_all_pilots ? pilots[static_cast<std::size_t>(t)] : cplx{1.0, 0.0};
      } else {
        for (auto& v : sj) v = draw_qpsk(jam);
      }
    }
    for (std::int64_t mi = 0; mi < m; ++mi) {
      for (auto& v : h) v = draw_cn01(common);
      if (out1)
        for (auto& v : g) v = draw_cn01(jam);
      for (std::int64_t t = 0; t < sym_per_block; ++t) {
        cplx user_sum{0.0, 0.0};
        if (sc.use_all_pilots) {
          for (std::int64_t i = 0; i < sc.k_users; ++i)
            user_sum += h[static_cast<std::size_t>(i)] *
                        pilots[static_cast<std::size_t>(i * sc.tau + t)];
        } else {
          for (const cplx& hi : h) user_sum += hi;  // unit pilot symbol
        }
        cplx y0 = user_amp * user_sum + noise_sd * draw_cn01(common);
        const std::size_t idx = static_cast<std::size_t>((b * sym_per_block + t) * m + mi);
        if (out0) {
          (*out0)[idx] = y0.real();
          (*out0)[half + idx] = y0.imag();
        }
        if (out1) {
          cplx jam_sum{0.0, 0.0};
          for (std::int64_t j = 0; j < sc.jammer_antennas; ++j)
            jam_sum += g[static_cast<std::size_t>(j)] *
                       sj[static_cast<std::size_t>(j * sym_per_block + t)];
          cplx y1 = y0 + jam_amp * jam_sum;
          (*out1)[idx] = y1.real();
          (*out1)[half + idx] = y1.imag();
        }
      }
    }
  }
}

// Paired WSN sample generation; same layout as simulate_wsn_samples.
void simulate_wsn_into(const WsnScenario& sc, TrialRng& common,
                       std::vector<double>* out0, std::vector<double>* out1) {
  const std::size_t n = static_cast<std::size_t>(sc.observation_count());
  if (out0) out0->resize(n);
  if (out1) out1->resize(n);
  const double amp = std::sqrt(sc.snr);
  const cplx x{kInvSqrt2, kInvSqrt2};  // constant unit-modulus probe symbol
  const std::size_t tau = static_cast<std::size_t>(sc.tau);
  for (std::int64_t s = 0; s < sc.n_sensors; ++s) {
    const std::size_t base = static_cast<std::size_t>(s) * 2 * tau;
    cplx hs = draw_cn01(common);  // constant over the probe
    cplx sig = amp * hs * x;
    for (std::size_t t = 0; t < tau; ++t) {
      cplx w = draw_cn01(common);
      if (out0) {
        (*out0)[base + t] = w.real();
        (*out0)[base + tau + t] = w.imag();
      }
      if (out1) {
        (*out1)[base + t] = sig.real() + w.real();
        (*out1)[base + tau + t] = sig.imag() + w.imag();
      }
    }
  }
}

std::int64_t count_with_flips(const std::vector<double>& samples, double lambda,
                              double eps, TrialRng& flips) {
  std::int64_t count = 0;
  for (double v : samples) {
    int bit = std::fabs(v) > lambda ? 1 : 0;
    if (flips.uniform() < eps) bit ^= 1;
    count += bit;
  }
  return count;
}

double energy(const std::vector<double>& samples) {
  double e = 0.0;
  for (double v : samples) e += v * v;
  return e;
}

struct Counts {
  std::int64_t det0 = 0, det1 = 0, base0 = 0, base1 = 0;
};

}  // namespace

// ---------------------------------------------------------------------------
// Scenario validation and derived quantities
// ---------------------------------------------------------------------------

void GaussianScenario::validate() const {
  if (!(sigma0_sq > 0.0)) throw std::invalid_argument("gaussian: sigma0_sq must be > 0");
  if (!(delta_var >= 0.0)) throw std::invalid_argument("gaussian: delta_var must be >= 0");
  if (n < 1) throw std::invalid_argument("gaussian: n must be >= 1");
}

double GaussianScenario::alpha() const {
  return 1.0 / std::sqrt(1.0 + delta_var / sigma0_sq);
}

std::string GaussianScenario::descriptor() const {
  std::ostringstream os;
  os << "gaussian(n=" << n << ",sigma0_sq=" << sigma0_sq << ",delta_var=" << delta_var
     << ")";
  return os.str();
}

void MimoScenario::validate() const {
  if (m_antennas < 1) throw std::invalid_argument("mimo: m_antennas must be >= 1");
  if (n_blocks < 1) throw std::invalid_argument("mimo: n_blocks must be >= 1");
  if (k_users < 1) throw std::invalid_argument("mimo: k_users must be >= 1");
  if (tau < 1) throw std::invalid_argument("mimo: tau must be >= 1");
  if (!(user_power >= 0.0)) throw std::invalid_argument("mimo: user_power must be >= 0");
  if (!(large_scale > 0.0)) throw std::invalid_argument("mimo: large_scale must be > 0");
  if (!(jammer_power >= 0.0)) throw std::invalid_argument("mimo: jammer_power must be >= 0");
  if (!(jammer_beta > 0.0)) throw std::invalid_argument("mimo: jammer_beta must be > 0");
  if (jammer_antennas < 1) throw std::invalid_argument("mimo: jammer_antennas must be >= 1");
  if (!(noise_var > 0.0)) throw std::invalid_argument("mimo: noise_var must be > 0");
  if (use_all_pilots && k_users != tau)
    throw std::invalid_argument(
        "mimo: use_all_pilots requires k_users == tau (orthogonal pilots)");
}

double MimoScenario::sigma0_sq() const {
  return static_cast<double>(k_users) * user_power * large_scale + noise_var;
}

double MimoScenario::sigma1_sq() const {
  return sigma0_sq() +
         static_cast<double>(jammer_antennas) * jammer_power * jammer_beta;
}

double MimoScenario::alpha() const { return std::sqrt(sigma0_sq() / sigma1_sq()); }

std::int64_t MimoScenario::observation_count() const {
  return 2 * m_antennas * n_blocks * (use_all_pilots ? tau : 1);
}

std::string MimoScenario::descriptor() const {
  std::ostringstream os;
  os << "mimo(M=" << m_antennas << ",N=" << n_blocks << ",K=" << k_users
     << ",tau=" << tau << ",p_j=" << jammer_power << ",N_J=" << jammer_antennas
     << ",all_pilots=" << (use_all_pilots ? 1 : 0) << ")";
  return os.str();
}

void WsnScenario::validate() const {
  if (n_sensors < 1) throw std::invalid_argument("wsn: n_sensors must be >= 1");
  if (!(snr >= 0.0)) throw std::invalid_argument("wsn: snr must be >= 0");
  if (tau < 1) throw std::invalid_argument("wsn: tau must be >= 1");
}

double WsnScenario::alpha() const { return 1.0 / std::sqrt(1.0 + snr); }

std::string WsnScenario::descriptor() const {
  std::ostringstream os;
  os << "wsn(sensors=" << n_sensors << ",snr=" << snr << ",tau=" << tau << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

std::vector<double> generate_gaussian(const GaussianScenario& sc, Hypothesis hyp,
                                      TrialRng& rng) {
  sc.validate();
  const double sd = std::sqrt(hyp == Hypothesis::H0 ? sc.sigma0_sq : sc.sigma1_sq());
  std::vector<double> out(static_cast<std::size_t>(sc.n));
  for (double& v : out) v = sd * rng.normal();
  return out;
}

std::vector<double> simulate_mimo_block(const MimoScenario& sc, Hypothesis hyp,
                                        TrialRng& rng) {
  sc.validate();
  std::vector<double> out;
  if (hyp == Hypothesis::H0)
    simulate_mimo_into(sc, rng, rng, &out, nullptr);
  else
    simulate_mimo_into(sc, rng, rng, nullptr, &out);
  return out;
}

std::vector<double> simulate_wsn_samples(const WsnScenario& sc, Hypothesis hyp,
                                         TrialRng& rng) {
  sc.validate();
  std::vector<double> out;
  if (hyp == Hypothesis::H0)
    simulate_wsn_into(sc, rng, &out, nullptr);
  else
    simulate_wsn_into(sc, rng, nullptr, &out);
  return out;
}

std::vector<std::uint8_t> simulate_wsn_probe(const WsnScenario& sc, Hypothesis hyp,
                                             TrialRng& rng, double c) {
  // Each real dimension of the CN(0,1) noise has standard deviation
  // 1/sqrt(2); the sensors quantize against that null scale.
  const ComparatorConfig sensor_cfg(c, kInvSqrt2);
  std::vector<double> samples = simulate_wsn_samples(sc, hyp, rng);
  return quantize_block(samples, sensor_cfg);
}

// ---------------------------------------------------------------------------
// Monte-Carlo harness
// ---------------------------------------------------------------------------

TrialReport run_monte_carlo(const Scenario& scenario, const MonteCarloOptions& opt) {
  if (opt.trials < 1) throw std::invalid_argument("run_monte_carlo: trials must be >= 1");
  if (opt.bsc_epsilon && (*opt.bsc_epsilon < 0.0 || *opt.bsc_epsilon > 0.5))
    throw std::invalid_argument("run_monte_carlo: bsc epsilon must lie in [0, 0.5]");

  std::visit([](const auto& sc) { sc.validate(); }, scenario);

  const auto t_start = std::chrono::steady_clock::now();

  const std::int64_t n =
      std::visit([](const auto& sc) { return sc.observation_count(); }, scenario);
  const double alpha = std::visit([](const auto& sc) { return sc.alpha(); }, scenario);

  // Per-real-dimension variance under H0 and H1 of the stacked sequence.
  double var0_dim = 1.0, var1_dim = 1.0;
  bool exact = true;
  if (const auto* g = std::get_if<GaussianScenario>(&scenario)) {
    var0_dim = g->sigma0_sq;
    var1_dim = g->sigma1_sq();
  } else if (const auto* m = std::get_if<MimoScenario>(&scenario)) {
    var0_dim = 0.5 * m->sigma0_sq();
    var1_dim = 0.5 * m->sigma1_sq();
  } else if (const auto* w = std::get_if<WsnScenario>(&scenario)) {
    var0_dim = 0.5;
    var1_dim = 0.5 * w->sigma1_sq();
    exact = w->exact_iid();
  }
  (void)var1_dim;

  DetectorParams params =
      opt.bsc_epsilon
          ? DetectorParams::compute_with_theta0(
                n, opt.p_f, opt.c,
                bsc_success_rates(opt.c, 1.0, BscChannel(*opt.bsc_epsilon)).first)
          : DetectorParams::compute(n, opt.p_f, opt.c);
  const double lambda = opt.c * std::sqrt(var0_dim);

  std::optional<ChiSquareTestParams> baseline;
  if (opt.paired_baseline)
    baseline = ChiSquareTestParams{n, var0_dim * chi_square_inverse_cdf(1.0 - opt.p_f, n),
                                   2.0 * var0_dim};

  const double eps = opt.bsc_epsilon.value_or(0.0);
  const bool flips_enabled = opt.bsc_epsilon.has_value();

  auto run_range = [&](std::int64_t begin, std::int64_t end, Counts& acc) {
    std::vector<double> buf0, buf1;
    for (std::int64_t trial = begin; trial < end; ++trial) {
      TrialRng common(opt.seed, static_cast<std::uint64_t>(trial), 0);
      TrialRng jam(opt.seed, static_cast<std::uint64_t>(trial), 1);
      TrialRng aux(opt.seed, static_cast<std::uint64_t>(trial), 2);

      std::int64_t count0 = 0, count1 = 0;
      double e0 = 0.0, e1 = 0.0;

      if (const auto* g = std::get_if<GaussianScenario>(&scenario)) {
        if (!flips_enabled) {
          // Common random numbers: one standard-normal stream, both
          // hypotheses are deterministic scalings of it.
          const double c0 = opt.c;
          const double c1 = opt.c * g->alpha();
          double sumsq = 0.0;
          for (std::int64_t i = 0; i < n; ++i) {
            double z = common.normal();
            double az = std::fabs(z);
            count0 += az > c0;
            count1 += az > c1;
            sumsq += z * z;
          }
          e0 = g->sigma0_sq * sumsq;
          e1 = g->sigma1_sq() * sumsq;
        } else {
          const double sd0 = std::sqrt(g->sigma0_sq);
          const double sd1 = std::sqrt(g->sigma1_sq());
          buf0.resize(static_cast<std::size_t>(n));
          buf1.resize(static_cast<std::size_t>(n));
          for (std::int64_t i = 0; i < n; ++i) {
            double z = common.normal();
            buf0[static_cast<std::size_t>(i)] = sd0 * z;
            buf1[static_cast<std::size_t>(i)] = sd1 * z;
          }
          count0 = count_with_flips(buf0, lambda, eps, aux);
          count1 = count_with_flips(buf1, lambda, eps, aux);
          e0 = energy(buf0);
          e1 = energy(buf1);
        }
      } else if (const auto* m = std::get_if<MimoScenario>(&scenario)) {
        simulate_mimo_into(*m, common, jam, &buf0, &buf1);
        if (flips_enabled) {
          count0 = count_with_flips(buf0, lambda, eps, aux);
          count1 = count_with_flips(buf1, lambda, eps, aux);
        } else {
          count0 = quantize_count(buf0, ComparatorConfig(opt.c, std::sqrt(var0_dim)));
          count1 = quantize_count(buf1, ComparatorConfig(opt.c, std::sqrt(var0_dim)));
        }
        if (baseline) {
          e0 = energy(buf0);
          e1 = energy(buf1);
        }
      } else if (const auto* w = std::get_if<WsnScenario>(&scenario)) {
        simulate_wsn_into(*w, common, &buf0, &buf1);
        if (flips_enabled) {
          count0 = count_with_flips(buf0, lambda, eps, aux);
          count1 = count_with_flips(buf1, lambda, eps, aux);
        } else {
          count0 = quantize_count(buf0, ComparatorConfig(opt.c, std::sqrt(var0_dim)));
          count1 = quantize_count(buf1, ComparatorConfig(opt.c, std::sqrt(var0_dim)));
        }
        if (baseline) {
          e0 = energy(buf0);
          e1 = energy(buf1);
        }
      }

      // Tie-break uniforms are drawn unconditionally to keep the aux
      // stream aligned between branches.
      double u0 = aux.uniform();
      double u1 = aux.uniform();
      acc.det0 += decide_count(count0, params, u0).hypothesis == Hypothesis::H1;
      acc.det1 += decide_count(count1, params, u1).hypothesis == Hypothesis::H1;
      if (baseline) {
        acc.base0 += e0 > baseline->threshold;
        acc.base1 += e1 > baseline->threshold;
      }
    }
  };

  int threads = opt.threads > 0
                    ? opt.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  if (static_cast<std::int64_t>(threads) > opt.trials)
    threads = static_cast<int>(opt.trials);

  std::vector<Counts> partial(static_cast<std::size_t>(threads));
  if (threads == 1) {
    run_range(0, opt.trials, partial[0]);
  } else {
    std::vector<std::thread> pool;
    const std::int64_t chunk = (opt.trials + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
      std::int64_t begin = static_cast<std::int64_t>(w) * chunk;
      std::int64_t end = std::min<std::int64_t>(begin + chunk, opt.trials);
      if (begin >= end) break;
      pool.emplace_back([&, w, begin, end] { run_range(begin, end, partial[static_cast<std::size_t>(w)]); });
    }
    for (auto& t : pool) t.join();
  }
  Counts total;
  for (const Counts& c : partial) {
    total.det0 += c.det0;
    total.det1 += c.det1;
    total.base0 += c.base0;
    total.base1 += c.base1;
  }

  const double trials_d = static_cast<double>(opt.trials);
  auto ci = [&](double p) { return 3.0 * std::sqrt(p * (1.0 - p) / trials_d); };

  TrialReport rep;
  rep.descriptor = std::visit([](const auto& sc) { return sc.descriptor(); }, scenario);
  rep.seed = opt.seed;
  rep.trials = opt.trials;
  rep.empirical_pf = static_cast<double>(total.det0) / trials_d;
  rep.pf_ci = ci(rep.empirical_pf);
  rep.empirical_pd = static_cast<double>(total.det1) / trials_d;
  rep.pd_ci = ci(rep.empirical_pd);
  rep.theory_pd = opt.bsc_epsilon
                      ? detection_probability_bsc(n, opt.p_f, opt.c, alpha,
                                                  BscChannel(*opt.bsc_epsilon))
                      : detection_probability(n, opt.p_f, opt.c, alpha);
  rep.theory_exact = exact;
  if (baseline) {
    rep.baseline_pf = static_cast<double>(total.base0) / trials_d;
    rep.baseline_pd = static_cast<double>(total.base1) / trials_d;
  }
  rep.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return rep;
}

}  // namespace bdd
