#include "bdd/detector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bdd/errors.hpp"
#include "bdd/numerics.hpp"
#include "bdd/quantizer.hpp"

namespace bdd {

namespace {

void validate_pf(double p_f) {
  if (!(p_f > 0.0 && p_f < 1.0))
    throw std::invalid_argument("p_f must lie strictly in (0,1)");
}

void validate_n(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
}

void validate_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("alpha must lie in (0,1]");
}

// Rule evaluated against arbitrary success rates; shared by the clean
// and BSC paths. gamma derives from theta0, the returned value is
// P(S_n > gamma | theta1) + zeta * P(S_n = gamma | theta1).
double randomized_power(std::int64_t n, double p_f, double theta0, double theta1) {
  const std::int64_t gamma = binomial_inverse_cdf(1.0 - p_f, n, theta0);
  const double pmf0 = binomial_pmf(gamma, n, theta0);
  if (!(pmf0 > 0.0))
    throw NumericalError("randomized_power: zero pmf at the computed threshold");
  const double zeta = (p_f - binomial_sf(gamma, n, theta0)) / pmf0;
  const double pd = binomial_sf(gamma, n, theta1) + zeta * binomial_pmf(gamma, n, theta1);
  return std::clamp(pd, 0.0, 1.0);
}

}  // namespace

BscChannel::BscChannel(double eps) : epsilon(eps) {
  if (!(epsilon >= 0.0 && epsilon <= 0.5))
    throw std::invalid_argument("BscChannel: epsilon must lie in [0, 0.5]");
}

std::int64_t compute_threshold(std::int64_t n, double p_f, double c) {
  validate_n(n);
  validate_pf(p_f);
  if (!(c > 0.0))
    throw std::invalid_argument("compute_threshold: c must be > 0 (degenerate window)");
  return binomial_inverse_cdf(1.0 - p_f, n, null_success_rate(c));
}

std::int64_t approx_threshold(std::int64_t n, double p_f, double c) {
  validate_n(n);
  validate_pf(p_f);
  const double qc = q_function(c);
  const double nd = static_cast<double>(n);
  const double value =
      std::sqrt(2.0 * nd * qc * (1.0 - 2.0 * qc)) * q_inverse(p_f) + 2.0 * nd * qc;
  return static_cast<std::int64_t>(std::floor(value));
}

double compute_zeta(std::int64_t n, double p_f, double c, std::int64_t gamma) {
  validate_n(n);
  validate_pf(p_f);
  const double theta0 = null_success_rate(c);
  const double pmf = binomial_pmf(gamma, n, theta0);
  if (!(pmf > 0.0))
    throw NumericalError("compute_zeta: pmf vanishes at gamma; threshold inconsistent");
  const double zeta = (p_f - binomial_sf(gamma, n, theta0)) / pmf;
  if (zeta < -1e-9 || zeta > 1.0 + 1e-9)
    throw NumericalError("compute_zeta: result escapes [0,1]; threshold inconsistent");
  return std::clamp(zeta, 0.0, 1.0);
}

DetectorParams DetectorParams::compute(std::int64_t n, double p_f, double c) {
  const std::int64_t gamma = compute_threshold(n, p_f, c);
  return DetectorParams{n, p_f, c, gamma, compute_zeta(n, p_f, c, gamma),
                        null_success_rate(c)};
}

DetectorParams DetectorParams::compute_with_theta0(std::int64_t n, double p_f,
                                                   double c, double theta0) {
  validate_n(n);
  validate_pf(p_f);
  const std::int64_t gamma = binomial_inverse_cdf(1.0 - p_f, n, theta0);
  const double pmf = binomial_pmf(gamma, n, theta0);
  if (!(pmf > 0.0))
    throw NumericalError("DetectorParams: pmf vanishes at gamma");
  const double zeta =
      std::clamp((p_f - binomial_sf(gamma, n, theta0)) / pmf, 0.0, 1.0);
  return DetectorParams{n, p_f, c, gamma, zeta, theta0};
}

Decision decide_count(std::int64_t count, const DetectorParams& params,
                      double tie_uniform) {
  if (count < 0 || count > params.n)
    throw std::invalid_argument("decide_count: count outside [0, n]");
  if (count > params.gamma) return {Hypothesis::H1, false};
  if (count < params.gamma) return {Hypothesis::H0, false};
  return {tie_uniform < params.zeta ? Hypothesis::H1 : Hypothesis::H0, true};
}

Decision decide(std::span<const std::uint8_t> bits, const DetectorParams& params,
                TrialRng& rng) {
  if (static_cast<std::int64_t>(bits.size()) != params.n)
    throw std::invalid_argument("decide: bit sequence length does not match n");
  std::int64_t count = 0;
  for (std::uint8_t b : bits) count += (b != 0);
  if (count == params.gamma) return decide_count(count, params, rng.uniform());
  return decide_count(count, params, 0.0);
}

double detection_probability(std::int64_t n, double p_f, double c, double alpha) {
  validate_n(n);
  validate_pf(p_f);
  validate_alpha(alpha);
  if (!(c > 0.0)) throw std::invalid_argument("detection_probability: c must be > 0");
  const double theta0 = null_success_rate(c);
  const double theta1 = alt_success_rate(c, VarianceRatio(alpha));
  return randomized_power(n, p_f, theta0, theta1);
}

double detection_probability_limit_c(double p_f) {
  validate_pf(p_f);
  return p_f;
}

std::pair<double, double> bsc_success_rates(double c, double alpha,
                                            const BscChannel& ch) {
  validate_alpha(alpha);
  const double theta0 = null_success_rate(c);
  const double theta1 = alt_success_rate(c, VarianceRatio(alpha));
  const double e = ch.epsilon;
  return {e * (1.0 - theta0) + (1.0 - e) * theta0,
          e * (1.0 - theta1) + (1.0 - e) * theta1};
}

double detection_probability_bsc(std::int64_t n, double p_f, double c, double alpha,
                                 const BscChannel& ch) {
  validate_n(n);
  validate_pf(p_f);
  auto [theta0p, theta1p] = bsc_success_rates(c, alpha, ch);
  return randomized_power(n, p_f, theta0p, theta1p);
}

double optimal_c(std::int64_t n, double p_f, double alpha,
                 std::span<const double> grid) {
  if (grid.empty()) throw std::invalid_argument("optimal_c: empty grid");
  for (double c : grid)
    if (!(c >= 0.1 && c <= 4.0))
      throw std::invalid_argument("optimal_c: grid points must lie in [0.1, 4]");
  double best_c = grid.front();
  double best_pd = detection_probability(n, p_f, best_c, alpha);
  for (double c : grid.subspan(1)) {
    double pd = detection_probability(n, p_f, c, alpha);
    if (pd > best_pd) {
      best_pd = pd;
      best_c = c;
    }
  }
  return best_c;
}

}  // namespace bdd
