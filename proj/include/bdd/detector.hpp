#pragma once

#include <cstdint>
#include <span>
#include <utility>

#include "bdd/rng.hpp"

namespace bdd {

enum class Hypothesis { H0, H1 };

/// Outcome of one test. `randomized` is set only when the observed count
/// hit the threshold exactly and the tie-break coin was flipped.
struct Decision {
  Hypothesis hypothesis;
  bool randomized;
};

/// Binary symmetric channel degrading the sensor-to-detector link.
/// epsilon > 0.5 is a relabeled channel and is rejected.
struct BscChannel {
  double epsilon;
  explicit BscChannel(double eps);
};

/// Fully determined decision rule: count threshold gamma plus the
/// randomization weight zeta that makes the achieved false-alarm rate
/// exactly p_f despite the discreteness of the count statistic.
struct DetectorParams {
  std::int64_t n;
  double p_f;
  double c;
  std::int64_t gamma;
  double zeta;
  double theta0;

  /// Derives (gamma, zeta, theta0) from (n, p_f, c).
  static DetectorParams compute(std::int64_t n, double p_f, double c);

  /// Same rule but with an explicit null success rate (BSC variant).
  static DetectorParams compute_with_theta0(std::int64_t n, double p_f, double c,
                                            double theta0);
};

/// Smallest gamma with P(S_n <= gamma | theta0 = 2Q(c)) >= 1 - p_f.
std::int64_t compute_threshold(std::int64_t n, double p_f, double c);

/// Gaussian (CLT) approximation to compute_threshold. Valid when
/// n * theta0 * (1 - theta0) is not small; matches the exact threshold
/// within +-1 for n >= 300 at c = 1.6.
std::int64_t approx_threshold(std::int64_t n, double p_f, double c);

/// zeta = (p_f - P(S_n > gamma | H0)) / P(S_n = gamma | H0).
double compute_zeta(std::int64_t n, double p_f, double c, std::int64_t gamma);

/// Decision on an observed count, with the tie-break uniform draw passed
/// in explicitly; the rule depends on the bits only through their sum.
Decision decide_count(std::int64_t count, const DetectorParams& params,
                      double tie_uniform);

/// Decision on a bit sequence of length exactly params.n. Draws one
/// uniform from rng only when the count ties the threshold.
Decision decide(std::span<const std::uint8_t> bits, const DetectorParams& params,
                TrialRng& rng);

/// Closed-form detection probability of the randomized rule
/// (tail above gamma under theta1 plus zeta times the boundary mass).
/// Equals p_f when alpha = 1; tends to 1 as alpha -> 0 or n -> infinity.
double detection_probability(std::int64_t n, double p_f, double c, double alpha);

/// Degenerate-quantizer limit: as c -> 0 (or c -> infinity) the detector
/// carries no information and P_D collapses to p_f.
double detection_probability_limit_c(double p_f);

/// Success rates after transmission through a BSC:
/// theta' = eps (1 - theta) + (1 - eps) theta for each hypothesis.
std::pair<double, double> bsc_success_rates(double c, double alpha,
                                            const BscChannel& ch);

/// Detection probability when bits reach the detector through a BSC; the
/// threshold is recomputed against theta0'.
double detection_probability_bsc(std::int64_t n, double p_f, double c, double alpha,
                                 const BscChannel& ch);

/// argmax of detection_probability over a grid of c values in [0.1, 4];
/// ties break toward smaller c.
double optimal_c(std::int64_t n, double p_f, double alpha,
                 std::span<const double> grid);

}  // namespace bdd
