#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "bdd/numerics.hpp"

namespace bdd {

/// Window comparator: emits 1 when the input magnitude leaves the window
/// [-c*sigma0, c*sigma0], 0 otherwise. The boundary itself maps to 0.
struct ComparatorConfig {
  double c;       ///< dimensionless window parameter
  double sigma0;  ///< null standard deviation of the real-valued input

  ComparatorConfig(double c_, double sigma0_) : c(c_), sigma0(sigma0_) {
    if (!(c >= 0.0) || !std::isfinite(c))
      throw std::invalid_argument("ComparatorConfig: c must be >= 0");
    if (!(sigma0 > 0.0) || !std::isfinite(sigma0))
      throw std::invalid_argument("ComparatorConfig: sigma0 must be > 0");
  }

  /// Half-width of the window, lambda = c * sigma0.
  double window() const { return c * sigma0; }
};

/// alpha = sigma0 / sigma1 in (0,1]; smaller alpha means a stronger
/// embedded signal.
struct VarianceRatio {
  double alpha;

  explicit VarianceRatio(double alpha_) : alpha(alpha_) {
    if (!(alpha > 0.0 && alpha <= 1.0))
      throw std::invalid_argument("VarianceRatio: alpha must lie in (0,1]");
  }

  static VarianceRatio from_sigmas(double sigma0, double sigma1) {
    return VarianceRatio(sigma0 / sigma1);
  }
};

inline std::uint8_t quantize(double sample, const ComparatorConfig& cfg) {
  if (!std::isfinite(sample))
    throw std::invalid_argument("quantize: non-finite sample");
  return std::fabs(sample) > cfg.window() ? 1 : 0;
}

inline std::vector<std::uint8_t> quantize_block(std::span<const double> samples,
                                                const ComparatorConfig& cfg) {
  std::vector<std::uint8_t> bits;
  bits.reserve(samples.size());
  for (double s : samples) bits.push_back(quantize(s, cfg));
  return bits;
}

/// Number of 1s the comparator produces over a block; equivalent to
/// summing quantize_block but with no intermediate storage.
inline std::int64_t quantize_count(std::span<const double> samples,
                                   const ComparatorConfig& cfg) {
  const double lambda = cfg.window();
  std::int64_t count = 0;
  for (double s : samples) {
    if (!std::isfinite(s))
      throw std::invalid_argument("quantize_count: non-finite sample");
    if (std::fabs(s) > lambda) ++count;
  }
  return count;
}

/// theta0 = 2 Q(c): success rate of the comparator under the null model.
/// Depends on c only, never on sigma0.
inline double null_success_rate(double c) {
  if (!(c >= 0.0) || !std::isfinite(c))
    throw std::invalid_argument("null_success_rate: c must be >= 0");
  return std::min(1.0, 2.0 * q_function(c));
}

/// theta1 = 2 Q(alpha c): success rate under the alternative model.
inline double alt_success_rate(double c, const VarianceRatio& ratio) {
  if (!(c >= 0.0) || !std::isfinite(c))
    throw std::invalid_argument("alt_success_rate: c must be >= 0");
  return std::min(1.0, 2.0 * q_function(ratio.alpha * c));
}

}  // namespace bdd
