#pragma once

#include <cstdint>
#include <span>

#include "bdd/detector.hpp"

namespace bdd {

/// Energy test against a chi-square quantile; the unquantized benchmark
/// the window-comparator detector is compared with. Samples are the
/// stacked real dimensions of the complex model, i.i.d. N(0, sigma0^2/2)
/// under H0.
struct ChiSquareTestParams {
  std::int64_t dof;   ///< number of real dimensions
  double threshold;   ///< energy threshold, signal units squared
  double sigma0_sq;   ///< variance of the complex model under H0

  static ChiSquareTestParams compute(double p_f, std::int64_t dof,
                                     double sigma0_sq);
};

/// (sigma0_sq / 2) * chi2_quantile(1 - p_f, dof): the energy level the
/// H0 sum of squares exceeds with probability exactly p_f.
double unquantized_threshold(double p_f, std::int64_t dof, double sigma0_sq);

/// H1 iff the sum of squared samples exceeds the threshold. Sample count
/// must equal dof.
Decision unquantized_decide(std::span<const double> samples,
                            const ChiSquareTestParams& params);

}  // namespace bdd
