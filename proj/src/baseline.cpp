#include "bdd/baseline.hpp"

#include <cmath>
#include <stdexcept>

#include "bdd/numerics.hpp"

namespace bdd {

double unquantized_threshold(double p_f, std::int64_t dof, double sigma0_sq) {
  if (!(p_f > 0.0 && p_f < 1.0))
    throw std::invalid_argument("unquantized_threshold: p_f must lie in (0,1)");
  if (dof < 1) throw std::invalid_argument("unquantized_threshold: dof must be >= 1");
  if (!(sigma0_sq > 0.0))
    throw std::invalid_argument("unquantized_threshold: sigma0_sq must be > 0");
  return 0.5 * sigma0_sq * chi_square_inverse_cdf(1.0 - p_f, dof);
}

ChiSquareTestParams ChiSquareTestParams::compute(double p_f, std::int64_t dof,
                                                 double sigma0_sq) {
  return ChiSquareTestParams{dof, unquantized_threshold(p_f, dof, sigma0_sq),
                             sigma0_sq};
}

Decision unquantized_decide(std::span<const double> samples,
                            const ChiSquareTestParams& params) {
  if (static_cast<std::int64_t>(samples.size()) != params.dof)
    throw std::invalid_argument("unquantized_decide: sample count does not match dof");
  double energy = 0.0;
  for (double s : samples) energy += s * s;
  return {energy > params.threshold ? Hypothesis::H1 : Hypothesis::H0, false};
}

}  // namespace bdd
