#pragma once

#include <cstdint>

namespace bdd {

// ---------------------------------------------------------------------------
// Normal distribution
// ---------------------------------------------------------------------------

/// Complementary CDF of the standard normal, Q(x) = 1 - Phi(x).
/// Evaluated through erfc; relative error below 1e-12 for |x| <= 8.
double q_function(double x);

/// Inverse of q_function on (0,1). Rational seed plus Newton polish;
/// round-trips through q_function to better than 1e-10 absolute.
double q_inverse(double p);

// ---------------------------------------------------------------------------
// Binomial distribution (log-space internals, stable up to n ~ 1e5)
// ---------------------------------------------------------------------------

/// log P(S = k) for S ~ Bin(n, theta). Degenerate theta in {0,1} handled.
double log_binomial_pmf(std::int64_t k, std::int64_t n, double theta);

/// P(S = k) for S ~ Bin(n, theta).
double binomial_pmf(std::int64_t k, std::int64_t n, double theta);

/// P(S <= k). Summed from the smaller tail so that values near 0 or 1
/// keep full relative accuracy.
double binomial_cdf(std::int64_t k, std::int64_t n, double theta);

/// P(S > k), the complementary CDF.
double binomial_sf(std::int64_t k, std::int64_t n, double theta);

/// Smallest integer g with binomial_cdf(g, n, theta) >= pbar.
/// Binary search over k; the defining inequality holds exactly.
std::int64_t binomial_inverse_cdf(double pbar, std::int64_t n, double theta);

// ---------------------------------------------------------------------------
// Gamma / chi-square
// ---------------------------------------------------------------------------

/// Regularized lower incomplete gamma P(a, x), series for x < a+1 and
/// Lentz continued fraction otherwise.
double regularized_gamma_p(double a, double x);

/// CDF of the chi-square distribution with dof degrees of freedom.
double chi_square_cdf(double x, std::int64_t dof);

/// Quantile of the chi-square distribution: the x with
/// chi_square_cdf(x, dof) = p, to about 1e-10 relative. Wilson-Hilferty
/// seeds the bracket, bisection finishes.
double chi_square_inverse_cdf(double p, std::int64_t dof);

}  // namespace bdd
