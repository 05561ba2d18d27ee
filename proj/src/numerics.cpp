#include "bdd/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bdd/errors.hpp"

namespace bdd {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void require_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
}

// Acklam's rational approximation to the standard normal quantile,
// |rel err| < 1.15e-9 over (0,1); polished by the caller.
double norm_quantile_seed(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  if (p < plow) {
    double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - plow) {
    double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  double q = p - 0.5;
  double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// Standard normal density.
double norm_pdf(double x) {
  return 0.3989422804014326779 * std::exp(-0.5 * x * x);
}

// One-sided binomial tail, summed away from the boundary term nearest the
// mode so every ratio in the recurrence is < 1 and terms only shrink.
// lower: P(S <= k), summed k, k-1, ...; upper: P(S >= k), summed k, k+1, ...
double binomial_tail(std::int64_t k, std::int64_t n, double theta, bool upper) {
  const double logp0 = log_binomial_pmf(k, n, theta);
  if (logp0 == -std::numeric_limits<double>::infinity()) {
    // Boundary term underflows only when the whole tail is negligible
    // or theta is degenerate; fall back to direct log-space sweep.
    double sum = 0.0;
    if (upper) {
      for (std::int64_t l = k; l <= n; ++l) sum += binomial_pmf(l, n, theta);
    } else {
      for (std::int64_t l = k; l >= 0; --l) sum += binomial_pmf(l, n, theta);
    }
    return std::min(sum, 1.0);
  }
  // Relative term chain: rel(l +/- 1) = rel(l) * pmf ratio.
  double rel = 1.0;
  double sum = 1.0;
  if (upper) {
    for (std::int64_t l = k; l < n; ++l) {
      rel *= (static_cast<double>(n - l) / static_cast<double>(l + 1)) *
             (theta / (1.0 - theta));
      sum += rel;
      if (rel < sum * 1e-18) break;
    }
  } else {
    for (std::int64_t l = k; l > 0; --l) {
      rel *= (static_cast<double>(l) / static_cast<double>(n - l + 1)) *
             ((1.0 - theta) / theta);
      sum += rel;
      if (rel < sum * 1e-18) break;
    }
  }
  return std::min(std::exp(logp0 + std::log(sum)), 1.0);
}

}  // namespace

double q_function(double x) {
  require(std::isfinite(x), "q_function: non-finite argument");
  return 0.5 * std::erfc(x / kSqrt2);
}

double q_inverse(double p) {
  require(std::isfinite(p) && p > 0.0 && p < 1.0,
          "q_inverse: argument must lie strictly in (0,1)");
  // Q^{-1}(p) = Phi^{-1}(1-p) = -Phi^{-1}(p).
  double x = -norm_quantile_seed(p);
  for (int it = 0; it < 3; ++it) {
    double f = q_function(x) - p;
    double d = norm_pdf(x);
    if (d <= 0.0) break;
    x += f / d;  // Q' = -pdf
  }
  return x;
}

double log_binomial_pmf(std::int64_t k, std::int64_t n, double theta) {
  require(n >= 0, "binomial: n must be non-negative");
  require(k <= n, "binomial: k exceeds n");
  require_probability(theta, "theta");
  const double ninf = -std::numeric_limits<double>::infinity();
  if (k < 0) return ninf;
  if (theta == 0.0) return k == 0 ? 0.0 : ninf;
  if (theta == 1.0) return k == n ? 0.0 : ninf;
  const double nk = static_cast<double>(n - k);
  const double kd = static_cast<double>(k);
  const double nd = static_cast<double>(n);
  return std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nk + 1.0) +
         kd * std::log(theta) + nk * std::log1p(-theta);
}

double binomial_pmf(std::int64_t k, std::int64_t n, double theta) {
  if (k < 0) return 0.0;
  return std::exp(log_binomial_pmf(k, n, theta));
}

double binomial_cdf(std::int64_t k, std::int64_t n, double theta) {
  require(n >= 0, "binomial: n must be non-negative");
  require_probability(theta, "theta");
  if (k < 0) return 0.0;
  require(k <= n, "binomial: k exceeds n");
  if (k == n) return 1.0;
  if (theta == 0.0) return 1.0;
  if (theta == 1.0) return 0.0;
  const double mean = static_cast<double>(n) * theta;
  if (static_cast<double>(k) < mean) return binomial_tail(k, n, theta, false);
  return std::max(0.0, 1.0 - binomial_tail(k + 1, n, theta, true));
}

double binomial_sf(std::int64_t k, std::int64_t n, double theta) {
  require(n >= 0, "binomial: n must be non-negative");
  require_probability(theta, "theta");
  if (k < 0) return 1.0;
  require(k <= n, "binomial: k exceeds n");
  if (k == n) return 0.0;
  if (theta == 0.0) return 0.0;
  if (theta == 1.0) return 1.0;
  const double mean = static_cast<double>(n) * theta;
  if (static_cast<double>(k + 1) > mean) return binomial_tail(k + 1, n, theta, true);
  return std::max(0.0, 1.0 - binomial_tail(k, n, theta, false));
}

std::int64_t binomial_inverse_cdf(double pbar, std::int64_t n, double theta) {
  require(std::isfinite(pbar) && pbar > 0.0 && pbar < 1.0,
          "binomial_inverse_cdf: pbar must lie strictly in (0,1)");
  require(n >= 0, "binomial: n must be non-negative");
  require_probability(theta, "theta");
  std::int64_t lo = 0, hi = n;
  if (binomial_cdf(0, n, theta) >= pbar) return 0;
  // Invariant: cdf(lo) < pbar <= cdf(hi).
  while (hi - lo > 1) {
    std::int64_t mid = lo + (hi - lo) / 2;
    if (binomial_cdf(mid, n, theta) >= pbar)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

double regularized_gamma_p(double a, double x) {
  require(a > 0.0 && x >= 0.0 && std::isfinite(a) && std::isfinite(x),
          "regularized_gamma_p: need a > 0, x >= 0");
  if (x == 0.0) return 0.0;
  const double lga = std::lgamma(a);
  if (x < a + 1.0) {
    // Series expansion.
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int i = 0; i < 1000; ++i) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::fabs(term) < std::fabs(sum) * 1e-16)
        return sum * std::exp(-x + a * std::log(x) - lga);
    }
    throw NumericalError("regularized_gamma_p: series failed to converge");
  }
  // Continued fraction for the upper function (modified Lentz).
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 1000; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) {
      double q = std::exp(-x + a * std::log(x) - lga) * h;
      return 1.0 - q;
    }
  }
  throw NumericalError("regularized_gamma_p: continued fraction failed to converge");
}

double chi_square_cdf(double x, std::int64_t dof) {
  require(dof >= 1, "chi_square: dof must be >= 1");
  require(std::isfinite(x), "chi_square: non-finite argument");
  if (x <= 0.0) return 0.0;
  return regularized_gamma_p(0.5 * static_cast<double>(dof), 0.5 * x);
}

double chi_square_inverse_cdf(double p, std::int64_t dof) {
  require(std::isfinite(p) && p > 0.0 && p < 1.0,
          "chi_square_inverse_cdf: p must lie strictly in (0,1)");
  require(dof >= 1, "chi_square: dof must be >= 1");
  // Wilson-Hilferty seed, then an expanding bracket around it.
  const double v = static_cast<double>(dof);
  const double z = -q_inverse(p);  // Phi^{-1}(p)
  double t = 1.0 - 2.0 / (9.0 * v) + z * std::sqrt(2.0 / (9.0 * v));
  double seed = v * t * t * t;
  if (!(seed > 0.0)) seed = v;
  double lo = seed, hi = seed;
  while (chi_square_cdf(lo, dof) > p && lo > 1e-300) lo *= 0.5;
  while (chi_square_cdf(hi, dof) < p) {
    hi *= 2.0;
    if (!std::isfinite(hi)) throw NumericalError("chi_square_inverse_cdf: bracket blew up");
  }
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (chi_square_cdf(mid, dof) < p)
      lo = mid;
    else
      hi = mid;
    if ((hi - lo) < 1e-13 * std::max(1.0, hi)) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace bdd
