#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "bdd/detector.hpp"
#include "bdd/numerics.hpp"
#include "bdd/quantizer.hpp"
#include "bdd/rng.hpp"

using namespace bdd;

namespace {

// Exhaustive oracle: probability of deciding H1 over all 2^n sequences
// weighted by i.i.d. Bernoulli(theta), with the randomized boundary.
double enumerate_h1_probability(int n, double theta, std::int64_t gamma, double zeta) {
  double total = 0.0;
  for (int seq = 0; seq < (1 << n); ++seq) {
    int ones = __builtin_popcount(static_cast<unsigned>(seq));
    double p = std::pow(theta, ones) * std::pow(1.0 - theta, n - ones);
    if (ones > gamma)
      total += p;
    else if (ones == gamma)
      total += zeta * p;
  }
  return total;
}

}  // namespace

TEST_CASE("compute_threshold reproduces the reference rows") {
  CHECK(compute_threshold(320, 0.05, 1.6) == 44);
  CHECK(compute_threshold(1280, 0.05, 1.6) == 159);
  CHECK(compute_threshold(2560, 0.05, 1.6) == 307);
  CHECK_THROWS_AS(compute_threshold(320, 0.05, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(compute_threshold(320, 0.0, 1.6), std::invalid_argument);
}

TEST_CASE("threshold collapses to zero as p_f approaches one") {
  // n = 20: P(S = 0) = (1 - theta0)^20 ~ 0.098, so pbar = 0.05 already
  // lands on gamma = 0 and zeta tends toward 1.
  CHECK(compute_threshold(20, 0.95, 1.6) == 0);
  double zeta = compute_zeta(20, 0.95, 1.6, 0);
  CHECK(zeta > 0.4);
  CHECK(zeta <= 1.0);
}

TEST_CASE("approx_threshold tracks the exact one") {
  CHECK(approx_threshold(320, 0.05, 1.6) == 44);
  CHECK(approx_threshold(1280, 0.05, 1.6) == 158);  // exact value is 159
  double qc = q_function(1.6);
  CHECK(approx_threshold(500, 0.5, 1.6) ==
        static_cast<std::int64_t>(std::floor(2.0 * 500 * qc)));
  for (std::int64_t n : {300, 700, 1500, 4000}) {
    auto exact = compute_threshold(n, 0.05, 1.6);
    auto approx = approx_threshold(n, 0.05, 1.6);
    CHECK(std::llabs(exact - approx) <= 1);
  }
}

TEST_CASE("zeta reference values and the exact-calibration identity") {
  CHECK(std::fabs(compute_zeta(320, 0.05, 1.6, 44) - 0.026) < 5e-4);
  CHECK(std::fabs(compute_zeta(1280, 0.05, 1.6, 159) - 0.5989) < 5e-4);
  CHECK(std::fabs(compute_zeta(2560, 0.05, 1.6, 307) - 0.7024) < 5e-4);
  // P(S > gamma | H0) + zeta P(S = gamma | H0) = p_f to 1e-12.
  double theta0 = null_success_rate(1.6);
  for (std::int64_t n : {15, 100, 320, 1280, 5000}) {
    for (double pf : {0.01, 0.05, 0.1, 0.4}) {
      auto params = DetectorParams::compute(n, pf, 1.6);
      double achieved = binomial_sf(params.gamma, n, theta0) +
                        params.zeta * binomial_pmf(params.gamma, n, theta0);
      CHECK(std::fabs(achieved - pf) < 1e-12);
      CHECK(params.zeta >= 0.0);
      CHECK(params.zeta <= 1.0);
    }
  }
}

TEST_CASE("decide on degenerate sequences") {
  auto params = DetectorParams::compute(50, 0.05, 1.6);
  REQUIRE(params.gamma >= 1);
  REQUIRE(params.gamma < 50);
  TrialRng rng(1, 0, 0);
  std::vector<std::uint8_t> ones(50, 1), zeros(50, 0);
  CHECK(decide(ones, params, rng).hypothesis == Hypothesis::H1);
  CHECK(decide(zeros, params, rng).hypothesis == Hypothesis::H0);
  std::vector<std::uint8_t> wrong_len(49, 0);
  CHECK_THROWS_AS(decide(wrong_len, params, rng), std::invalid_argument);
}

TEST_CASE("tie branch follows zeta") {
  DetectorParams params{100, 0.05, 1.6, 20, 0.3, null_success_rate(1.6)};
  // zeta = 1 always picks H1 on a tie.
  DetectorParams sure = params;
  sure.zeta = 1.0;
  for (double u : {0.0, 0.33, 0.999})
    CHECK(decide_count(20, sure, u).hypothesis == Hypothesis::H1);
  // Empirical H1 rate over 1e5 ties at zeta = 0.3.
  TrialRng rng(9, 0, 0);
  int h1 = 0;
  const int reps = 100000;
  for (int i = 0; i < reps; ++i) {
    Decision d = decide_count(20, params, rng.uniform());
    CHECK(d.randomized);
    h1 += d.hypothesis == Hypothesis::H1;
  }
  CHECK(std::fabs(h1 / static_cast<double>(reps) - 0.3) < 0.01);
}

TEST_CASE("decision depends on the bits only through their sum") {
  auto params = DetectorParams::compute(12, 0.1, 1.6);
  std::vector<std::uint8_t> a{1, 1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0};
  std::vector<std::uint8_t> b{0, 0, 0, 1, 0, 1, 1, 0, 1, 0, 0, 0};  // permutation
  std::int64_t sa = 0, sb = 0;
  for (auto v : a) sa += v;
  for (auto v : b) sb += v;
  REQUIRE(sa == sb);
  for (double u : {0.01, 0.5, 0.99})
    CHECK(decide_count(sa, params, u).hypothesis ==
          decide_count(sb, params, u).hypothesis);
}

TEST_CASE("detection probability limits") {
  CHECK(std::fabs(detection_probability(200, 0.05, 1.6, 1.0) - 0.05) < 1e-12);
  CHECK(detection_probability(200, 0.05, 1.6, 1e-12) >= 1.0 - 1e-9);
  CHECK(detection_probability_limit_c(0.05) == 0.05);
  CHECK(detection_probability_limit_c(0.01) == 0.01);
  // Degenerate window: P_D collapses toward p_f.
  CHECK(std::fabs(detection_probability(200, 0.05, 1e-4, 0.8) - 0.05) < 1e-3);
  CHECK_THROWS_AS(detection_probability(200, 0.05, 1.6, 0.0), std::invalid_argument);
}

TEST_CASE("detection probability is monotone in alpha and n, and >= p_f") {
  double prev = 2.0;
  for (double a : {0.5, 0.6, 0.7, 0.8, 0.9, 1.0}) {
    double pd = detection_probability(200, 0.05, 1.6, a);
    CHECK(pd <= prev + 1e-12);
    CHECK(pd >= 0.05 - 1e-12);
    prev = pd;
  }
  prev = 0.0;
  for (std::int64_t n : {50, 100, 200, 400, 800, 1600}) {
    double pd = detection_probability(n, 0.05, 1.6, 0.85);
    CHECK(pd >= prev - 1e-12);
    prev = pd;
  }
}

TEST_CASE("closed form matches Monte Carlo through quantizer and decide") {
  const std::int64_t n = 200;
  const double pf = 0.05, c = 1.6, alpha = 0.8;
  auto params = DetectorParams::compute(n, pf, c);
  ComparatorConfig cfg(c, 1.0);  // sigma0 = 1, sigma1 = 1/alpha
  const double sigma1 = 1.0 / alpha;
  const int trials = 100000;
  int det = 0;
  std::vector<double> samples(n);
  for (int t = 0; t < trials; ++t) {
    TrialRng rng(123, static_cast<std::uint64_t>(t), 0);
    for (auto& s : samples) s = sigma1 * rng.normal();
    auto bits = quantize_block(samples, cfg);
    det += decide(bits, params, rng).hypothesis == Hypothesis::H1;
  }
  double expected = detection_probability(n, pf, c, alpha);
  double emp = det / static_cast<double>(trials);
  double tol = 3.0 * std::sqrt(expected * (1.0 - expected) / trials);
  CHECK(std::fabs(emp - expected) < tol);
}

TEST_CASE("BSC success rates") {
  auto [t0a, t1a] = bsc_success_rates(1.6, 0.8, BscChannel(0.0));
  CHECK(t0a == doctest::Approx(null_success_rate(1.6)).epsilon(1e-14));
  CHECK(t1a == doctest::Approx(alt_success_rate(1.6, VarianceRatio(0.8))).epsilon(1e-14));
  auto [t0b, t1b] = bsc_success_rates(1.6, 0.8, BscChannel(0.5));
  CHECK(t0b == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(t1b == doctest::Approx(0.5).epsilon(1e-14));
  auto [t0c, t1c] = bsc_success_rates(1.6, 0.8, BscChannel(0.1));
  CHECK(t0c == doctest::Approx(0.1876788667192928).epsilon(1e-12));
  CHECK(t1c > t0c);
  CHECK_THROWS_AS(BscChannel(0.6), std::invalid_argument);
  CHECK_THROWS_AS(BscChannel(-0.1), std::invalid_argument);
}

TEST_CASE("BSC detection probability limits") {
  double clean = detection_probability(200, 0.05, 1.6, 0.8);
  CHECK(std::fabs(detection_probability_bsc(200, 0.05, 1.6, 0.8, BscChannel(0.0)) -
                  clean) < 1e-12);
  CHECK(std::fabs(detection_probability_bsc(200, 0.05, 1.6, 0.8, BscChannel(0.5)) -
                  0.05) < 1e-12);
  // Degradation: a noisier link never helps.
  CHECK(detection_probability_bsc(200, 0.05, 1.6, 0.8, BscChannel(0.1)) < clean);
}

TEST_CASE("optimal_c lands near 1.6 and breaks ties toward smaller c") {
  std::vector<double> grid;
  for (int k = 0; k <= 77; ++k) grid.push_back(0.1 + 0.05 * k);
  for (double alpha : {0.85, 0.9}) {
    double best = optimal_c(200, 0.05, alpha, grid);
    CHECK(best >= 1.4);
    CHECK(best <= 1.8);
  }
  std::vector<double> single{1.0};
  CHECK(optimal_c(200, 0.05, 0.85, single) == 1.0);
  std::vector<double> empty;
  CHECK_THROWS_AS(optimal_c(200, 0.05, 0.85, empty), std::invalid_argument);
}

TEST_CASE("small-n closed forms equal exhaustive enumeration") {
  for (int n : {6, 10, 12}) {
    for (double pf : {0.05, 0.2, 0.5}) {
      auto params = DetectorParams::compute(n, pf, 1.6);
      double theta0 = null_success_rate(1.6);
      double theta1 = alt_success_rate(1.6, VarianceRatio(0.7));
      double pf_enum = enumerate_h1_probability(n, theta0, params.gamma, params.zeta);
      double pd_enum = enumerate_h1_probability(n, theta1, params.gamma, params.zeta);
      CHECK(std::fabs(pf_enum - pf) < 1e-12);
      CHECK(std::fabs(pd_enum - detection_probability(n, pf, 1.6, 0.7)) < 1e-12);
    }
  }
}
