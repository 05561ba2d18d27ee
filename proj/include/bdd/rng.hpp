#pragma once

#include <cstdint>
#include <random>

namespace bdd {

/// splitmix64 step; used to mix (seed, trial, tag) tuples into
/// statistically independent engine seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Random stream private to one Monte-Carlo trial. Construction from
/// (master seed, trial index, tag) makes trials reproducible and safe to
/// run concurrently; the paired H0/H1 branches of a trial share a stream
/// by using the same tag.
class TrialRng {
public:
  TrialRng(std::uint64_t master_seed, std::uint64_t trial, std::uint64_t tag) {
    std::uint64_t s = master_seed;
    std::uint64_t a = splitmix64(s) ^ (trial * 0x9e3779b97f4a7c15ULL);
    std::uint64_t b = splitmix64(a) ^ (tag * 0xda942042e4dd58b5ULL);
    std::uint64_t c = splitmix64(b);
    engine_.seed(splitmix64(c));
  }

  double uniform() { return uniform_(engine_); }
  double normal() { return normal_(engine_); }
  double normal(double mean, double stddev) { return mean + stddev * normal_(engine_); }

  std::mt19937_64& engine() { return engine_; }

private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace bdd
