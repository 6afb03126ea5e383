#pragma once

#include <cstdint>
#include <map>

#include "bootuniq/multivariate.hpp"

namespace bootuniq {

// splitmix64 (Steele/Lea/Flood; Vigna's reference C implementation). Chosen
// for its published test vectors and O(1) seeking: output i of the stream is
// mix(seed + (i+1) * GAMMA), so any replicate's draws can be located without
// generating its predecessors.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  static constexpr uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  uint64_t next() {
    uint64_t z = (state_ += kGamma);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Jump so that the following next() returns stream output `index`.
  void seek(uint64_t seed, uint64_t index) { state_ = seed + index * kGamma; }

  // Uniform draw in [0, bound) via 128-bit multiply-shift.
  uint64_t next_below(uint64_t bound) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

 private:
  uint64_t state_;
};

struct SimConfig {
  uint64_t seed = 0;
  uint64_t replicates = 1;
  std::vector<unsigned long> sizes;  // single entry = plain bootstrap
  unsigned long draws = 0;
};

// Tally of sampled outcome vectors; scalar runs use length-1 keys.
struct EmpiricalDistribution {
  std::map<std::vector<long>, uint64_t> counts;
  uint64_t total = 0;
};

// Distinct originals seen in `draws` uniform draws from `items`.
unsigned long sample_unique_count(unsigned long items, unsigned long draws, SplitMix64& rng);

// Distinct originals per category; the vector sums to the overall distinct count.
std::vector<long> sample_category_counts(const CategoryProfile& profile, unsigned long draws,
                                         SplitMix64& rng);

// Deterministic in config alone: replicate i consumes stream outputs
// [i*draws, (i+1)*draws), so any worker partition yields identical tallies.
EmpiricalDistribution empirical_distribution(const SimConfig& config, unsigned threads = 1);

double tv_distance(const EmpiricalDistribution& emp, const UniqueCountDistribution& exact);
double tv_distance(const EmpiricalDistribution& emp, const JointUniqueDistribution& exact);

}  // namespace bootuniq
