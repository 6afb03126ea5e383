#pragma once

// Brute-force oracles used only by tests: enumerate every ordered sample of
// `draws` draws from `items` originals and tally which subsets of originals
// appear. Everything downstream (scalar pmf, joint per-category pmf) reduces
// to popcounts over these tallies, so a single enumeration serves many checks.

#include <cstdint>
#include <map>
#include <vector>

#include "bootuniq/exact.hpp"
#include "bootuniq/multivariate.hpp"

namespace oracle {

// tallies[mask] = number of ordered samples whose set of seen items is mask.
// items must be <= 20 or so; intended for tiny exhaustive cases.
inline std::vector<uint64_t> presence_tallies(unsigned long items, unsigned long draws) {
  std::vector<uint64_t> tallies(size_t{1} << items, 0);
  std::vector<unsigned long> digits(draws, 0);
  while (true) {
    uint32_t mask = 0;
    for (unsigned long d : digits) mask |= uint32_t{1} << d;
    if (draws == 0) mask = 0;
    ++tallies[mask];
    size_t pos = 0;
    while (pos < draws && digits[pos] == items - 1) {
      digits[pos] = 0;
      ++pos;
    }
    if (pos == draws) break;
    ++digits[pos];
  }
  return tallies;
}

// Exact pmf of the distinct count from the tallies.
inline std::vector<bootuniq::ExactProb> scalar_pmf(unsigned long items, unsigned long draws,
                                                   const std::vector<uint64_t>& tallies) {
  unsigned long kmax = std::min(items, draws);
  std::vector<bootuniq::BigInt> nums(kmax + 1, 0);
  for (size_t mask = 0; mask < tallies.size(); ++mask) {
    if (tallies[mask] == 0) continue;
    nums[static_cast<size_t>(__builtin_popcountll(mask))] += tallies[mask];
  }
  bootuniq::BigInt den;
  mpz_ui_pow_ui(den.get_mpz_t(), items, draws);
  std::vector<bootuniq::ExactProb> pmf;
  pmf.reserve(kmax + 1);
  for (const auto& num : nums) pmf.emplace_back(num, den);
  return pmf;
}

// Exact joint pmf over per-category distinct counts, where the items are
// split into consecutive blocks of the profile's sizes.
inline std::map<std::vector<long>, bootuniq::ExactProb> joint_pmf(
    const bootuniq::CategoryProfile& profile, unsigned long draws,
    const std::vector<uint64_t>& tallies) {
  std::map<std::vector<long>, bootuniq::BigInt> nums;
  size_t c = profile.categories();
  for (size_t mask = 0; mask < tallies.size(); ++mask) {
    if (tallies[mask] == 0) continue;
    std::vector<long> key(c);
    size_t shift = 0;
    for (size_t s = 0; s < c; ++s) {
      uint64_t cat_mask = (mask >> shift) & ((uint64_t{1} << profile.sizes[s]) - 1);
      key[s] = __builtin_popcountll(cat_mask);
      shift += profile.sizes[s];
    }
    nums[key] += tallies[mask];
  }
  bootuniq::BigInt den;
  mpz_ui_pow_ui(den.get_mpz_t(), profile.total(), draws);
  std::map<std::vector<long>, bootuniq::ExactProb> pmf;
  for (const auto& [key, num] : nums) pmf.emplace(key, bootuniq::ExactProb(num, den));
  return pmf;
}

}  // namespace oracle
