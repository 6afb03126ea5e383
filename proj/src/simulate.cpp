#include "bootuniq/simulate.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace bootuniq {

namespace {

std::vector<long> sample_counts_common(const std::vector<unsigned long>& boundaries,
                                       unsigned long items, unsigned long draws,
                                       SplitMix64& rng) {
  std::vector<char> seen(items, 0);
  std::vector<long> counts(boundaries.size(), 0);
  for (unsigned long d = 0; d < draws; ++d) {
    uint64_t item = rng.next_below(items);
    if (!seen[item]) {
      seen[item] = 1;
      size_t cat = 0;
      while (item >= boundaries[cat]) ++cat;
      ++counts[cat];
    }
  }
  return counts;
}

std::vector<unsigned long> prefix_boundaries(const CategoryProfile& profile) {
  std::vector<unsigned long> boundaries;
  boundaries.reserve(profile.categories());
  unsigned long run = 0;
  for (unsigned long s : profile.sizes) {
    run += s;
    boundaries.push_back(run);
  }
  return boundaries;
}

}  // namespace

unsigned long sample_unique_count(unsigned long items, unsigned long draws, SplitMix64& rng) {
  if (items == 0) throw std::domain_error("items must be positive");
  std::vector<char> seen(items, 0);
  unsigned long distinct = 0;
  for (unsigned long d = 0; d < draws; ++d) {
    uint64_t item = rng.next_below(items);
    if (!seen[item]) {
      seen[item] = 1;
      ++distinct;
    }
  }
  return distinct;
}

std::vector<long> sample_category_counts(const CategoryProfile& profile, unsigned long draws,
                                         SplitMix64& rng) {
  profile.validate();
  return sample_counts_common(prefix_boundaries(profile), profile.total(), draws, rng);
}

EmpiricalDistribution empirical_distribution(const SimConfig& config, unsigned threads) {
  if (config.replicates < 1) throw std::domain_error("replicates must be positive");
  CategoryProfile profile{config.sizes};
  profile.validate();
  std::vector<unsigned long> boundaries = prefix_boundaries(profile);
  unsigned long items = profile.total();

  auto tally_range = [&](uint64_t lo, uint64_t hi) {
    EmpiricalDistribution part;
    SplitMix64 rng(config.seed);
    for (uint64_t i = lo; i < hi; ++i) {
      rng.seek(config.seed, i * config.draws);
      std::vector<long> outcome = sample_counts_common(boundaries, items, config.draws, rng);
      ++part.counts[outcome];
      ++part.total;
    }
    return part;
  };

  unsigned workers = threads <= 1 ? 1
                                  : static_cast<unsigned>(
                                        std::min<uint64_t>(threads, config.replicates));
  if (workers == 1) return tally_range(0, config.replicates);

  std::vector<EmpiricalDistribution> parts(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    uint64_t lo = config.replicates * w / workers;
    uint64_t hi = config.replicates * (w + 1) / workers;
    pool.emplace_back([&, w, lo, hi] { parts[w] = tally_range(lo, hi); });
  }
  for (auto& t : pool) t.join();

  EmpiricalDistribution merged;
  for (const EmpiricalDistribution& part : parts) {
    merged.total += part.total;
    for (const auto& [outcome, tally] : part.counts) merged.counts[outcome] += tally;
  }
  return merged;
}

double tv_distance(const EmpiricalDistribution& emp, const UniqueCountDistribution& exact) {
  if (emp.total == 0) throw std::domain_error("empty empirical distribution");
  double sum = 0.0;
  std::map<long, double> freq;
  for (const auto& [outcome, tally] : emp.counts) {
    if (outcome.size() != 1) throw std::invalid_argument("empirical outcomes are not scalar");
    freq[outcome[0]] = static_cast<double>(tally) / static_cast<double>(emp.total);
  }
  for (unsigned long k = 0; k < exact.probs.size(); ++k) {
    double f = 0.0;
    auto it = freq.find(static_cast<long>(k));
    if (it != freq.end()) {
      f = it->second;
      freq.erase(it);
    }
    sum += std::fabs(f - exact.probs[k].to_double());
  }
  for (const auto& [outcome, f] : freq) sum += f;  // outside exact support
  return 0.5 * sum;
}

double tv_distance(const EmpiricalDistribution& emp, const JointUniqueDistribution& exact) {
  if (emp.total == 0) throw std::domain_error("empty empirical distribution");
  double sum = 0.0;
  std::map<std::vector<long>, double> freq;
  for (const auto& [outcome, tally] : emp.counts) {
    freq[outcome] = static_cast<double>(tally) / static_cast<double>(emp.total);
  }
  for (const auto& [outcome, prob] : exact.pmf) {
    double f = 0.0;
    auto it = freq.find(outcome);
    if (it != freq.end()) {
      f = it->second;
      freq.erase(it);
    }
    sum += std::fabs(f - prob.to_double());
  }
  for (const auto& [outcome, f] : freq) sum += f;
  return 0.5 * sum;
}

}  // namespace bootuniq
