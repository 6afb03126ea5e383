#pragma once

#include <map>
#include <vector>

#include "bootuniq/exact.hpp"

namespace bootuniq {

struct CategoryProfile {
  std::vector<unsigned long> sizes;  // N_s, one per category, each >= 1

  size_t categories() const { return sizes.size(); }
  unsigned long total() const;
  void validate() const;
};

// Exact joint pmf over vectors k = (k_1..k_C); only nonzero entries stored.
struct JointUniqueDistribution {
  CategoryProfile profile;
  unsigned long draws = 0;
  std::map<std::vector<long>, ExactProb> pmf;
};

inline constexpr unsigned long long kCompositionCap = 2'000'000;

// P(k) = (Prod_s falling(N_s, k_s)) * Sum over compositions a of A of
// multinomial(A; a) * Prod_s S(a_s, k_s), all over N^A.
ExactProb joint_pmf(const CategoryProfile& profile, unsigned long draws,
                    const std::vector<long>& k,
                    unsigned long long composition_cap = kCompositionCap);

JointUniqueDistribution joint_distribution(const CategoryProfile& profile, unsigned long draws,
                                           unsigned long long composition_cap = kCompositionCap);

Rational category_mean(const CategoryProfile& profile, unsigned long draws, size_t index);
Rational category_variance(const CategoryProfile& profile, unsigned long draws, size_t index);

// Cov(k_i, k_j) for i != j; never positive for A >= 1.
Rational category_covariance(const CategoryProfile& profile, unsigned long draws, size_t i,
                             size_t j);

// Exact marginal law of k_s: mixture over the binomial split of draws.
UniqueCountDistribution marginal_category_distribution(const CategoryProfile& profile,
                                                       unsigned long draws, size_t index);

// Indicator covariance <= 0 together with the quadrant inequality
// P(d_i = 0, d_j = 0) <= P(d_i = 0) P(d_j = 0), checked exactly.
bool pnqd_negativity_check(const CategoryProfile& profile, unsigned long draws);

}  // namespace bootuniq
