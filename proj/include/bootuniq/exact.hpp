#pragma once

#include <vector>

#include "bootuniq/common.hpp"

namespace bootuniq {

// Stirling number of the second kind S(n, j): ways to partition n labelled
// elements into j nonempty blocks. Cached in a shared grow-only triangle;
// safe under concurrent callers.
BigInt stirling2(unsigned long n, unsigned long j);

// Row n of the triangle, entries j = 0..n. For n past the shared-cache limit
// the row is computed standalone (rolling recurrence) and not cached.
std::vector<BigInt> stirling2_row(unsigned long n);

// N (N-1) ... (N-k+1); equals 0 when k > N, 1 when k == 0.
BigInt falling_factorial(unsigned long n, unsigned long k);

BigInt binomial_coeff(unsigned long n, unsigned long k);

// A pmf on consecutive integers support_lo .. support_lo + probs.size() - 1.
struct ExactPmf {
  long support_lo = 0;
  std::vector<ExactProb> probs;

  long support_hi() const { return support_lo + static_cast<long>(probs.size()) - 1; }
  ExactProb at(long k) const {
    long idx = k - support_lo;
    if (idx < 0 || idx >= static_cast<long>(probs.size())) return ExactProb();
    return probs[static_cast<size_t>(idx)];
  }
};

// Distribution of the number of distinct originals appearing in A draws with
// replacement from N items. Support k = 0..min(N, A); probs sum to exactly 1.
struct UniqueCountDistribution {
  unsigned long items = 0;   // N
  unsigned long draws = 0;   // A
  std::vector<ExactProb> probs;  // index k

  unsigned long max_unique() const { return probs.size() - 1; }
  ExactProb prob(unsigned long k) const {
    return k < probs.size() ? probs[k] : ExactProb();
  }
};

// P(K = k) = falling(N, k) * S(A, k) / N^A.
ExactProb pmf_unique(unsigned long items, unsigned long draws, unsigned long k);

UniqueCountDistribution distribution(unsigned long items, unsigned long draws);

// P(K <= k); exact prefix sum. k below support gives 0, above gives 1.
ExactProb cdf_unique(const UniqueCountDistribution& dist, long k);

// Distribution of N - K (originals that never appear).
ExactPmf excluded_distribution(const UniqueCountDistribution& dist);

}  // namespace bootuniq
