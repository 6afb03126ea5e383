#include "bootuniq/exact.hpp"

#include <deque>
#include <mutex>
#include <stdexcept>

namespace bootuniq {

namespace {

// Shared triangle of Stirling rows. Grow-only; a deque keeps earlier row
// references valid while new rows are appended. Rows beyond this limit are
// served by stirling2_row without being cached (quadratic build cost).
constexpr unsigned long kCacheRowLimit = 600;

class StirlingTable {
 public:
  const std::vector<BigInt>& row(unsigned long n) {
    std::lock_guard<std::mutex> lock(mutex_);
    while (rows_.size() <= n) {
      unsigned long m = rows_.size();
      std::vector<BigInt> next(m + 1);
      next[0] = 0;
      const std::vector<BigInt>& prev = rows_.back();
      for (unsigned long j = 1; j <= m; ++j) {
        // S(m, j) = j S(m-1, j) + S(m-1, j-1)
        next[j] = prev[j - 1];
        if (j < m) next[j] += j * prev[j];
      }
      rows_.push_back(std::move(next));
    }
    return rows_[n];
  }

  StirlingTable() { rows_.push_back({BigInt(1)}); }

 private:
  std::mutex mutex_;
  std::deque<std::vector<BigInt>> rows_;
};

StirlingTable& shared_table() {
  static StirlingTable table;
  return table;
}

std::vector<BigInt> rolling_row(unsigned long n) {
  std::vector<BigInt> cur{BigInt(1)};
  for (unsigned long m = 1; m <= n; ++m) {
    std::vector<BigInt> next(m + 1);
    next[0] = 0;
    for (unsigned long j = 1; j <= m; ++j) {
      next[j] = cur[j - 1];
      if (j < m) next[j] += j * cur[j];
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace

BigInt stirling2(unsigned long n, unsigned long j) {
  if (j > n) return BigInt(0);
  if (n <= kCacheRowLimit) return shared_table().row(n)[j];
  return rolling_row(n)[j];
}

std::vector<BigInt> stirling2_row(unsigned long n) {
  if (n <= kCacheRowLimit) return shared_table().row(n);
  return rolling_row(n);
}

BigInt falling_factorial(unsigned long n, unsigned long k) {
  if (k > n) return BigInt(0);
  BigInt out(1);
  for (unsigned long i = 0; i < k; ++i) out *= (n - i);
  return out;
}

BigInt binomial_coeff(unsigned long n, unsigned long k) {
  if (k > n) return BigInt(0);
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

ExactProb pmf_unique(unsigned long items, unsigned long draws, unsigned long k) {
  if (items == 0) throw std::domain_error("items must be positive");
  BigInt den;
  mpz_ui_pow_ui(den.get_mpz_t(), items, draws);
  BigInt num = falling_factorial(items, k) * stirling2(draws, k);
  return ExactProb(num, den);
}

UniqueCountDistribution distribution(unsigned long items, unsigned long draws) {
  if (items == 0) throw std::domain_error("items must be positive");
  UniqueCountDistribution dist;
  dist.items = items;
  dist.draws = draws;
  BigInt den;
  mpz_ui_pow_ui(den.get_mpz_t(), items, draws);
  std::vector<BigInt> row = stirling2_row(draws);
  unsigned long kmax = std::min<unsigned long>(items, draws);
  dist.probs.reserve(kmax + 1);
  for (unsigned long k = 0; k <= kmax; ++k) {
    dist.probs.emplace_back(falling_factorial(items, k) * row[k], den);
  }
  return dist;
}

ExactProb cdf_unique(const UniqueCountDistribution& dist, long k) {
  if (k < 0) return ExactProb();
  if (k >= static_cast<long>(dist.max_unique())) return ExactProb(Rational(1));
  Rational sum(0);
  for (long i = 0; i <= k; ++i) sum += dist.probs[static_cast<size_t>(i)].rational();
  return ExactProb(sum);
}

ExactPmf excluded_distribution(const UniqueCountDistribution& dist) {
  ExactPmf pmf;
  pmf.support_lo = static_cast<long>(dist.items) - static_cast<long>(dist.max_unique());
  pmf.probs.assign(dist.probs.rbegin(), dist.probs.rend());
  return pmf;
}

}  // namespace bootuniq
