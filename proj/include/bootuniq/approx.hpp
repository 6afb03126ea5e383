#pragma once

#include <vector>

#include "bootuniq/exact.hpp"

namespace bootuniq {

// Binomial comparison baseline: n_b trials, exact success probability p.
struct BinomialSpec {
  unsigned long trials = 1;
  Rational p;  // in (0, 1)
};

struct NormalApprox {
  double mean = 0.0;
  double sd = 1.0;
  double continuity_shift = 0.5;
};

struct ApproxReport {
  double madcd = 0.0;
  double jsd = 0.0;       // natural log
  double jsd_log2 = 0.0;  // same value in bits
  bool heuristic_pass = false;
  double mean = 0.0;
  double sd = 0.0;
};

struct BinomialRules {
  bool rule1 = false;  // n_b p > 5 and n_b (1-p) > 5
  bool rule2 = false;  // |1-2p| / sqrt(p(1-p)) < 0.3 sqrt(n_b) and n_b > 5
  bool combined = false;
};

// Phi(x), absolute error well below 1e-12.
double standard_normal_cdf(double x);

// Normal approximation with the exact mean and sd of the unique-count
// distribution. Rejects zero-variance cases (N = 1 or A <= 1).
NormalApprox normal_approx_for(unsigned long items, unsigned long draws);

// Max over support points k of |F_exact(k) - Phi((k + shift - mean)/sd)|.
// exact_cdf[i] is the cdf at support_lo + i.
double madcd(const std::vector<double>& exact_cdf, long support_lo, const NormalApprox& approx);

// Continuity-corrected cell masses on [support_lo, support_hi]; the endpoint
// cells absorb the tails, so the vector sums to 1.
std::vector<double> discretize_normal(const NormalApprox& approx, long support_lo,
                                      long support_hi);

// Jensen-Shannon divergence, natural log; 0 log 0 = 0.
double jsd(const std::vector<double>& p, const std::vector<double>& q);

// Exact C(n_b, j) p^j (1-p)^(n_b - j).
ExactProb binomial_pmf(const BinomialSpec& spec, unsigned long j);

BinomialRules binomial_rules(const BinomialSpec& spec);

// 1.4 N^0.67 <= A <= 1.13 N^1.19, N > 5, A > 5 (binary64 evaluation).
bool heuristic_single(unsigned long items, unsigned long draws);

// Category-mean rule 1.4 N_s^0.67 <= a_bar <= 1.13 (N_s - 8)^1.19, carrying
// the rule's published floors a_bar >= 9 and N_s >= 14.
bool heuristic_category(unsigned long category_items, double mean_draws);

ApproxReport approx_report(unsigned long items, unsigned long draws);

struct UniqueCell {
  unsigned long items = 0;
  unsigned long draws = 0;
  bool defined = false;  // false when the approximation is undefined (zero variance)
  double madcd = 0.0;
  double jsd = 0.0;  // natural log
  bool heuristic_pass = false;
};

// One cell per (N, A) pair, row-major over N then A; results are identical
// for any thread count.
std::vector<UniqueCell> unique_grid(unsigned long items_lo, unsigned long items_hi,
                                    unsigned long draws_lo, unsigned long draws_hi,
                                    unsigned threads = 1);

struct BinomialCell {
  unsigned long trials = 0;
  Rational p;
  double madcd = 0.0;
  double jsd = 0.0;
  BinomialRules rules;
};

// Cells for n_b = 1..trials_hi and p = i/p_step_den, i = 1..p_step_den-1,
// row-major over n_b then p.
std::vector<BinomialCell> binomial_grid(unsigned long trials_hi, unsigned long p_step_den,
                                        unsigned threads = 1);

struct BoundaryPoint {
  unsigned long items = 0;
  unsigned long a_lower = 0;
  unsigned long a_upper = 0;
  double madcd_lower = 0.0;
  double madcd_upper = 0.0;
};

struct BoundaryScan {
  std::vector<BoundaryPoint> points;
  double slope_lower = 0.0;  // OLS slope of madcd_lower against N
  double slope_upper = 0.0;
};

// For each N in range with a non-empty single-rule region, MADCD at the
// integer A nearest inside each region boundary.
BoundaryScan boundary_scan(unsigned long items_lo, unsigned long items_hi);

}  // namespace bootuniq
