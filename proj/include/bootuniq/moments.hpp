#pragma once

#include "bootuniq/exact.hpp"

namespace bootuniq {

// Presence-indicator statistics for one item (and one pair) under A draws.
struct IndicatorStats {
  ExactProb p_present;           // 1 - (1 - 1/N)^A
  Rational variance;             // p (1 - p)
  Rational pairwise_covariance;  // (1 - 2/N)^A - (1 - 1/N)^(2A); 0 when N = 1
};

struct AsymptoticRegime {
  double alpha;  // draw ratio A/N, > 0
};

IndicatorStats indicator_stats(unsigned long items, unsigned long draws);

Rational mean_unique(unsigned long items, unsigned long draws);
Rational variance_unique(unsigned long items, unsigned long draws);

// Large-N limits at fixed alpha = A/N.
double asymptotic_mean(unsigned long items, AsymptoticRegime regime);
double asymptotic_variance(unsigned long items, AsymptoticRegime regime);

// Moment order above which exact evaluation must be requested explicitly.
inline constexpr unsigned long kMomentOrderCap = 20;

// E[K^t] via the closed-form triple sum over u + v + w = t.
Rational raw_moment(unsigned long items, unsigned long draws, unsigned long order,
                    bool allow_high_order = false);

// E[(K - E[K])^t] via the closed-form triple sum.
Rational central_moment(unsigned long items, unsigned long draws, unsigned long order,
                        bool allow_high_order = false);

// Direct summation over the pmf; oracle for the closed forms.
Rational brute_moment(const UniqueCountDistribution& dist, unsigned long order, bool central);

// k^t S(A, k) = sum over u+v+w=t of C(t,u) (-1)^v S(v+w, v) S(A+u, k-v).
bool check_stirling_power_identity(unsigned long a, unsigned long k, unsigned long t);

// sum_{k=0}^{K} falling(N, k) S(A, k-w) = falling(N, w) (N-w)^A.
// Throws std::invalid_argument when K < min(N, A) (precondition, reported
// distinctly from an identity failure).
bool check_falling_sum_identity(unsigned long items, unsigned long draws, unsigned long w,
                                unsigned long upper);

}  // namespace bootuniq
