#include "bootuniq/moments.hpp"

#include <cmath>
#include <stdexcept>

namespace bootuniq {

namespace {

void require_items(unsigned long items) {
  if (items == 0) throw std::domain_error("items must be positive");
}

void require_order(unsigned long order, bool allow_high_order) {
  if (order > kMomentOrderCap && !allow_high_order) {
    throw ResourceLimitError("moment order " + std::to_string(order) + " exceeds cap " +
                             std::to_string(kMomentOrderCap) + "; pass the high-order override");
  }
}

}  // namespace

IndicatorStats indicator_stats(unsigned long items, unsigned long draws) {
  require_items(items);
  IndicatorStats st;
  Rational q1 = rational_pow(make_rational(BigInt(items) - 1, BigInt(items)), draws);
  Rational p = 1 - q1;
  st.p_present = ExactProb(p);
  st.variance = p * q1;
  if (items == 1) {
    st.pairwise_covariance = 0;
  } else {
    Rational q2 = rational_pow(make_rational(BigInt(items) - 2, BigInt(items)), draws);
    st.pairwise_covariance = q2 - q1 * q1;
  }
  return st;
}

Rational mean_unique(unsigned long items, unsigned long draws) {
  require_items(items);
  Rational q1 = rational_pow(make_rational(BigInt(items) - 1, BigInt(items)), draws);
  return items * (1 - q1);
}

Rational variance_unique(unsigned long items, unsigned long draws) {
  require_items(items);
  BigInt n(items);
  Rational q1 = rational_pow(make_rational(n - 1, n), draws);
  Rational q2 = rational_pow(make_rational(n - 2, n), draws);
  Rational rn(n);
  return rn * (rn - 1) * q2 + rn * q1 - rn * rn * q1 * q1;
}

double asymptotic_mean(unsigned long items, AsymptoticRegime regime) {
  return static_cast<double>(items) * (1.0 - std::exp(-regime.alpha));
}

double asymptotic_variance(unsigned long items, AsymptoticRegime regime) {
  double a = regime.alpha;
  return static_cast<double>(items) * (std::exp(-a) - (1.0 + a) * std::exp(-2.0 * a));
}

Rational raw_moment(unsigned long items, unsigned long draws, unsigned long order,
                    bool allow_high_order) {
  require_items(items);
  require_order(order, allow_high_order);
  BigInt n(items);
  Rational total(0);
  for (unsigned long v = 0; v <= order && v <= items; ++v) {
    BigInt fall = falling_factorial(items, v);
    for (unsigned long w = 0; v + w <= order; ++w) {
      unsigned long u = order - v - w;
      BigInt base(items - v);
      BigInt pow_u;
      mpz_pow_ui(pow_u.get_mpz_t(), base.get_mpz_t(), u);
      Rational ratio = rational_pow(make_rational(base, n), draws);
      Rational term = make_rational(binomial_coeff(order, u) * stirling2(v + w, v) * fall * pow_u,
                                    BigInt(1)) *
                      ratio;
      if (v % 2 == 1) term = -term;
      total += term;
    }
  }
  return total;
}

Rational central_moment(unsigned long items, unsigned long draws, unsigned long order,
                        bool allow_high_order) {
  require_items(items);
  require_order(order, allow_high_order);
  BigInt n(items);
  Rational q1 = make_rational(n - 1, n);
  Rational total(0);
  for (unsigned long v = 0; v <= order && v <= items; ++v) {
    BigInt fall = falling_factorial(items, v);
    for (unsigned long w = 0; v + w <= order; ++w) {
      unsigned long u = order - v - w;
      BigInt pow_u;
      mpz_pow_ui(pow_u.get_mpz_t(), n.get_mpz_t(), u);
      Rational ratio = rational_pow(make_rational(BigInt(items - v), n), draws);
      Rational shift = rational_pow(q1, static_cast<unsigned long>(u) * draws);
      Rational term =
          make_rational(binomial_coeff(order, u) * stirling2(v + w, v) * fall * pow_u, BigInt(1)) *
          ratio * shift;
      if ((v + w) % 2 == 1) term = -term;
      total += term;
    }
  }
  return total;
}

Rational brute_moment(const UniqueCountDistribution& dist, unsigned long order, bool central) {
  Rational shift(0);
  if (central) shift = brute_moment(dist, 1, false);
  Rational total(0);
  for (unsigned long k = 0; k < dist.probs.size(); ++k) {
    Rational base = Rational(k) - shift;
    Rational powed(1);
    for (unsigned long i = 0; i < order; ++i) powed *= base;
    total += powed * dist.probs[k].rational();
  }
  return total;
}

bool check_stirling_power_identity(unsigned long a, unsigned long k, unsigned long t) {
  BigInt kt;
  mpz_ui_pow_ui(kt.get_mpz_t(), k, t);
  BigInt lhs = kt * stirling2(a, k);
  BigInt rhs(0);
  for (unsigned long v = 0; v <= t; ++v) {
    if (v > k) break;  // S(A+u, k-v) needs k-v >= 0; larger v only adds zeros
    for (unsigned long w = 0; v + w <= t; ++w) {
      unsigned long u = t - v - w;
      BigInt term = binomial_coeff(t, u) * stirling2(v + w, v) * stirling2(a + u, k - v);
      if (v % 2 == 1) term = -term;
      rhs += term;
    }
  }
  return lhs == rhs;
}

bool check_falling_sum_identity(unsigned long items, unsigned long draws, unsigned long w,
                                unsigned long upper) {
  if (upper < std::min(items, draws)) {
    throw std::invalid_argument("summation bound below min(items, draws)");
  }
  BigInt lhs(0);
  for (unsigned long k = w; k <= upper; ++k) {
    lhs += falling_factorial(items, k) * stirling2(draws, k - w);
  }
  BigInt rhs = falling_factorial(items, w);
  if (w <= items) {
    BigInt base;
    mpz_ui_pow_ui(base.get_mpz_t(), items - w, draws);
    rhs *= base;
  }
  return lhs == rhs;
}

}  // namespace bootuniq
