#include "bootuniq/approx.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

#include "bootuniq/moments.hpp"

namespace bootuniq {

namespace {

// Exact cdf of a distribution as binary64 values, index k = 0..max support.
std::vector<double> exact_cdf_doubles(const UniqueCountDistribution& dist) {
  std::vector<double> cdf(dist.probs.size());
  Rational run(0);
  for (size_t k = 0; k < dist.probs.size(); ++k) {
    run += dist.probs[k].rational();
    cdf[k] = run.get_d();
  }
  return cdf;
}

std::vector<double> pmf_doubles(const UniqueCountDistribution& dist) {
  std::vector<double> pmf(dist.probs.size());
  for (size_t k = 0; k < dist.probs.size(); ++k) pmf[k] = dist.probs[k].to_double();
  return pmf;
}

// num/den as binary64 without canonicalizing (mpq_get_d does not require
// reduced form); exact-to-double conversions on hot grid paths go through here.
double ratio_double(const BigInt& num, const BigInt& den) {
  mpq_t tmp;
  mpq_init(tmp);
  mpq_set_num(tmp, num.get_mpz_t());
  mpq_set_den(tmp, den.get_mpz_t());
  double out = mpq_get_d(tmp);
  mpq_clear(tmp);
  return out;
}

double ols_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  size_t n = xs.size();
  if (n < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

void run_partitioned(size_t total, unsigned threads, const std::function<void(size_t, size_t)>& fn) {
  if (threads <= 1 || total <= 1) {
    fn(0, total);
    return;
  }
  unsigned workers = static_cast<unsigned>(std::min<size_t>(threads, total));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    size_t lo = total * w / workers;
    size_t hi = total * (w + 1) / workers;
    pool.emplace_back(fn, lo, hi);
  }
  for (auto& t : pool) t.join();
}

}  // namespace

double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

NormalApprox normal_approx_for(unsigned long items, unsigned long draws) {
  Rational var = variance_unique(items, draws);
  if (var == 0) throw std::domain_error("zero-variance distribution has no normal approximation");
  NormalApprox approx;
  approx.mean = mean_unique(items, draws).get_d();
  approx.sd = std::sqrt(var.get_d());
  return approx;
}

double madcd(const std::vector<double>& exact_cdf, long support_lo, const NormalApprox& approx) {
  if (exact_cdf.empty()) throw std::invalid_argument("empty support");
  double worst = 0.0;
  for (size_t i = 0; i < exact_cdf.size(); ++i) {
    double k = static_cast<double>(support_lo + static_cast<long>(i));
    double z = (k + approx.continuity_shift - approx.mean) / approx.sd;
    worst = std::max(worst, std::fabs(exact_cdf[i] - standard_normal_cdf(z)));
  }
  return worst;
}

std::vector<double> discretize_normal(const NormalApprox& approx, long support_lo,
                                      long support_hi) {
  if (support_hi < support_lo) throw std::invalid_argument("empty support");
  size_t n = static_cast<size_t>(support_hi - support_lo + 1);
  std::vector<double> mass(n);
  if (n == 1) {
    mass[0] = 1.0;
    return mass;
  }
  double shift = approx.continuity_shift;
  auto edge = [&](long k) {
    return standard_normal_cdf((static_cast<double>(k) + shift - approx.mean) / approx.sd);
  };
  mass[0] = edge(support_lo);
  for (size_t i = 1; i + 1 < n; ++i) {
    long k = support_lo + static_cast<long>(i);
    mass[i] = edge(k) - edge(k - 1);
  }
  mass[n - 1] = 1.0 - edge(support_hi - 1);
  return mass;
}

double jsd(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("probability vectors differ in length");
  double total = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    double m = 0.5 * (p[i] + q[i]);
    if (p[i] > 0.0) total += 0.5 * p[i] * std::log(p[i] / m);
    if (q[i] > 0.0) total += 0.5 * q[i] * std::log(q[i] / m);
  }
  return std::max(total, 0.0);
}

ExactProb binomial_pmf(const BinomialSpec& spec, unsigned long j) {
  if (spec.trials < 1 || spec.p <= 0 || spec.p >= 1) throw std::domain_error("invalid binomial spec");
  if (j > spec.trials) throw std::domain_error("outcome outside 0..n_b");
  BigInt c(spec.p.get_num()), d(spec.p.get_den());
  BigInt num = binomial_coeff(spec.trials, j);
  BigInt cp, qp, den;
  mpz_pow_ui(cp.get_mpz_t(), c.get_mpz_t(), j);
  BigInt q = d - c;
  mpz_pow_ui(qp.get_mpz_t(), q.get_mpz_t(), spec.trials - j);
  mpz_pow_ui(den.get_mpz_t(), d.get_mpz_t(), spec.trials);
  return ExactProb(num * cp * qp, den);
}

BinomialRules binomial_rules(const BinomialSpec& spec) {
  if (spec.trials < 1 || spec.p <= 0 || spec.p >= 1) throw std::domain_error("invalid binomial spec");
  BinomialRules out;
  Rational np = Rational(spec.trials) * spec.p;
  Rational nq = Rational(spec.trials) * (1 - spec.p);
  out.rule1 = np > 5 && nq > 5;
  Rational skew = (1 - 2 * spec.p) * (1 - 2 * spec.p) * 100;
  Rational bound = Rational(9) * Rational(spec.trials) * spec.p * (1 - spec.p);
  out.rule2 = skew < bound && spec.trials > 5;
  out.combined = out.rule1 && out.rule2;
  return out;
}

bool heuristic_single(unsigned long items, unsigned long draws) {
  if (items <= 5 || draws <= 5) return false;
  double n = static_cast<double>(items);
  double a = static_cast<double>(draws);
  return 1.4 * std::pow(n, 0.67) <= a && a <= 1.13 * std::pow(n, 1.19);
}

bool heuristic_category(unsigned long category_items, double mean_draws) {
  if (category_items < 14 || mean_draws < 9.0) return false;
  double n = static_cast<double>(category_items);
  return 1.4 * std::pow(n, 0.67) <= mean_draws && mean_draws <= 1.13 * std::pow(n - 8.0, 1.19);
}

ApproxReport approx_report(unsigned long items, unsigned long draws) {
  UniqueCountDistribution dist = distribution(items, draws);
  NormalApprox approx = normal_approx_for(items, draws);
  ApproxReport report;
  report.mean = approx.mean;
  report.sd = approx.sd;
  std::vector<double> cdf = exact_cdf_doubles(dist);
  report.madcd = madcd(cdf, 0, approx);
  std::vector<double> exact_pmf = pmf_doubles(dist);
  std::vector<double> normal_pmf = discretize_normal(approx, 0, static_cast<long>(dist.max_unique()));
  report.jsd = jsd(exact_pmf, normal_pmf);
  report.jsd_log2 = report.jsd / std::log(2.0);
  report.heuristic_pass = heuristic_single(items, draws);
  return report;
}

std::vector<UniqueCell> unique_grid(unsigned long items_lo, unsigned long items_hi,
                                    unsigned long draws_lo, unsigned long draws_hi,
                                    unsigned threads) {
  if (items_lo < 1 || items_lo > items_hi || draws_lo > draws_hi) {
    throw std::domain_error("invalid grid ranges");
  }
  size_t a_span = draws_hi - draws_lo + 1;
  size_t total = (items_hi - items_lo + 1) * a_span;
  std::vector<UniqueCell> cells(total);
  run_partitioned(total, threads, [&](size_t lo, size_t hi) {
    for (size_t idx = lo; idx < hi; ++idx) {
      unsigned long n = items_lo + idx / a_span;
      unsigned long a = draws_lo + idx % a_span;
      UniqueCell& cell = cells[idx];
      cell.items = n;
      cell.draws = a;
      cell.heuristic_pass = heuristic_single(n, a);
      if (n < 2 || a < 2) {
        cell.defined = false;
        continue;
      }
      ApproxReport report = approx_report(n, a);
      cell.defined = true;
      cell.madcd = report.madcd;
      cell.jsd = report.jsd;
    }
  });
  return cells;
}

std::vector<BinomialCell> binomial_grid(unsigned long trials_hi, unsigned long p_step_den,
                                        unsigned threads) {
  if (trials_hi < 1 || p_step_den < 2) throw std::domain_error("invalid binomial grid ranges");
  size_t p_count = p_step_den - 1;
  size_t total = trials_hi * p_count;
  std::vector<BinomialCell> cells(total);
  run_partitioned(total, threads, [&](size_t lo, size_t hi) {
    for (size_t idx = lo; idx < hi; ++idx) {
      unsigned long n = 1 + idx / p_count;
      unsigned long i = 1 + idx % p_count;
      BinomialCell& cell = cells[idx];
      cell.trials = n;
      cell.p = make_rational(BigInt(i), BigInt(p_step_den));
      BinomialSpec spec{n, cell.p};
      cell.rules = binomial_rules(spec);

      BigInt c(cell.p.get_num()), d(cell.p.get_den());
      BigInt q = d - c;
      BigInt den;
      mpz_pow_ui(den.get_mpz_t(), d.get_mpz_t(), n);
      // pmf numerators over den = d^n, built by the usual ratio recurrence
      BigInt num;
      mpz_pow_ui(num.get_mpz_t(), q.get_mpz_t(), n);
      std::vector<double> pmf(n + 1), cdf(n + 1);
      BigInt run(0);
      for (unsigned long j = 0; j <= n; ++j) {
        pmf[j] = ratio_double(num, den);
        run += num;
        cdf[j] = ratio_double(run, den);
        if (j < n) {
          num *= c * (n - j);
          BigInt divisor = q * (j + 1);
          mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), divisor.get_mpz_t());
        }
      }
      double pd = cell.p.get_d();
      NormalApprox approx;
      approx.mean = static_cast<double>(n) * pd;
      approx.sd = std::sqrt(static_cast<double>(n) * pd * (1.0 - pd));
      cell.madcd = madcd(cdf, 0, approx);
      std::vector<double> normal_pmf = discretize_normal(approx, 0, static_cast<long>(n));
      cell.jsd = jsd(pmf, normal_pmf);
    }
  });
  return cells;
}

BoundaryScan boundary_scan(unsigned long items_lo, unsigned long items_hi) {
  if (items_lo < 1 || items_lo > items_hi) throw std::domain_error("invalid boundary range");
  BoundaryScan scan;
  for (unsigned long n = items_lo; n <= items_hi; ++n) {
    double lower_bound = 1.4 * std::pow(static_cast<double>(n), 0.67);
    double upper_bound = 1.13 * std::pow(static_cast<double>(n), 1.19);
    unsigned long a_lower = std::max<unsigned long>(6, static_cast<unsigned long>(std::ceil(lower_bound)));
    auto a_upper_d = std::floor(upper_bound);
    if (n <= 5 || a_upper_d < static_cast<double>(a_lower)) continue;
    unsigned long a_upper = static_cast<unsigned long>(a_upper_d);
    if (!heuristic_single(n, a_lower) || !heuristic_single(n, a_upper)) continue;
    BoundaryPoint point;
    point.items = n;
    point.a_lower = a_lower;
    point.a_upper = a_upper;
    point.madcd_lower = approx_report(n, a_lower).madcd;
    point.madcd_upper = approx_report(n, a_upper).madcd;
    scan.points.push_back(point);
  }
  std::vector<double> xs, lo_ys, hi_ys;
  xs.reserve(scan.points.size());
  for (const BoundaryPoint& point : scan.points) {
    xs.push_back(static_cast<double>(point.items));
    lo_ys.push_back(point.madcd_lower);
    hi_ys.push_back(point.madcd_upper);
  }
  scan.slope_lower = ols_slope(xs, lo_ys);
  scan.slope_upper = ols_slope(xs, hi_ys);
  return scan;
}

}  // namespace bootuniq
