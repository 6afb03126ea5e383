// Acceptance gate: ten end-to-end checks, one line each, nonzero exit when
// any fail. Tolerances and runtime budgets are pinned in the lambdas below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "bootuniq/approx.hpp"
#include "bootuniq/moments.hpp"
#include "bootuniq/multivariate.hpp"
#include "bootuniq/simulate.hpp"
#include "enum_oracle.hpp"

using namespace bootuniq;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

std::vector<std::vector<unsigned long>> profiles_with_total(unsigned long total,
                                                            size_t max_parts) {
  std::vector<std::vector<unsigned long>> out;
  std::vector<unsigned long> cur;
  auto rec = [&](auto&& self, unsigned long left) -> void {
    if (left == 0) {
      if (!cur.empty()) out.push_back(cur);
      return;
    }
    if (cur.size() == max_parts) return;
    for (unsigned long s = 1; s <= left; ++s) {
      cur.push_back(s);
      self(self, left - s);
      cur.pop_back();
    }
  };
  rec(rec, total);
  return out;
}

Outcome check_enumeration() {
  for (unsigned long n = 1; n <= 6; ++n)
    for (unsigned long a = 0; a <= 6; ++a) {
      auto tallies = oracle::presence_tallies(n, a);
      auto expected = oracle::scalar_pmf(n, a, tallies);
      auto dist = distribution(n, a);
      if (dist.probs.size() != expected.size())
        return {false, "support size mismatch at N=" + std::to_string(n) + " A=" + std::to_string(a)};
      for (size_t k = 0; k < expected.size(); ++k)
        if (!(dist.probs[k] == expected[k]))
          return {false, "pmf mismatch at N=" + std::to_string(n) + " A=" + std::to_string(a) +
                             " k=" + std::to_string(k)};
    }
  return {true, "exact pmf equals exhaustive enumeration for all N, A <= 6"};
}

Outcome check_normalization() {
  for (unsigned long n = 1; n <= 60; ++n)
    for (unsigned long a = 0; a <= 60; ++a) {
      auto dist = distribution(n, a);
      Rational total(0);
      for (const auto& p : dist.probs) total += p.rational();
      if (total != 1)
        return {false, "pmf sum != 1 at N=" + std::to_string(n) + " A=" + std::to_string(a)};
    }
  return {true, "pmf sums to exactly 1 for all N, A <= 60"};
}

Outcome check_moments() {
  for (unsigned long n = 1; n <= 20; ++n)
    for (unsigned long a = 0; a <= 20; ++a) {
      auto dist = distribution(n, a);
      if (mean_unique(n, a) != brute_moment(dist, 1, false) ||
          variance_unique(n, a) != brute_moment(dist, 2, true))
        return {false, "closed-form mean/variance mismatch at N=" + std::to_string(n) +
                           " A=" + std::to_string(a)};
      for (unsigned long t = 0; t <= 5; ++t) {
        if (raw_moment(n, a, t) != brute_moment(dist, t, false))
          return {false, "raw moment mismatch at N=" + std::to_string(n) +
                             " A=" + std::to_string(a) + " t=" + std::to_string(t)};
        if (central_moment(n, a, t) != brute_moment(dist, t, true))
          return {false, "central moment mismatch at N=" + std::to_string(n) +
                             " A=" + std::to_string(a) + " t=" + std::to_string(t)};
      }
    }
  return {true, "closed-form moments equal brute pmf sums for N, A <= 20, t <= 5"};
}

Outcome check_lemmas() {
  for (unsigned long a = 0; a <= 12; ++a)
    for (unsigned long k = 0; k <= 12; ++k)
      for (unsigned long t = 0; t <= 4; ++t)
        if (!check_stirling_power_identity(a, k, t))
          return {false, "power identity fails at A=" + std::to_string(a) +
                             " k=" + std::to_string(k) + " t=" + std::to_string(t)};
  for (unsigned long n = 1; n <= 20; ++n)
    for (unsigned long a = 0; a <= 20; ++a)
      for (unsigned long w = 0; w <= 6; ++w)
        if (!check_falling_sum_identity(n, a, w, std::max(n, a)))
          return {false, "falling-sum identity fails at N=" + std::to_string(n) +
                             " A=" + std::to_string(a) + " w=" + std::to_string(w)};
  for (unsigned long n = 1; n <= 50; ++n)
    for (unsigned long a = 0; a <= 50; ++a) {
      BigInt total(0);
      auto row = stirling2_row(a);
      for (unsigned long k = 0; k <= std::min(n, a); ++k)
        total += falling_factorial(n, k) * row[k];
      BigInt expected;
      mpz_ui_pow_ui(expected.get_mpz_t(), n, a);
      if (total != expected)
        return {false, "falling-Stirling sum != N^A at N=" + std::to_string(n) +
                           " A=" + std::to_string(a)};
    }
  return {true, "both summation identities hold (A, k <= 12, t <= 4; N, A <= 20, w <= 6; "
                "w = 0 case reproduces N^A for N, A <= 50)"};
}

Outcome check_asymptotics() {
  AsymptoticRegime regime{1.0};
  double exact_mean = to_double(mean_unique(1000, 1000));
  double exact_var = to_double(variance_unique(1000, 1000));
  double mean_gap = std::fabs(asymptotic_mean(1000, regime) - exact_mean) / exact_mean;
  double var_gap = std::fabs(asymptotic_variance(1000, regime) - exact_var) / exact_var;
  std::ostringstream os;
  os << "at N = 1000, alpha = 1: relative mean gap " << mean_gap << " < 0.001, variance gap "
     << var_gap << " < 0.01";
  return {mean_gap < 1e-3 && var_gap < 1e-2, os.str()};
}

Outcome check_binomial_scan() {
  auto cells = binomial_grid(400, 200, 1);
  double worst = 0.0;
  unsigned long worst_n = 0;
  for (const auto& cell : cells) {
    if (!cell.rules.combined) continue;
    if (cell.madcd > worst) {
      worst = cell.madcd;
      worst_n = cell.trials;
    }
  }
  std::ostringstream os;
  os << "max in-region binomial MADCD " << worst << " (at n_b = " << worst_n
     << ") within [0.017, 0.0225]";
  return {worst >= 0.017 && worst <= 0.0225, os.str()};
}

Outcome check_unique_scan() {
  auto cells = unique_grid(1, 150, 1, 150, 1);
  double worst_madcd = 0.0, worst_jsd = 0.0;
  for (const auto& cell : cells) {
    if (!cell.heuristic_pass || !cell.defined) continue;
    worst_madcd = std::max(worst_madcd, cell.madcd);
    worst_jsd = std::max(worst_jsd, cell.jsd);
  }
  std::ostringstream os;
  os << "in-region max MADCD " << worst_madcd << " <= 0.0205, max JSD " << worst_jsd
     << " <= 0.07 over N, A <= 150";
  return {worst_madcd > 0.0 && worst_madcd <= 0.0205 && worst_jsd > 0.0 && worst_jsd <= 0.07,
          os.str()};
}

Outcome check_category_rule_floors() {
  unsigned long accepted = 0;
  for (unsigned long n = 1; n <= 500; ++n)
    for (unsigned long tenths = 0; tenths <= 20000; ++tenths) {
      double a_bar = static_cast<double>(tenths) / 10.0;
      if (!heuristic_category(n, a_bar)) continue;
      ++accepted;
      if (a_bar < 9.0 || n < 14)
        return {false, "rule accepts N_s=" + std::to_string(n) + " a_bar=" + std::to_string(a_bar)};
    }
  std::ostringstream os;
  os << "category rule accepts " << accepted
     << " grid points (N_s <= 500, a_bar <= 2000 in 0.1 steps), none below a_bar = 9 or N_s = 14";
  return {accepted > 0, os.str()};
}

Outcome check_multivariate() {
  for (unsigned long total = 1; total <= 8; ++total)
    for (unsigned long a = 0; a <= 8; ++a) {
      auto tallies = oracle::presence_tallies(total, a);
      for (const auto& sizes : profiles_with_total(total, 3)) {
        CategoryProfile profile{sizes};
        auto joint = joint_distribution(profile, a);
        auto expected = oracle::joint_pmf(profile, a, tallies);
        if (joint.pmf.size() != expected.size()) return {false, "joint support mismatch"};
        Rational sum(0);
        for (const auto& [k, p] : joint.pmf) {
          sum += p.rational();
          auto it = expected.find(k);
          if (it == expected.end() || !(it->second == p))
            return {false, "joint pmf mismatch against enumeration (total=" +
                               std::to_string(total) + ", A=" + std::to_string(a) + ")"};
        }
        if (sum != 1) return {false, "joint pmf does not sum to 1"};

        for (size_t i = 0; i < profile.categories(); ++i) {
          Rational mean(0), second(0);
          for (const auto& [k, p] : joint.pmf) {
            mean += Rational(k[i]) * p.rational();
            second += Rational(k[i]) * Rational(k[i]) * p.rational();
          }
          if (category_mean(profile, a, i) != mean) return {false, "category mean mismatch"};
          if (category_variance(profile, a, i) != second - mean * mean)
            return {false, "category variance mismatch"};
          for (size_t j = i + 1; j < profile.categories(); ++j) {
            Rational cross(0), mean_j(0);
            for (const auto& [k, p] : joint.pmf) {
              cross += Rational(k[i]) * Rational(k[j]) * p.rational();
              mean_j += Rational(k[j]) * p.rational();
            }
            Rational cov = category_covariance(profile, a, i, j);
            if (cov != cross - mean * mean_j) return {false, "category covariance mismatch"};
            if (cov > 0) return {false, "positive cross-covariance found"};
          }
        }
      }
    }
  return {true, "joint pmf, marginal moment formulas, and covariance signs verified against "
                "enumeration for all profiles with N <= 8, C <= 3, A <= 8"};
}

Outcome check_monte_carlo() {
  struct ScalarCase {
    unsigned long items, draws;
    uint64_t seed;
  };
  double worst = 0.0;
  for (ScalarCase c : std::vector<ScalarCase>{{4, 4, 1001}, {10, 10, 1002}, {20, 30, 1003}}) {
    SimConfig config{c.seed, 1000000, {c.items}, c.draws};
    auto emp = empirical_distribution(config, 1);
    auto rerun = empirical_distribution(config, 1);
    if (!(emp.counts == rerun.counts)) return {false, "rerun tallies differ"};
    double tv = tv_distance(emp, distribution(c.items, c.draws));
    worst = std::max(worst, tv);
    if (tv >= 0.005)
      return {false, "TV " + std::to_string(tv) + " >= 0.005 at N=" + std::to_string(c.items) +
                         " A=" + std::to_string(c.draws)};
  }

  SimConfig joint_config{1004, 1000000, {2, 2}, 2};
  auto emp = empirical_distribution(joint_config, 1);
  auto rerun = empirical_distribution(joint_config, 1);
  if (!(emp.counts == rerun.counts)) return {false, "joint rerun tallies differ"};
  double tv = tv_distance(emp, joint_distribution(CategoryProfile{{2, 2}}, 2));
  worst = std::max(worst, tv);
  if (tv >= 0.005) return {false, "joint TV " + std::to_string(tv) + " >= 0.005"};

  std::ostringstream os;
  os << "10^6-replicate TV distances all < 0.005 (worst " << worst
     << ") for (4,4), (10,10), (20,30), joint (2,2) A=2; reruns bit-identical";
  return {true, os.str()};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria{
      {"exact pmf vs enumeration", 10.0, check_enumeration},
      {"normalization", 30.0, check_normalization},
      {"moment identities", 60.0, check_moments},
      {"summation lemmas", 60.0, check_lemmas},
      {"asymptotic regime", 10.0, check_asymptotics},
      {"binomial baseline scan", 300.0, check_binomial_scan},
      {"unique-count scan", 1800.0, check_unique_scan},
      {"category rule floors", 120.0, check_category_rule_floors},
      {"multivariate laws", 120.0, check_multivariate},
      {"seeded Monte Carlo", 600.0, check_monte_carlo},
  };

  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome outcome = criteria[i].run();
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_budget = elapsed <= criteria[i].budget_seconds;
    bool pass = outcome.ok && in_budget;
    if (!pass) ++failures;
    std::printf("criterion %2zu [%s]: %s (%.2fs/%.0fs) %s\n", i + 1, criteria[i].name,
                pass ? "PASS" : "FAIL", elapsed, criteria[i].budget_seconds,
                outcome.detail.c_str());
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
