#include "bootuniq/multivariate.hpp"

#include <stdexcept>

#include "bootuniq/moments.hpp"

namespace bootuniq {

namespace {

// Iterates all compositions of `draws` into `parts` non-negative parts.
// Order: starts at (A, 0, ..., 0); deterministic.
class CompositionIterator {
 public:
  CompositionIterator(unsigned long draws, size_t parts)
      : a_(parts, 0), draws_(draws), done_(parts == 0) {
    if (!done_) a_[0] = draws;
  }

  bool done() const { return done_; }
  const std::vector<unsigned long>& value() const { return a_; }

  void advance() {
    size_t i = 0;
    while (i < a_.size() && a_[i] == 0) ++i;
    if (i + 1 >= a_.size()) {
      done_ = true;
      return;
    }
    unsigned long v = a_[i];
    a_[i] = 0;
    a_[0] = v - 1;
    a_[i + 1] += 1;
  }

 private:
  std::vector<unsigned long> a_;
  unsigned long draws_;
  bool done_;
};

void check_composition_cap(unsigned long draws, size_t parts, unsigned long long cap) {
  BigInt count = binomial_coeff(draws + parts - 1, parts - 1);
  if (count > BigInt(static_cast<unsigned long>(cap))) {
    throw ResourceLimitError("composition count " + count.get_str() + " exceeds cap " +
                             std::to_string(cap));
  }
}

BigInt multinomial(const std::vector<unsigned long>& parts) {
  BigInt out(1);
  unsigned long used = 0;
  for (unsigned long part : parts) {
    used += part;
    out *= binomial_coeff(used, part);
  }
  return out;
}

BigInt total_power(const CategoryProfile& profile, unsigned long draws) {
  BigInt den;
  mpz_ui_pow_ui(den.get_mpz_t(), profile.total(), draws);
  return den;
}

}  // namespace

unsigned long CategoryProfile::total() const {
  unsigned long sum = 0;
  for (unsigned long s : sizes) sum += s;
  return sum;
}

void CategoryProfile::validate() const {
  if (sizes.empty()) throw std::domain_error("profile needs at least one category");
  for (unsigned long s : sizes) {
    if (s == 0) throw std::domain_error("category sizes must be positive");
  }
}

ExactProb joint_pmf(const CategoryProfile& profile, unsigned long draws,
                    const std::vector<long>& k, unsigned long long composition_cap) {
  profile.validate();
  if (k.size() != profile.categories()) throw std::invalid_argument("vector length != category count");
  long k_sum = 0;
  for (size_t s = 0; s < k.size(); ++s) {
    if (k[s] < 0 || static_cast<unsigned long>(k[s]) > profile.sizes[s]) return ExactProb();
    k_sum += k[s];
  }
  if (static_cast<unsigned long>(k_sum) > draws) return ExactProb();

  check_composition_cap(draws, profile.categories(), composition_cap);
  BigInt inner(0);
  for (CompositionIterator it(draws, profile.categories()); !it.done(); it.advance()) {
    const std::vector<unsigned long>& a = it.value();
    BigInt term = multinomial(a);
    for (size_t s = 0; s < a.size() && term != 0; ++s) {
      term *= stirling2(a[s], static_cast<unsigned long>(k[s]));
    }
    inner += term;
  }
  BigInt num = inner;
  for (size_t s = 0; s < k.size(); ++s) {
    num *= falling_factorial(profile.sizes[s], static_cast<unsigned long>(k[s]));
  }
  return ExactProb(num, total_power(profile, draws));
}

JointUniqueDistribution joint_distribution(const CategoryProfile& profile, unsigned long draws,
                                           unsigned long long composition_cap) {
  profile.validate();
  check_composition_cap(draws, profile.categories(), composition_cap);
  size_t c = profile.categories();

  // inner[k] = sum over compositions of multinomial * prod_s S(a_s, k_s)
  std::map<std::vector<long>, BigInt> inner;
  std::vector<long> k(c);
  for (CompositionIterator it(draws, c); !it.done(); it.advance()) {
    const std::vector<unsigned long>& a = it.value();
    BigInt weight = multinomial(a);
    // walk the box of k vectors with nonzero S(a_s, k_s) and k_s <= N_s
    auto recurse = [&](auto&& self, size_t s, const BigInt& acc) -> void {
      if (s == c) {
        inner[k] += acc;
        return;
      }
      unsigned long hi = std::min<unsigned long>(profile.sizes[s], a[s]);
      unsigned long lo = a[s] == 0 ? 0 : 1;
      for (unsigned long ks = lo; ks <= hi; ++ks) {
        k[s] = static_cast<long>(ks);
        self(self, s + 1, acc * stirling2(a[s], ks));
      }
    };
    recurse(recurse, 0, weight);
  }

  JointUniqueDistribution joint;
  joint.profile = profile;
  joint.draws = draws;
  BigInt den = total_power(profile, draws);
  for (const auto& [vec, weight] : inner) {
    BigInt num = weight;
    for (size_t s = 0; s < c; ++s) {
      num *= falling_factorial(profile.sizes[s], static_cast<unsigned long>(vec[s]));
    }
    if (num != 0) joint.pmf.emplace(vec, ExactProb(num, den));
  }
  return joint;
}

Rational category_mean(const CategoryProfile& profile, unsigned long draws, size_t index) {
  profile.validate();
  if (index >= profile.categories()) throw std::out_of_range("category index out of range");
  BigInt n(profile.total());
  Rational q1 = rational_pow(make_rational(n - 1, n), draws);
  return profile.sizes[index] * (1 - q1);
}

Rational category_variance(const CategoryProfile& profile, unsigned long draws, size_t index) {
  profile.validate();
  if (index >= profile.categories()) throw std::out_of_range("category index out of range");
  BigInt n(profile.total());
  Rational ni(static_cast<unsigned long>(profile.sizes[index]));
  Rational q1 = rational_pow(make_rational(n - 1, n), draws);
  Rational q2 = rational_pow(make_rational(n - 2, n), draws);
  return ni * (ni - 1) * q2 + ni * q1 - ni * ni * q1 * q1;
}

Rational category_covariance(const CategoryProfile& profile, unsigned long draws, size_t i,
                             size_t j) {
  profile.validate();
  if (i >= profile.categories() || j >= profile.categories()) {
    throw std::out_of_range("category index out of range");
  }
  if (i == j) throw std::invalid_argument("covariance needs distinct categories");
  BigInt n(profile.total());
  Rational q1 = rational_pow(make_rational(n - 1, n), draws);
  Rational q2 = rational_pow(make_rational(n - 2, n), draws);
  return Rational(profile.sizes[i]) * Rational(profile.sizes[j]) * (q2 - q1 * q1);
}

UniqueCountDistribution marginal_category_distribution(const CategoryProfile& profile,
                                                       unsigned long draws, size_t index) {
  profile.validate();
  if (index >= profile.categories()) throw std::out_of_range("category index out of range");
  unsigned long ns = profile.sizes[index];
  unsigned long rest = profile.total() - ns;

  UniqueCountDistribution dist;
  dist.items = ns;
  dist.draws = draws;
  BigInt den = total_power(profile, draws);
  unsigned long kmax = std::min(ns, draws);
  dist.probs.reserve(kmax + 1);
  for (unsigned long x = 0; x <= kmax; ++x) {
    // falling(N_s, x) * sum_a C(A, a) (N - N_s)^(A - a) S(a, x) over N^A
    BigInt inner(0);
    for (unsigned long a = x; a <= draws; ++a) {
      BigInt restpow;
      mpz_ui_pow_ui(restpow.get_mpz_t(), rest, draws - a);
      inner += binomial_coeff(draws, a) * restpow * stirling2(a, x);
    }
    dist.probs.emplace_back(falling_factorial(ns, x) * inner, den);
  }
  return dist;
}

bool pnqd_negativity_check(const CategoryProfile& profile, unsigned long draws) {
  profile.validate();
  if (profile.total() < 2) return true;  // no indicator pairs
  BigInt n(profile.total());
  Rational q1 = rational_pow(make_rational(n - 1, n), draws);
  Rational q2 = rational_pow(make_rational(n - 2, n), draws);
  // q2 = P(both absent), q1 = P(one absent); covariance sign and the quadrant
  // inequality coincide here
  return q2 <= q1 * q1;
}

}  // namespace bootuniq
