#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace bootuniq {

using BigInt = mpz_class;
using Rational = mpq_class;

// Thrown when a request exceeds a documented resource cap (CLI exit code 3).
class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

// num/den as a canonical rational. gmpxx does not canonicalize two-argument
// constructions, so this is the one sanctioned way to build from a pair.
inline Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational rational_pow(const Rational& base, unsigned long e) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), e);
  return out;  // base canonical => powers share no new factors
}

inline double to_double(const Rational& r) { return r.get_d(); }

// An exact probability: canonical rational confined to [0, 1].
class ExactProb {
 public:
  ExactProb() : value_(0) {}
  explicit ExactProb(Rational v) : value_(std::move(v)) { validate(); }
  ExactProb(const BigInt& num, const BigInt& den) : value_(make_rational(num, den)) { validate(); }

  const Rational& rational() const { return value_; }
  BigInt numerator() const { return BigInt(value_.get_num()); }
  BigInt denominator() const { return BigInt(value_.get_den()); }
  double to_double() const { return value_.get_d(); }
  std::string str() const { return value_.get_str(); }  // "num/den", or "num" when den == 1

  friend bool operator==(const ExactProb& a, const ExactProb& b) { return a.value_ == b.value_; }
  friend bool operator!=(const ExactProb& a, const ExactProb& b) { return a.value_ != b.value_; }

 private:
  void validate() const {
    if (value_ < 0 || value_ > 1) throw std::domain_error("probability outside [0, 1]: " + value_.get_str());
  }
  Rational value_;
};

}  // namespace bootuniq
