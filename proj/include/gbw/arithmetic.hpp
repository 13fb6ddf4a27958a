#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace gbw {

/// Non-principal character mod 4.
int chi4(std::int64_t n);

struct PrimePower {
  std::int64_t p;
  int e;
};
using Factorization = std::vector<PrimePower>;

/// Trial division by sieved primes; inputs above bound() throw
/// needs-factorization and must be factored by the caller.
class Factorizer {
 public:
  explicit Factorizer(std::int64_t bound = 10'000'000);
  Factorization operator()(std::int64_t n) const;
  std::int64_t bound() const { return bound_; }

 private:
  std::int64_t bound_;
  std::vector<std::int64_t> primes_;
};

const Factorizer& default_factorizer();

std::vector<std::int64_t> divisors(const Factorization& f);
int mobius(const Factorization& f);
int mobius(std::int64_t n);
std::int64_t euler_phi(const Factorization& f);
std::int64_t euler_phi(std::int64_t n);
std::int64_t smallest_prime_factor(std::int64_t n);

/// sum_{d | n} chi4(d); multiplicative and nonnegative.
std::int64_t divisor_chi_sum(const Factorization& f);
std::int64_t divisor_chi_sum(std::int64_t n);

/// Signed ordered pairs (x, y) with x^2 + y^2 = n; equals 4 * divisor_chi_sum(n).
std::int64_t r_two_squares(const Factorization& f);
std::int64_t r_two_squares(std::int64_t n);

/// c_d(c, q, l) = sum over 1 <= s <= q, gcd(s, q) = 1, s = l mod gcd(q, d) of e(c s / q).
std::complex<double> ramanujan_like_sum(std::int64_t c, std::int64_t q, std::int64_t d, std::int64_t l);

struct SingularSeriesValue {
  double value;
  std::int64_t cutoff;
  double truncation_bound;
};

/// Truncated Euler product over p <= cutoff. Even N0 throws even-input.
SingularSeriesValue singular_series(std::int64_t N0, std::int64_t cutoff);
SingularSeriesValue singular_series_star(std::int64_t N0, std::int64_t cutoff);

namespace reference {
/// Direct multiplication in ascending (or descending) prime order.
double singular_series(std::int64_t N0, std::int64_t cutoff);
double singular_series_star(std::int64_t N0, std::int64_t cutoff, bool descending = false);
}  // namespace reference

/// Buchstab omega on a uniform grid over [1, u_max]. Solves
/// u w'(u) = w(u - 1) - w(u) for u > 2 from w(u) = 1/u on [1, 2].
class BuchstabTable {
 public:
  BuchstabTable(double u_max, double step, std::vector<double> values);

  double u_max() const { return u_max_; }
  double step() const { return step_; }
  const std::vector<double>& values() const { return values_; }

  /// Exact 1/u on [1, 2], linear interpolation above; throws out-of-range
  /// outside [1, u_max].
  double operator()(double u) const;

  /// Same as operator() but continues the exact branch 1/u to (0, 1).
  double extended(double u) const;

 private:
  double u_max_;
  double step_;
  std::vector<double> values_;
};

BuchstabTable buchstab_omega(double u_max, double step);

}  // namespace gbw
