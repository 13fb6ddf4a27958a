#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "gbw/arithmetic.hpp"
#include "gbw/primes.hpp"

namespace gbw {

/// gamma* = 8/9 + (2/3) log(10/9) / log 10
inline const double kGammaStar = 8.0 / 9.0 + (2.0 / 3.0) * std::log(10.0 / 9.0) / std::log(10.0);

/// Piatetski-Shapiro exponent c0. Decimal strings parse to an exact
/// rational u/v, decided by big-integer comparison of n^u with p^v;
/// other values fall back to 128-bit floats with a guard band.
class PsExponent {
 public:
  PsExponent() : PsExponent(1, 1) {}
  PsExponent(std::int64_t num, std::int64_t den);
  static PsExponent from_string(const std::string& text);
  static PsExponent from_double(double c0);

  double value() const { return value_; }
  double gamma() const { return 1.0 / value_; }
  bool exact() const { return num_ > 0; }
  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  const std::string& text() const { return text_; }

 private:
  double value_ = 1.0;
  std::int64_t num_ = 1;
  std::int64_t den_ = 1;
  std::string text_ = "1";
};

struct PsDecision {
  bool member;
  bool undecidable;
};

/// Is p = floor(n^c0) for some integer n?
PsDecision ps_classify(std::int64_t p, const PsExponent& c0);
bool ps_member(std::int64_t p, const PsExponent& c0);

struct ScaleChoice {
  int k;
  std::int64_t X;
};

/// The power of ten X = 10^k with 2X <= N0 < 20X. N0 < 20 throws too-small.
ScaleChoice choose_X(std::int64_t N0);

/// Interval with endpoints num/den and per-end closedness.
struct RationalInterval {
  std::int64_t lo_num = 0;
  std::int64_t hi_num = 0;
  std::int64_t den = 1;
  bool lo_closed = false;
  bool hi_closed = true;

  double lower() const { return static_cast<double>(lo_num) / static_cast<double>(den); }
  double upper() const { return static_cast<double>(hi_num) / static_cast<double>(den); }
  double length() const { return upper() - lower(); }
  bool contains(std::int64_t n) const;
  std::int64_t first_int() const;
  std::int64_t last_int() const;
};

/// Int(N0) = (N0/2 - X/4, N0/2 - X/8].
RationalInterval interval_Int(std::int64_t N0, std::int64_t X);
/// The variant [N0/8 - X/8, N0/4 - X/4].
RationalInterval interval_Int_alt(std::int64_t N0, std::int64_t X);

struct FamilyConfig {
  int a0 = 7;
  PsExponent c0 = PsExponent(21, 20);
  int k = 0;
  std::int64_t X = 0;
  std::int64_t N0 = 0;
  double C0 = 1.0;
  double delta0 = 0.04;
  int H = 3;

  /// Fills k and X from N0 and validates.
  static FamilyConfig make(int a0, PsExponent c0, std::int64_t N0, double C0 = 1.0, double delta0 = 0.04, int H = 3);

  double gamma0() const { return c0.gamma(); }
  double kappa_A() const;
  std::int64_t size_A() const;
  RationalInterval Int() const { return interval_Int(N0, X); }
  /// Throws config on any violated invariant.
  void validate() const;
};

std::vector<std::int64_t> ps_primes_in(const RationalInterval& iv, const PsExponent& c0, const PrimeTable& table);

struct QuadraticPrime {
  std::int64_t p;
  std::int64_t r;  // r(p - 1)
};

/// Primes p in the interval with r(p - 1) > 0.
std::vector<QuadraticPrime> quadratic_primes_in(const RationalInterval& iv, const PrimeTable& table,
                                                const Factorizer& fac = default_factorizer());

/// None of the `digits` base-10 digits of n (leading zeros kept) equals a0.
bool digit_member(std::int64_t n, int digits, int a0);
bool digit_member(std::int64_t n, const FamilyConfig& cfg);

class DigitSet {
 public:
  DigitSet(int k, int a0) : k_(k), a0_(a0) {}
  bool contains(std::int64_t n) const { return digit_member(n, k_, a0_); }
  std::int64_t size() const;
  std::vector<std::int64_t> members() const;

 private:
  int k_;
  int a0_;
};

struct DigitSplit {
  std::int64_t high;  // top H digits times 10^(k-H)
  std::int64_t low;   // lower k-H digits
};
DigitSplit split_digits(std::int64_t n, int k, int H);

struct ShortIntervalWindow {
  std::int64_t n_star = 0;
  std::int64_t width = 0;  // 10^(k-H)
  int k = 0;
  int H = 0;
  int a0 = 0;

  bool in_B_star(std::int64_t n) const { return n >= n_star && n < n_star + width; }
  bool in_A_star(std::int64_t n) const { return in_B_star(n) && digit_member(n, k, a0); }
  std::vector<std::int64_t> A_star() const;
};

/// Builds n*_H and checks |n* - 5 10^(k-1)| <= 1.5 10^(k-2) and the
/// suffix property. H < 3 throws window-too-short.
ShortIntervalWindow construct_window(const FamilyConfig& cfg);

}  // namespace gbw
