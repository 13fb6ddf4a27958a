#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string_view>
#include <vector>

#include "gbw/families.hpp"
#include "gbw/parallel.hpp"

namespace gbw {

enum class SumLabel { S_A, S_B, S_AcapP, S_c0, S_Q_full, S_Q_1, S_Q_2, S_Q_3, S_d_z, custom };

std::string_view label_name(SumLabel label);

struct Term {
  std::int64_t n;
  double weight;
};

/// Finite weighted support of an exponential sum sum_n w(n) e(n theta).
/// Entries are sorted by n with unique n.
struct WeightedSupport {
  SumLabel label = SumLabel::custom;
  std::vector<Term> entries;

  /// Sorts and merges duplicate n by adding weights; drops exact zeros.
  static WeightedSupport from_terms(SumLabel label, std::vector<Term> terms);

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
  double total_weight() const;
  double l1_mass() const;
  std::int64_t min_n() const { return entries.front().n; }
  std::int64_t max_n() const { return entries.back().n; }
};

/// values[a % X] = sum_n w(n) e(n a / X) for 1 <= a <= X.
struct ExpSumGrid {
  std::int64_t X = 0;
  std::vector<std::complex<double>> values;

  std::complex<double> at(std::int64_t a) const { return values[static_cast<std::size_t>(((a % X) + X) % X)]; }
};

WeightedSupport build_S_A(const FamilyConfig& cfg);
WeightedSupport build_S_A(const ShortIntervalWindow& window);
WeightedSupport build_S_AcapP(const FamilyConfig& cfg, const PrimeTable& table);
WeightedSupport build_S_AcapP(const ShortIntervalWindow& window, const PrimeTable& table);
/// Unit weights on primes in [lo, hi].
WeightedSupport build_S_P(const PrimeTable& table, std::int64_t lo, std::int64_t hi);

/// (1/gamma) (log p) p^(1-gamma) on Piatetski-Shapiro primes in Int(N0).
WeightedSupport build_S_c0(const FamilyConfig& cfg, const PrimeTable& table);
/// Same weights on every prime of Int(N0).
WeightedSupport build_S_c0_unrestricted(const FamilyConfig& cfg, const PrimeTable& table);
/// log p on every prime of Int(N0).
WeightedSupport build_S_P_log(const FamilyConfig& cfg, const PrimeTable& table);

/// D = X^(1/2) (log X)^(-C0).
double divisor_cutoff_D(std::int64_t X, double C0);

struct SQSplit {
  std::array<WeightedSupport, 3> parts;
  double D = 0.0;
  std::vector<std::int64_t> primes;
  /// Integer chi sums over d <= D, D < d <= X/D and d > X/D for each prime.
  std::vector<std::array<std::int64_t, 3>> coefficients;
};

/// Splits the divisors d of p - 1 by size. Weights are chi(d) log p summed
/// per range, so the parts add up to divisor_chi_sum(p - 1) log p.
SQSplit build_S_Q_split(const FamilyConfig& cfg, const PrimeTable& table, const Factorizer& fac = default_factorizer());

enum class QRoute { two_squares, divisor_sum };

/// Full S_Q. Weights r(p-1)/4 log p by default; `times_four` restores the
/// r(p-1) log p normalization.
WeightedSupport build_S_Q_full(const FamilyConfig& cfg, const PrimeTable& table, QRoute route, bool times_four = false,
                               const Factorizer& fac = default_factorizer());

struct SiftedSupport {
  WeightedSupport combined;
  WeightedSupport a_part;
  WeightedSupport b_part;
  double b_scale;  // kappa_A |A| / X
};

/// Support n in [0, X/d) whose prime factors all exceed z, weighted by
/// w_{nd} = 1_A(nd) - kappa_A |A| / X.
SiftedSupport build_sifted(const FamilyConfig& cfg, std::int64_t d, double z);

/// e(n theta), with n theta reduced mod 1 in long double.
std::complex<double> e_phase(std::int64_t n, double theta);

std::complex<double> eval_point(const WeightedSupport& w, double theta);
/// At theta = a / q with exact integer phase reduction.
std::complex<double> eval_rational(const WeightedSupport& w, std::int64_t a, std::int64_t q);
/// At theta = c / q + xi.
std::complex<double> eval_shifted(const WeightedSupport& w, std::int64_t c, std::int64_t q, double xi);

ExpSumGrid grid_eval(const WeightedSupport& w, std::int64_t X);

/// Y^(-log 9 / log 10) |sum_{n < Y, digits != a0} e(n theta)| with Y = 10^m.
double F_Y(double theta, int m, int a0);

namespace reference {
/// Direct O(X |w|) evaluation of every grid point.
ExpSumGrid grid_eval(const WeightedSupport& w, std::int64_t X, Exec exec = Exec::parallel);
}  // namespace reference

}  // namespace gbw
