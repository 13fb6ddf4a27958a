#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "gbw/expsum.hpp"
#include "gbw/parallel.hpp"

namespace gbw {

/// Every prime factor of n exceeds z. 1 is always rough; 0 only when z < 2.
bool is_rough(std::int64_t n, double z);

/// U(C, z): members of C with no prime factor <= z.
std::vector<std::int64_t> sifted_set(std::span<const std::int64_t> C, double z);

struct BuchstabTriple {
  std::complex<double> rough_u2;    // S(C, u2, theta)
  std::complex<double> rough_u1;    // S(C, u1, theta)
  std::complex<double> subtracted;  // sum over u1 < p <= u2
  double residual;                  // |rough_u2 - (rough_u1 - subtracted)|
};

/// One Buchstab step on exponential sums. The p-term runs over c = p m in C
/// with m free of primes below p, and carries the phase e(p m theta).
BuchstabTriple buchstab_step(std::span<const std::int64_t> C, double u1, double u2, double theta);

enum class SieveVariant { upper, lower, mobius };

/// lambda(d) on squarefree d built from the sifting primes <= z.
struct SieveWeights {
  double y = 0.0;  // support bound; infinity for the Mobius weights
  double z = 0.0;
  SieveVariant variant = SieveVariant::upper;
  bool exclude_2_5 = true;
  std::vector<std::pair<std::int64_t, int>> values;  // sorted by d

  int at(std::int64_t d) const;
};

/// Sifting primes p <= z, without 2 and 5 unless requested.
std::vector<std::int64_t> sifting_primes(double z, bool exclude_2_5 = true);

/// Beta-sieve weights (beta = 2, dimension 1). With p1 > p2 > ... > pr,
/// lambda+(d) = mu(d) when p1...p_{m-1} p_m^3 < y for every odd m, and
/// lambda-(d) = mu(d) when the same holds for every even m.
SieveWeights build_lambda(double y, double z, SieveVariant variant, bool exclude_2_5 = true);

/// Untruncated Mobius weights on the divisors of P(z).
SieveWeights mobius_weights(double z, bool exclude_2_5 = true);

/// sum_t lambda(t) sum_{n in C, t | n} e(n theta) over t | P(z).
std::complex<double> lambda_weighted_sum(std::span<const std::int64_t> C, double z, double theta,
                                         const SieveWeights& w);

/// out[n] = sum_{d | n} lambda(d) for 1 <= n <= n_max (out[0] unused).
std::vector<std::int64_t> divisor_weight_sums(const SieveWeights& w, std::int64_t n_max, Exec exec = Exec::parallel);

struct SandwichReport {
  std::int64_t checked = 0;
  std::int64_t violations = 0;
  std::int64_t first_violation = 0;
};

/// Checks sum lambda- <= [n free of sifting primes] <= sum lambda+ for 1 <= n <= n_max.
SandwichReport sandwich_check(const SieveWeights& lower, const SieveWeights& upper, std::int64_t n_max,
                              Exec exec = Exec::parallel);

struct FundamentalLemmaReport {
  double y = 0.0;
  double z = 0.0;
  double s = 0.0;
  double upper_sum = 0.0;
  double lower_sum = 0.0;
  double product = 0.0;
  double upper_ratio_minus_1 = 0.0;
  double lower_ratio_minus_1 = 0.0;
  double reference_scale = 0.0;  // e^(-s)
  std::int64_t upper_terms = 0;
  std::int64_t lower_terms = 0;
};

/// Compares sum_d lambda(d) g(d) with prod_p (1 - g(p)) for both variants.
/// `g` gives g(p) at primes and is extended multiplicatively. The weights are
/// streamed, never stored, so large y is cheap in memory.
FundamentalLemmaReport fundamental_lemma_check(const std::function<double(std::int64_t)>& g, double y, double z,
                                               bool exclude_2_5 = true);

enum class TypeSumKind { E0, E1, E2 };

struct TypeSumParams {
  double epsilon = 0.01;
  double theta1 = 9.0 / 25.0 + 0.02;
  double theta2 = 17.0 / 40.0 - 0.02;

  static TypeSumParams from_epsilon(double eps) { return {eps, 9.0 / 25.0 + 2 * eps, 17.0 / 40.0 - 2 * eps}; }
};

/// E0, E1 or E2 at l = 1 over the full sets A and B, phases on n = p m.
SiftedSupport build_type_sum(const FamilyConfig& cfg, TypeSumKind kind, const TypeSumParams& params = {});

namespace reference {
std::vector<std::int64_t> divisor_weight_sums(const SieveWeights& w, std::int64_t n_max);
/// Definition order: sum_n e(n theta) sum_{t | n, t | P(z)} lambda(t).
std::complex<double> lambda_weighted_sum(std::span<const std::int64_t> C, double z, double theta,
                                         const SieveWeights& w);
}  // namespace reference

}  // namespace gbw
