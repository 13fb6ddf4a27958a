#include <algorithm>
#include <cmath>

#include "gbw/error.hpp"
#include "gbw/primes.hpp"
#include "gbw/sieve.hpp"

namespace gbw {

SiftedSupport build_type_sum(const FamilyConfig& cfg, TypeSumKind kind, const TypeSumParams& params) {
  const double X = static_cast<double>(cfg.X);
  const double z0 = std::pow(X, params.theta2 - params.theta1);
  double p_lo = z0;
  double p_hi = X;
  if (kind == TypeSumKind::E1) {
    p_lo = std::max(p_lo, std::pow(X, params.theta1));
    p_hi = std::pow(X, params.theta2);
  } else if (kind == TypeSumKind::E2) {
    p_lo = std::max(p_lo, std::pow(X, 1.0 - params.theta2));
    p_hi = std::pow(X, 1.0 - params.theta1);
  }
  if (kind != TypeSumKind::E0) p_hi = std::min(p_hi, std::sqrt(X));  // p <= X / p

  // smallest prime factor table for the cofactors m < X / p_lo
  const auto m_limit = static_cast<std::int64_t>(std::ceil(X / std::max(p_lo, 2.0))) + 1;
  std::vector<std::int64_t> spf(static_cast<std::size_t>(std::max<std::int64_t>(m_limit, 2)), 0);
  for (std::int64_t i = 2; i < m_limit; ++i) {
    if (spf[static_cast<std::size_t>(i)]) continue;
    for (std::int64_t j = i; j < m_limit; j += i)
      if (!spf[static_cast<std::size_t>(j)]) spf[static_cast<std::size_t>(j)] = i;
  }

  SiftedSupport out;
  out.b_scale = cfg.kappa_A() * static_cast<double>(cfg.size_A()) / X;
  std::vector<Term> a_terms, b_terms, both;
  for (const std::int64_t p : primes_up_to(static_cast<std::int64_t>(std::floor(p_hi)))) {
    const auto pd = static_cast<double>(p);
    if (pd < p_lo) continue;
    const double z = kind == TypeSumKind::E0 ? z0 : pd;
    for (std::int64_t m = 1; p * m < cfg.X; ++m) {
      if (m > 1 && static_cast<double>(spf[static_cast<std::size_t>(m)]) <= z) continue;
      const std::int64_t n = p * m;
      const double in_a = digit_member(n, cfg) ? 1.0 : 0.0;
      if (in_a != 0.0) a_terms.push_back({n, 1.0});
      b_terms.push_back({n, 1.0});
      both.push_back({n, in_a - out.b_scale});
    }
  }
  out.a_part = WeightedSupport::from_terms(SumLabel::custom, std::move(a_terms));
  out.b_part = WeightedSupport::from_terms(SumLabel::custom, std::move(b_terms));
  out.combined = WeightedSupport::from_terms(SumLabel::custom, std::move(both));
  return out;
}

}  // namespace gbw
