#include "gbw/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gbw/arithmetic.hpp"
#include "gbw/error.hpp"
#include "gbw/primes.hpp"

namespace gbw {
namespace {

void require_positive(std::span<const std::int64_t> C) {
  for (const std::int64_t c : C)
    if (c <= 0) throw Error(Errc::out_of_range, "set members must be positive");
}

// Does every prime factor of t lie in `primes` (ascending)?
bool divides_primorial(std::int64_t t, const std::vector<std::int64_t>& primes) {
  for (const std::int64_t p : primes) {
    if (t == 1) break;
    if (t % p == 0) t /= p;
  }
  return t == 1;
}

// Depth-first walk of the beta-sieve tree over primes in descending order.
// visit(d, mu) is called for every d != 1 in the support.
template <class Visit>
void beta_tree(const std::vector<std::int64_t>& desc, double y, SieveVariant variant, Visit&& visit) {
  auto conditioned = [&](int m) {
    if (variant == SieveVariant::upper) return m % 2 == 1;
    if (variant == SieveVariant::lower) return m % 2 == 0;
    return false;
  };
  const long double ly = y;
  auto walk = [&](auto&& self, std::size_t next, long double d, std::int64_t di, int r, int sign) -> void {
    const bool cond = conditioned(r + 1);
    auto fails = [&](std::int64_t p) {
      const long double lp = static_cast<long double>(p);
      return (cond ? d * lp * lp * lp : d * lp) >= ly;
    };
    auto first = std::partition_point(desc.begin() + static_cast<std::ptrdiff_t>(next), desc.end(), fails);
    for (auto it = first; it != desc.end(); ++it) {
      const std::int64_t p = *it;
      const std::int64_t nd = di * p;
      visit(nd, -sign);
      self(self, static_cast<std::size_t>(it - desc.begin()) + 1, d * static_cast<long double>(p), nd, r + 1, -sign);
    }
  };
  walk(walk, 0, 1.0L, 1, 0, 1);
}

}  // namespace

bool is_rough(std::int64_t n, double z) {
  if (n < 0) throw Error(Errc::out_of_range, "negative argument");
  if (n == 0) return z < 2.0;
  if (n == 1) return true;
  return static_cast<double>(smallest_prime_factor(n)) > z;
}

std::vector<std::int64_t> sifted_set(std::span<const std::int64_t> C, double z) {
  if (z < 1.0) throw Error(Errc::out_of_range, "z must be at least 1");
  std::vector<std::int64_t> out;
  for (const std::int64_t c : C)
    if (is_rough(c, z)) out.push_back(c);
  return out;
}

BuchstabTriple buchstab_step(std::span<const std::int64_t> C, double u1, double u2, double theta) {
  if (u1 < 1.0 || u2 < u1) throw Error(Errc::out_of_range, "need 1 <= u1 <= u2");
  require_positive(C);
  KahanSum<std::complex<double>> s2, s1, sub;
  for (const std::int64_t c : C) {
    const std::complex<double> ph = e_phase(c, theta);
    if (is_rough(c, u2)) s2.add(ph);
    if (is_rough(c, u1)) s1.add(ph);
  }
  for (const std::int64_t p : primes_up_to(static_cast<std::int64_t>(std::floor(u2)))) {
    if (static_cast<double>(p) <= u1) continue;
    for (const std::int64_t c : C) {
      if (c % p) continue;
      const std::int64_t m = c / p;
      if (m == 1 || smallest_prime_factor(m) >= p) sub.add(e_phase(c, theta));
    }
  }
  BuchstabTriple t{s2.value(), s1.value(), sub.value(), 0.0};
  t.residual = std::abs(t.rough_u2 - (t.rough_u1 - t.subtracted));
  return t;
}

int SieveWeights::at(std::int64_t d) const {
  auto it = std::lower_bound(values.begin(), values.end(), d,
                             [](const std::pair<std::int64_t, int>& e, std::int64_t v) { return e.first < v; });
  return it != values.end() && it->first == d ? it->second : 0;
}

std::vector<std::int64_t> sifting_primes(double z, bool exclude_2_5) {
  std::vector<std::int64_t> out;
  if (z < 2.0) return out;
  for (const std::int64_t p : primes_up_to(static_cast<std::int64_t>(std::floor(z))))
    if (!exclude_2_5 || (p != 2 && p != 5)) out.push_back(p);
  return out;
}

SieveWeights build_lambda(double y, double z, SieveVariant variant, bool exclude_2_5) {
  if (z < 2.0) throw Error(Errc::out_of_range, "z must be at least 2");
  if (y <= z) throw Error(Errc::empty_range, "y must exceed z");
  if (variant == SieveVariant::mobius) throw Error(Errc::config, "use mobius_weights for the Mobius variant");
  SieveWeights w{y, z, variant, exclude_2_5, {}};
  std::vector<std::int64_t> desc = sifting_primes(z, exclude_2_5);
  std::reverse(desc.begin(), desc.end());
  w.values.push_back({1, 1});
  beta_tree(desc, y, variant, [&](std::int64_t d, int mu) { w.values.push_back({d, mu}); });
  std::sort(w.values.begin(), w.values.end());
  return w;
}

SieveWeights mobius_weights(double z, bool exclude_2_5) {
  const std::vector<std::int64_t> primes = sifting_primes(z, exclude_2_5);
  long double prod = 1.0L;
  for (const std::int64_t p : primes) prod *= static_cast<long double>(p);
  if (prod > 1e18L) throw Error(Errc::range, "P(z) exceeds 64-bit range");
  SieveWeights w{std::numeric_limits<double>::infinity(), z, SieveVariant::mobius, exclude_2_5, {{1, 1}}};
  for (const std::int64_t p : primes) {
    const std::size_t n = w.values.size();
    for (std::size_t i = 0; i < n; ++i) w.values.push_back({w.values[i].first * p, -w.values[i].second});
  }
  std::sort(w.values.begin(), w.values.end());
  return w;
}

std::complex<double> lambda_weighted_sum(std::span<const std::int64_t> C, double z, double theta,
                                         const SieveWeights& w) {
  require_positive(C);
  if (C.empty()) return 0.0;
  const std::int64_t cmax = *std::max_element(C.begin(), C.end());
  std::vector<std::uint8_t> member(static_cast<std::size_t>(cmax) + 1, 0);
  for (const std::int64_t c : C) member[static_cast<std::size_t>(c)] = 1;
  const std::vector<std::int64_t> primes = sifting_primes(std::min(z, w.z), w.exclude_2_5);
  KahanSum<std::complex<double>> total;
  for (const auto& [t, lam] : w.values) {
    if (t > cmax) break;
    if (lam == 0 || !divides_primorial(t, primes)) continue;
    KahanSum<std::complex<double>> inner;
    for (std::int64_t n = t; n <= cmax; n += t)
      if (member[static_cast<std::size_t>(n)]) inner.add(e_phase(n, theta));
    total.add(static_cast<double>(lam) * inner.value());
  }
  return total.value();
}

std::vector<std::int64_t> divisor_weight_sums(const SieveWeights& w, std::int64_t n_max, Exec exec) {
  if (exec == Exec::serial) return reference::divisor_weight_sums(w, n_max);
  std::vector<std::int64_t> out(static_cast<std::size_t>(n_max) + 1, 0);
  constexpr std::int64_t kBlock = 1 << 16;
  const std::int64_t nblocks = n_max / kBlock + 1;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t b = 0; b < nblocks; ++b) {
    const std::int64_t lo = std::max<std::int64_t>(1, b * kBlock);
    const std::int64_t hi = std::min(n_max, (b + 1) * kBlock - 1);
    for (const auto& [d, lam] : w.values) {
      if (d > hi) break;
      for (std::int64_t n = (lo + d - 1) / d * d; n <= hi; n += d) out[static_cast<std::size_t>(n)] += lam;
    }
  }
  return out;
}

SandwichReport sandwich_check(const SieveWeights& lower, const SieveWeights& upper, std::int64_t n_max, Exec exec) {
  if (lower.z != upper.z || lower.exclude_2_5 != upper.exclude_2_5)
    throw Error(Errc::config, "sandwich weights must share z and the 2,5 convention");
  std::vector<std::uint8_t> rough(static_cast<std::size_t>(n_max) + 1, 1);
  for (const std::int64_t p : sifting_primes(lower.z, lower.exclude_2_5))
    for (std::int64_t n = p; n <= n_max; n += p) rough[static_cast<std::size_t>(n)] = 0;
  const std::vector<std::int64_t> lo = divisor_weight_sums(lower, n_max, exec);
  const std::vector<std::int64_t> hi = divisor_weight_sums(upper, n_max, exec);
  SandwichReport rep;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const auto i = static_cast<std::size_t>(n);
    ++rep.checked;
    if (lo[i] > rough[i] || rough[i] > hi[i]) {
      if (rep.violations++ == 0) rep.first_violation = n;
    }
  }
  return rep;
}

FundamentalLemmaReport fundamental_lemma_check(const std::function<double(std::int64_t)>& g, double y, double z,
                                               bool exclude_2_5) {
  if (z < 2.0) throw Error(Errc::out_of_range, "z must be at least 2");
  if (y <= z) throw Error(Errc::empty_range, "y must exceed z");
  std::vector<std::int64_t> desc = sifting_primes(z, exclude_2_5);
  std::reverse(desc.begin(), desc.end());
  std::vector<double> gp(desc.size());
  FundamentalLemmaReport rep;
  rep.y = y;
  rep.z = z;
  rep.s = std::log(y) / std::log(z);
  rep.reference_scale = std::exp(-rep.s);
  KahanSum<double> prod_log;
  for (std::size_t i = 0; i < desc.size(); ++i) {
    gp[i] = g(desc[i]);
    if (gp[i] < 0.0 || gp[i] >= 1.0) throw Error(Errc::out_of_range, "g(p) must lie in [0, 1)");
    prod_log.add(std::log1p(-gp[i]));
  }
  rep.product = std::exp(prod_log.value());

  // Streaming walk carrying the multiplicative g(d) along the tree.
  auto stream = [&](SieveVariant variant, std::int64_t& terms) {
    KahanSum<double> acc;
    acc.add(1.0);
    terms = 1;
    auto conditioned = [&](int m) { return variant == SieveVariant::upper ? m % 2 == 1 : m % 2 == 0; };
    const long double ly = y;
    auto walk = [&](auto&& self, std::size_t next, long double d, double gd, int r, int sign) -> void {
      const bool cond = conditioned(r + 1);
      auto fails = [&](std::int64_t p) {
        const long double lp = static_cast<long double>(p);
        return (cond ? d * lp * lp * lp : d * lp) >= ly;
      };
      auto first = std::partition_point(desc.begin() + static_cast<std::ptrdiff_t>(next), desc.end(), fails);
      for (auto it = first; it != desc.end(); ++it) {
        const auto i = static_cast<std::size_t>(it - desc.begin());
        const double ng = gd * gp[i];
        acc.add(-sign * ng);
        ++terms;
        self(self, i + 1, d * static_cast<long double>(*it), ng, r + 1, -sign);
      }
    };
    walk(walk, 0, 1.0L, 1.0, 0, 1);
    return acc.value();
  };
  rep.upper_sum = stream(SieveVariant::upper, rep.upper_terms);
  rep.lower_sum = stream(SieveVariant::lower, rep.lower_terms);
  rep.upper_ratio_minus_1 = rep.upper_sum / rep.product - 1.0;
  rep.lower_ratio_minus_1 = rep.lower_sum / rep.product - 1.0;
  return rep;
}

namespace reference {

std::vector<std::int64_t> divisor_weight_sums(const SieveWeights& w, std::int64_t n_max) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(n_max) + 1, 0);
  for (const auto& [d, lam] : w.values)
    for (std::int64_t n = d; n <= n_max; n += d) out[static_cast<std::size_t>(n)] += lam;
  return out;
}

std::complex<double> lambda_weighted_sum(std::span<const std::int64_t> C, double z, double theta,
                                         const SieveWeights& w) {
  require_positive(C);
  const std::vector<std::int64_t> primes = sifting_primes(std::min(z, w.z), w.exclude_2_5);
  KahanSum<std::complex<double>> total;
  for (const std::int64_t n : C) {
    std::int64_t coef = 0;
    for (const auto& [t, lam] : w.values) {
      if (t > n) break;
      if (n % t == 0 && divides_primorial(t, primes)) coef += lam;
    }
    if (coef != 0) total.add(static_cast<double>(coef) * e_phase(n, theta));
  }
  return total.value();
}

}  // namespace reference
}  // namespace gbw
