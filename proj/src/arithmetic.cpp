#include "gbw/arithmetic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>

#include "gbw/error.hpp"
#include "gbw/parallel.hpp"
#include "gbw/primes.hpp"

namespace gbw {

int chi4(std::int64_t n) {
  const std::int64_t r = ((n % 4) + 4) % 4;
  if (r == 1) return 1;
  if (r == 3) return -1;
  return 0;
}

Factorizer::Factorizer(std::int64_t bound) : bound_(bound) {
  auto root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(bound)));
  while (root * root < bound) ++root;
  primes_ = primes_up_to(root);
}

Factorization Factorizer::operator()(std::int64_t n) const {
  if (n < 1) throw Error(Errc::out_of_range, "factorization needs n >= 1");
  if (n > bound_) throw Error(Errc::needs_factorization, std::to_string(n) + " exceeds factorization bound");
  Factorization f;
  for (const std::int64_t p : primes_) {
    if (p * p > n) break;
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.push_back({p, e});
  }
  if (n > 1) f.push_back({n, 1});
  return f;
}

const Factorizer& default_factorizer() {
  static const Factorizer f;
  return f;
}

std::vector<std::int64_t> divisors(const Factorization& f) {
  std::vector<std::int64_t> out{1};
  for (const auto& [p, e] : f) {
    const std::size_t base = out.size();
    std::int64_t pk = 1;
    for (int i = 0; i < e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
    }
  }
  return out;
}

int mobius(const Factorization& f) {
  for (const auto& pe : f)
    if (pe.e > 1) return 0;
  return f.size() % 2 ? -1 : 1;
}

int mobius(std::int64_t n) { return mobius(default_factorizer()(n)); }

std::int64_t euler_phi(const Factorization& f) {
  std::int64_t r = 1;
  for (const auto& [p, e] : f) {
    r *= p - 1;
    for (int i = 1; i < e; ++i) r *= p;
  }
  return r;
}

std::int64_t euler_phi(std::int64_t n) { return euler_phi(default_factorizer()(n)); }

std::int64_t smallest_prime_factor(std::int64_t n) {
  if (n < 2) return n;
  if (n % 2 == 0) return 2;
  for (std::int64_t p = 3; p * p <= n; p += 2)
    if (n % p == 0) return p;
  return n;
}

std::int64_t divisor_chi_sum(const Factorization& f) {
  std::int64_t r = 1;
  for (const auto& [p, e] : f) {
    if (p == 2) continue;
    if (p % 4 == 1) {
      r *= e + 1;
    } else if (e % 2) {
      return 0;
    }
  }
  return r;
}

std::int64_t divisor_chi_sum(std::int64_t n) { return divisor_chi_sum(default_factorizer()(n)); }

std::int64_t r_two_squares(const Factorization& f) { return 4 * divisor_chi_sum(f); }

std::int64_t r_two_squares(std::int64_t n) { return 4 * divisor_chi_sum(n); }

std::complex<double> ramanujan_like_sum(std::int64_t c, std::int64_t q, std::int64_t d, std::int64_t l) {
  const std::int64_t g = std::gcd(q, d);
  const std::int64_t lr = ((l % g) + g) % g;
  const std::int64_t cr = ((c % q) + q) % q;
  std::complex<double> s = 0.0;
  for (std::int64_t t = 1; t <= q; ++t) {
    if (std::gcd(t, q) != 1 || t % g != lr) continue;
    const double phase = 2.0 * std::numbers::pi * static_cast<double>((cr * t) % q) / static_cast<double>(q);
    s += std::polar(1.0, phase);
  }
  return s;
}

namespace {

struct EulerCache {
  std::vector<std::int64_t> primes;
  double log_base = 0.0;
  double log_twist = 0.0;
};

double twist_generic(std::int64_t p) {
  const double pd = static_cast<double>(p);
  return chi4(p) * (pd - 3.0) / (pd * (pd * pd - 3.0 * pd + 3.0));
}

double twist_divides_n(std::int64_t p) {
  const double pd = static_cast<double>(p);
  return chi4(p) / (pd * (pd - 1.0));
}

double twist_divides_n_minus_1(std::int64_t p) {
  const double pd = static_cast<double>(p);
  return chi4(p) * (2.0 * pd - 3.0) / (pd * (pd * pd - 3.0 * pd + 3.0));
}

double cube_term(std::int64_t p) {
  const double m = static_cast<double>(p - 1);
  return 1.0 / (m * m * m);
}

double square_term(std::int64_t p) {
  const double m = static_cast<double>(p - 1);
  return -1.0 / (m * m);
}

const EulerCache& euler_cache(std::int64_t cutoff) {
  static std::mutex mu;
  static std::map<std::int64_t, EulerCache> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(cutoff);
  if (it != cache.end()) return it->second;
  EulerCache c;
  c.primes = primes_up_to(cutoff);
  KahanSum<double> base, twist;
  for (const std::int64_t p : c.primes) {
    base.add(std::log1p(cube_term(p)));
    twist.add(std::log1p(twist_generic(p)));
  }
  c.log_base = base.value();
  c.log_twist = twist.value();
  return cache.emplace(cutoff, std::move(c)).first->second;
}

// Distinct prime divisors of n that do not exceed cutoff.
std::vector<std::int64_t> small_prime_divisors(std::int64_t n, std::int64_t cutoff, const EulerCache& c) {
  std::vector<std::int64_t> out;
  if (n <= default_factorizer().bound()) {
    for (const auto& pe : default_factorizer()(n))
      if (pe.p <= cutoff) out.push_back(pe.p);
    return out;
  }
  for (const std::int64_t p : c.primes)
    if (n % p == 0) out.push_back(p);
  return out;
}

void check_singular_input(std::int64_t N0, std::int64_t cutoff) {
  if (N0 % 2 == 0) throw Error(Errc::even_input, "singular series vanishes at even N0");
  if (N0 < 3) throw Error(Errc::out_of_range, "singular series needs N0 >= 3");
  if (cutoff < 3) throw Error(Errc::out_of_range, "singular series needs cutoff >= 3");
}

double plain_tail_bound(std::int64_t N0, std::int64_t cutoff) {
  const double c = static_cast<double>(cutoff);
  const double upper = std::expm1(1.0 / (2.0 * (c - 1.0) * (c - 1.0)));
  const double big = std::floor(std::log(static_cast<double>(N0)) / std::log(c));
  const double lower = -std::expm1(big * std::log1p(-1.0 / (c * c)));
  return std::max(upper, lower);
}

}  // namespace

SingularSeriesValue singular_series(std::int64_t N0, std::int64_t cutoff) {
  check_singular_input(N0, cutoff);
  const EulerCache& c = euler_cache(cutoff);
  double log_value = c.log_base;
  for (const std::int64_t p : small_prime_divisors(N0, cutoff, c))
    log_value += std::log1p(square_term(p)) - std::log1p(cube_term(p));
  return {std::exp(log_value), cutoff, plain_tail_bound(N0, cutoff)};
}

SingularSeriesValue singular_series_star(std::int64_t N0, std::int64_t cutoff) {
  check_singular_input(N0, cutoff);
  const EulerCache& c = euler_cache(cutoff);
  double log_value = c.log_base + c.log_twist;
  for (const std::int64_t p : small_prime_divisors(N0, cutoff, c)) {
    log_value += std::log1p(square_term(p)) - std::log1p(cube_term(p));
    log_value += std::log1p(twist_divides_n(p)) - std::log1p(twist_generic(p));
  }
  for (const std::int64_t p : small_prime_divisors(N0 - 1, cutoff, c))
    log_value += std::log1p(twist_divides_n_minus_1(p)) - std::log1p(twist_generic(p));
  const double plain = plain_tail_bound(N0, cutoff);
  const double twist = std::expm1(2.02 / static_cast<double>(cutoff));
  return {std::numbers::pi * std::exp(log_value), cutoff, (1.0 + plain) * (1.0 + twist) - 1.0};
}

namespace reference {

double singular_series(std::int64_t N0, std::int64_t cutoff) {
  double v = 1.0;
  for (const std::int64_t p : primes_up_to(cutoff)) {
    const double m = static_cast<double>(p - 1);
    v *= N0 % p == 0 ? 1.0 - 1.0 / (m * m) : 1.0 + 1.0 / (m * m * m);
  }
  return v;
}

double singular_series_star(std::int64_t N0, std::int64_t cutoff, bool descending) {
  auto ps = primes_up_to(cutoff);
  if (descending) std::reverse(ps.begin(), ps.end());
  double v = std::numbers::pi;
  for (const std::int64_t p : ps) {
    const double pd = static_cast<double>(p);
    const double m = pd - 1.0;
    const double cubic = pd * (pd * pd - 3.0 * pd + 3.0);
    if (N0 % p == 0) {
      v *= (1.0 - 1.0 / (m * m)) * (1.0 + chi4(p) / (pd * m));
    } else if ((N0 - 1) % p == 0) {
      v *= (1.0 + 1.0 / (m * m * m)) * (1.0 + chi4(p) * (2.0 * pd - 3.0) / cubic);
    } else {
      v *= (1.0 + 1.0 / (m * m * m)) * (1.0 + chi4(p) * (pd - 3.0) / cubic);
    }
  }
  return v;
}

}  // namespace reference
}  // namespace gbw
