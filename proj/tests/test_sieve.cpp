#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "gbw/error.hpp"
#include "gbw/primes.hpp"
#include "gbw/sieve.hpp"

using namespace gbw;

namespace {

std::vector<std::int64_t> range(std::int64_t a, std::int64_t b) {
  std::vector<std::int64_t> v(static_cast<std::size_t>(b - a + 1));
  std::iota(v.begin(), v.end(), a);
  return v;
}

// lambda from the defining condition, over every squarefree product of sifting primes below y
int brute_lambda(std::int64_t d, double y, const std::vector<std::int64_t>& P, bool upper) {
  if (d >= y) return 0;
  std::vector<std::int64_t> f;
  std::int64_t m = d;
  for (std::int64_t p : P)
    if (m % p == 0) {
      m /= p;
      if (m % p == 0) return 0;
      f.push_back(p);
    }
  if (m != 1) return 0;
  std::sort(f.rbegin(), f.rend());
  double prefix = 1.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const bool odd = (i + 1) % 2 == 1;
    const double pm = static_cast<double>(f[i]);
    if (odd == upper && !(prefix * pm * pm * pm < y)) return 0;
    prefix *= pm;
  }
  return (f.size() % 2) ? -1 : 1;
}

}  // namespace

TEST_CASE("roughness and sifted sets") {
  CHECK(sifted_set(range(1, 10), 2.0) == std::vector<std::int64_t>{1, 3, 5, 7, 9});
  CHECK(sifted_set(range(1, 10), 1.0) == range(1, 10));
  std::vector<std::int64_t> want{1};
  for (std::int64_t p : primes_up_to(100))
    if (p > 10) want.push_back(p);
  CHECK(sifted_set(range(1, 100), 10.0) == want);
  CHECK(is_rough(0, 1.5));
  CHECK_FALSE(is_rough(0, 2.0));
}

TEST_CASE("Buchstab step on exponential sums") {
  const auto C = range(1, 1000);
  const BuchstabTriple t = buchstab_step(C, 3.0, 30.0, 0.37);
  CHECK(t.residual < 1e-12 * 1000);
  const BuchstabTriple same = buchstab_step(C, 5.0, 5.0, 0.2);
  CHECK(std::abs(same.subtracted) == 0.0);
  CHECK(same.residual == 0.0);
}

TEST_CASE("beta-sieve weights follow the defining condition") {
  for (const auto& [y, z] : {std::pair{1e3, 10.0}, std::pair{5e3, 30.0}, std::pair{2e4, 50.0}}) {
    const auto P = sifting_primes(z);
    for (const SieveVariant v : {SieveVariant::upper, SieveVariant::lower}) {
      const SieveWeights w = build_lambda(y, z, v);
      CHECK(w.at(1) == 1);
      for (std::int64_t d = 1; d < static_cast<std::int64_t>(y); ++d)
        CHECK(w.at(d) == brute_lambda(d, y, P, v == SieveVariant::upper));
    }
  }
  CHECK(sifting_primes(10.0) == std::vector<std::int64_t>{3, 7});
  CHECK(sifting_primes(10.0, false) == std::vector<std::int64_t>{2, 3, 5, 7});
  CHECK_THROWS_AS(build_lambda(10.0, 20.0, SieveVariant::upper), Error);
  CHECK_THROWS_AS(build_lambda(100.0, 1.0, SieveVariant::upper), Error);
}

TEST_CASE("sandwich inequality") {
  for (const auto& [y, z] : {std::pair{1e3, 10.0}, std::pair{1e4, 40.0}}) {
    const SandwichReport r =
        sandwich_check(build_lambda(y, z, SieveVariant::lower), build_lambda(y, z, SieveVariant::upper), 50'000);
    CHECK(r.checked == 50'000);
    CHECK(r.violations == 0);
  }
  SieveWeights broken = build_lambda(1e3, 10.0, SieveVariant::upper);
  broken.values.front().second = 0;
  CHECK(sandwich_check(build_lambda(1e3, 10.0, SieveVariant::lower), broken, 1000).violations > 0);
}

TEST_CASE("divisor sums: parallel, serial and brute force") {
  const SieveWeights w = build_lambda(1e4, 40.0, SieveVariant::upper);
  const auto par = divisor_weight_sums(w, 20'000, Exec::parallel);
  CHECK(par == divisor_weight_sums(w, 20'000, Exec::serial));
  CHECK(par == reference::divisor_weight_sums(w, 20'000));
  for (std::int64_t n = 1; n <= 3000; ++n) {
    std::int64_t s = 0;
    for (std::int64_t d = 1; d <= n; ++d)
      if (n % d == 0) s += w.at(d);
    CHECK(par[static_cast<std::size_t>(n)] == s);
  }
}

TEST_CASE("lambda-weighted sums") {
  const auto C = range(1, 2000);
  const SieveWeights mob = mobius_weights(20.0);
  const auto P = sifting_primes(20.0);
  std::int64_t legendre = 0;
  for (std::int64_t n : C) legendre += std::none_of(P.begin(), P.end(), [n](std::int64_t p) { return n % p == 0; });
  CHECK(lambda_weighted_sum(C, 20.0, 0.0, mob).real() == doctest::Approx(static_cast<double>(legendre)));
  const SieveWeights up = build_lambda(1e3, 20.0, SieveVariant::upper);
  CHECK(lambda_weighted_sum(C, 20.0, 0.0, up).real() >= static_cast<double>(legendre) - 1e-9);
  for (double th : {0.1, 0.77})
    CHECK(std::abs(lambda_weighted_sum(C, 20.0, th, up) - reference::lambda_weighted_sum(C, 20.0, th, up)) < 1e-8);
  const std::vector<std::int64_t> one{1};
  CHECK(std::abs(lambda_weighted_sum(one, 20.0, 0.3, up) - std::polar(1.0, 2 * M_PI * 0.3)) < 1e-12);
}

TEST_CASE("fundamental lemma") {
  const auto zero = fundamental_lemma_check([](std::int64_t) { return 0.0; }, 1e4, 100.0);
  CHECK(zero.upper_ratio_minus_1 == doctest::Approx(0.0));
  CHECK(zero.lower_ratio_minus_1 == doctest::Approx(0.0));
  auto g = [](std::int64_t p) { return 1.0 / static_cast<double>(p); };
  const auto r = fundamental_lemma_check(g, 1e9, 1e3);
  CHECK(r.s == doctest::Approx(3.0));
  CHECK(std::abs(r.upper_ratio_minus_1) < 0.25);
  CHECK(std::abs(r.lower_ratio_minus_1) < 0.25);
  CHECK(r.upper_ratio_minus_1 >= -1e-12);
  CHECK(r.lower_ratio_minus_1 <= 1e-12);
}

TEST_CASE("type-II sums build") {
  const FamilyConfig cfg = FamilyConfig::make(7, PsExponent(21, 20), 40'001);
  CHECK_FALSE(build_type_sum(cfg, TypeSumKind::E1).combined.empty());
  CHECK_FALSE(build_type_sum(cfg, TypeSumKind::E0).combined.empty());
}
