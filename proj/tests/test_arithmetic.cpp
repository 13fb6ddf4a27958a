#include <cmath>
#include <numeric>

#include "doctest.h"
#include "gbw/arithmetic.hpp"
#include "gbw/error.hpp"

using namespace gbw;

namespace {

std::int64_t brute_r2(std::int64_t n) {
  std::int64_t count = 0;
  for (std::int64_t x = -400; x <= 400; ++x)
    for (std::int64_t y = -400; y <= 400; ++y) count += (x * x + y * y == n);
  return count;
}

std::int64_t brute_chi_sum(std::int64_t n) {
  std::int64_t s = 0;
  for (std::int64_t d = 1; d <= n; ++d)
    if (n % d == 0) s += (d % 2 == 0) ? 0 : (d % 4 == 1 ? 1 : -1);
  return s;
}

int brute_mobius(std::int64_t n) {
  int sign = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  return n > 1 ? -sign : sign;
}

std::int64_t brute_phi(std::int64_t n) {
  std::int64_t c = 0;
  for (std::int64_t k = 1; k <= n; ++k) c += (std::gcd(k, n) == 1);
  return c;
}

}  // namespace

TEST_CASE("chi4 values") {
  CHECK(chi4(1) == 1);
  CHECK(chi4(2) == 0);
  CHECK(chi4(7) == -1);
  CHECK(chi4(-1) == -1);
  CHECK(chi4(0) == 0);
}

TEST_CASE("two squares against lattice enumeration") {
  CHECK(r_two_squares(1) == 4);
  CHECK(r_two_squares(3) == 0);
  CHECK(r_two_squares(25) == 12);
  for (std::int64_t n = 1; n <= 2000; ++n) {
    CHECK(r_two_squares(n) == brute_r2(n));
    CHECK(r_two_squares(n) == 4 * divisor_chi_sum(n));
  }
}

TEST_CASE("divisor chi sum") {
  CHECK(divisor_chi_sum(5) == 2);
  CHECK(divisor_chi_sum(9) == 1);
  CHECK(divisor_chi_sum(2) == 1);
  for (std::int64_t n = 1; n <= 3000; ++n) CHECK(divisor_chi_sum(n) == brute_chi_sum(n));
}

TEST_CASE("mobius, phi, divisors, smallest prime factor") {
  for (std::int64_t n = 1; n <= 2000; ++n) {
    CHECK(mobius(n) == brute_mobius(n));
    CHECK(euler_phi(n) == brute_phi(n));
    std::int64_t count = 0;
    for (std::int64_t d = 1; d <= n; ++d) count += (n % d == 0);
    CHECK(static_cast<std::int64_t>(divisors(default_factorizer()(n)).size()) == count);
  }
  CHECK(smallest_prime_factor(91) == 7);
  CHECK(smallest_prime_factor(97) == 97);
}

TEST_CASE("factorizer bound") {
  const Factorizer small(1000);
  CHECK_THROWS_AS(small(1'000'001), Error);
  try {
    small(1'000'001);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::needs_factorization);
  }
}

TEST_CASE("ramanujan-like sums") {
  CHECK(std::abs(ramanujan_like_sum(1, 1, 1, 0) - std::complex<double>(1, 0)) < 1e-12);
  CHECK(std::abs(ramanujan_like_sum(1, 2, 1, 0) - std::complex<double>(-1, 0)) < 1e-12);
  CHECK(std::abs(ramanujan_like_sum(1, 4, 2, 1)) < 1e-12);
  // d = 1 reduces to the Ramanujan sum c_q(c), which is mu(q) for gcd(c, q) = 1
  for (std::int64_t q = 1; q <= 30; ++q)
    CHECK(std::abs(ramanujan_like_sum(1, q, 1, 0) - std::complex<double>(mobius(q), 0)) < 1e-9);
}

TEST_CASE("singular series") {
  const double s3 = singular_series(3, 1'000'000).value;
  CHECK(s3 == doctest::Approx(1.52).epsilon(0.01));
  CHECK(singular_series(9, 1'000'000).value == doctest::Approx(s3).epsilon(1e-14));
  CHECK_THROWS_AS(singular_series(10, 100), Error);
  const double star = singular_series_star(5, 1'000'000).value;
  CHECK(star == doctest::Approx(reference::singular_series_star(5, 1'000'000, true)).epsilon(1e-10));
  for (std::int64_t n : {3, 15, 105, 999'999}) {
    const double ratio = singular_series_star(n, 100'000).value / (M_PI * singular_series(n, 100'000).value);
    CHECK(ratio > 0.5);
    CHECK(ratio < 2.0);
    const double a = singular_series(n, 10'000).value, b = singular_series(n, 20'000).value;
    CHECK(std::abs(b / a - 1.0) < 1e-7);
  }
}

TEST_CASE("buchstab omega") {
  const BuchstabTable t = buchstab_omega(20.0, 1e-4);
  CHECK(t(1.5) == doctest::Approx(1.0 / 1.5));
  for (double u = 2.0; u <= 3.0; u += 0.01) CHECK(std::abs(t(u) - (1.0 + std::log(u - 1.0)) / u) < 1e-3);
  CHECK(std::abs(t(20.0) - 0.56146) < 2e-4);
  CHECK(t.extended(0.5) == doctest::Approx(2.0));
  CHECK_THROWS_AS(t(25.0), Error);
}
