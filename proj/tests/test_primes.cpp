#include "doctest.h"
#include "gbw/error.hpp"
#include "gbw/primes.hpp"

using namespace gbw;

namespace {
bool trial(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}
}  // namespace

TEST_CASE("small ranges") {
  const PrimeTable t = sieve_primes(2, 10);
  CHECK(t.primes_in(2, 10) == std::vector<std::int64_t>{2, 3, 5, 7});
  CHECK(sieve_primes(1'000'000, 1'000'100).count() == 6);
}

TEST_CASE("sieve matches trial division on odd offsets") {
  for (std::uint64_t lo : {2ull, 3ull, 100ull, 999'983ull}) {
    const PrimeTable t = sieve_primes(lo, lo + 5000);
    for (std::uint64_t n = lo; n < lo + 5000; ++n) CHECK(t.is_prime(n) == trial(n));
  }
}

TEST_CASE("parallel and reference sieves agree") {
  CHECK(sieve_primes(2, 3'000'000) == reference::sieve_primes(2, 3'000'000));
  CHECK(sieve_primes(2, 3'000'000, Exec::serial) == sieve_primes(2, 3'000'000, Exec::parallel));
  CHECK(sieve_primes(2, 1'000'000).count() == 78'498);
}

TEST_CASE("out of range and misc") {
  const PrimeTable t = sieve_primes(100, 200);
  CHECK_THROWS_AS(t.is_prime(99), Error);
  CHECK(is_prime_u64(1'000'000'007ull));
  CHECK_FALSE(is_prime_u64(1'000'000'007ull * 3));
  CHECK(primes_up_to(30) == std::vector<std::int64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  CHECK(PrimeTable::bitmap_length(2, 34) == 2);
}
