#include "gbw/primes.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "gbw/error.hpp"

namespace gbw {
namespace {

constexpr std::size_t kSegmentBits = std::size_t{1} << 18;

std::uint64_t isqrt_u64(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::size_t odd_count(std::uint64_t first_odd, std::uint64_t hi) {
  return hi > first_odd ? static_cast<std::size_t>((hi - first_odd + 1) / 2) : 0;
}

std::size_t word_count(std::uint64_t lo, std::uint64_t hi, std::size_t nbits) {
  const std::size_t by_bits = (nbits + 63) / 64;
  const std::size_t by_bytes = (PrimeTable::bitmap_length(lo, hi) + 7) / 8;
  return std::max(by_bits, by_bytes);
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

void sieve_segment(std::vector<std::uint64_t>& words, std::uint64_t first_odd, std::size_t b0,
                   std::size_t b1, std::span<const std::int64_t> base) {
  for (std::size_t w = b0 / 64; w < (b1 + 63) / 64; ++w) words[w] = ~std::uint64_t{0};
  if (b1 % 64) words[b1 / 64] &= (std::uint64_t{1} << (b1 % 64)) - 1;
  const std::uint64_t n0 = first_odd + 2 * b0;
  const std::uint64_t n1 = first_odd + 2 * (b1 - 1);
  if (n0 == 1) words[b0 / 64] &= ~(std::uint64_t{1} << (b0 % 64));
  for (const std::int64_t sp : base) {
    const auto p = static_cast<std::uint64_t>(sp);
    if (p == 2) continue;
    if (p * p > n1) break;
    std::uint64_t start = std::max(p * p, (n0 + p - 1) / p * p);
    if ((start & 1) == 0) start += p;
    for (std::uint64_t m = start; m <= n1; m += 2 * p) {
      const std::uint64_t i = (m - first_odd) >> 1;
      words[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
  }
}

}  // namespace

PrimeTable::PrimeTable(std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t> words)
    : lo_(lo), hi_(hi), first_odd_(lo | 1), nbits_(odd_count(lo | 1, hi)), words_(std::move(words)) {
  words_.resize(word_count(lo_, hi_, nbits_), 0);
}

std::size_t PrimeTable::bitmap_length(std::uint64_t lo, std::uint64_t hi) {
  return hi > lo ? static_cast<std::size_t>((hi - lo + 15) / 16) : 0;
}

bool PrimeTable::is_prime(std::uint64_t n) const {
  if (n < lo_ || n >= hi_) throw Error(Errc::out_of_range, "n outside prime table range");
  if (n == 2) return true;
  if ((n & 1) == 0) return false;
  const std::uint64_t i = (n - first_odd_) >> 1;
  return (words_[i >> 6] >> (i & 63)) & 1u;
}

std::uint64_t PrimeTable::count() const {
  std::uint64_t c = (lo_ <= 2 && 2 < hi_) ? 1 : 0;
  for (const std::uint64_t w : words_) c += static_cast<std::uint64_t>(__builtin_popcountll(w));
  return c;
}

std::vector<std::int64_t> PrimeTable::primes_in(std::uint64_t a, std::uint64_t b) const {
  std::vector<std::int64_t> out;
  for_each_prime(a, b, [&](std::uint64_t p) { out.push_back(static_cast<std::int64_t>(p)); });
  return out;
}

std::vector<std::uint8_t> PrimeTable::bitmap_bytes() const {
  std::vector<std::uint8_t> out(bitmap_length(lo_, hi_));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<std::uint8_t>(words_[i / 8] >> (8 * (i % 8)));
  return out;
}

PrimeTable PrimeTable::from_bitmap_bytes(std::uint64_t lo, std::uint64_t hi, std::span<const std::uint8_t> bytes) {
  const std::size_t nbits = odd_count(lo | 1, hi);
  std::vector<std::uint64_t> words(word_count(lo, hi, nbits), 0);
  for (std::size_t i = 0; i < bytes.size(); ++i) words[i / 8] |= std::uint64_t{bytes[i]} << (8 * (i % 8));
  return PrimeTable(lo, hi, std::move(words));
}

PrimeTable sieve_primes(std::uint64_t lo, std::uint64_t hi, Exec exec, std::size_t budget_bytes) {
  if (lo < 2 || lo >= hi || hi > (std::uint64_t{1} << 63)) throw Error(Errc::range, "sieve requires 2 <= lo < hi <= 2^63");
  if (PrimeTable::bitmap_length(lo, hi) > budget_bytes) throw Error(Errc::segment_required, "bitmap exceeds memory budget");
  const std::uint64_t root = isqrt_u64(hi - 1);
  const double base_estimate = 1.3 * static_cast<double>(root) / std::max(1.0, std::log(static_cast<double>(root)));
  if (base_estimate * sizeof(std::int64_t) + static_cast<double>(root) > static_cast<double>(budget_bytes))
    throw Error(Errc::segment_required, "base primes exceed memory budget");

  const std::vector<std::int64_t> base = primes_up_to(static_cast<std::int64_t>(root));
  const std::uint64_t first_odd = lo | 1;
  const std::size_t nbits = odd_count(first_odd, hi);
  std::vector<std::uint64_t> words(word_count(lo, hi, nbits), 0);
  const auto nseg = static_cast<std::int64_t>((nbits + kSegmentBits - 1) / kSegmentBits);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t s = 0; s < nseg; ++s) {
      const std::size_t b0 = static_cast<std::size_t>(s) * kSegmentBits;
      sieve_segment(words, first_odd, b0, std::min(nbits, b0 + kSegmentBits), base);
    }
  } else {
    for (std::int64_t s = 0; s < nseg; ++s) {
      const std::size_t b0 = static_cast<std::size_t>(s) * kSegmentBits;
      sieve_segment(words, first_odd, b0, std::min(nbits, b0 + kSegmentBits), base);
    }
  }
  return PrimeTable(lo, hi, std::move(words));
}

std::vector<std::int64_t> primes_up_to(std::int64_t n) {
  std::vector<std::int64_t> out;
  if (n < 2) return out;
  std::vector<std::uint8_t> composite(static_cast<std::size_t>(n) + 1, 0);
  for (std::int64_t i = 2; i <= n; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    out.push_back(i);
    for (std::int64_t j = i * i; j <= n; j += i) composite[static_cast<std::size_t>(j)] = 1;
  }
  return out;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace reference {

PrimeTable sieve_primes(std::uint64_t lo, std::uint64_t hi) {
  if (lo < 2 || lo >= hi) throw Error(Errc::range, "sieve requires 2 <= lo < hi");
  std::vector<std::uint8_t> composite(hi, 0);
  for (std::uint64_t i = 2; i * i < hi; ++i) {
    if (composite[i]) continue;
    for (std::uint64_t j = i * i; j < hi; j += i) composite[j] = 1;
  }
  const std::uint64_t first_odd = lo | 1;
  const std::size_t nbits = odd_count(first_odd, hi);
  std::vector<std::uint64_t> words(word_count(lo, hi, nbits), 0);
  for (std::size_t i = 0; i < nbits; ++i) {
    const std::uint64_t n = first_odd + 2 * i;
    if (n >= 2 && !composite[n] && n != 1) words[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  return PrimeTable(lo, hi, std::move(words));
}

}  // namespace reference
}  // namespace gbw
