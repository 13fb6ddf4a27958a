#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gbw/parallel.hpp"

namespace gbw {

/// Bit-packed primality over [lo, hi). Bit i covers the odd integer
/// first_odd + 2i where first_odd = lo | 1; the prime 2 is implied by the
/// range. Immutable once built.
class PrimeTable {
 public:
  PrimeTable() = default;
  PrimeTable(std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t> words);

  std::uint64_t lo() const { return lo_; }
  std::uint64_t hi() const { return hi_; }
  bool empty() const { return hi_ <= lo_; }
  bool covers(std::uint64_t a, std::uint64_t b) const { return a >= lo_ && b <= hi_; }

  /// Throws Errc::out_of_range outside [lo, hi).
  bool is_prime(std::uint64_t n) const;

  std::uint64_t count() const;
  std::vector<std::int64_t> primes_in(std::uint64_t a, std::uint64_t b) const;

  template <class F>
  void for_each_prime(std::uint64_t a, std::uint64_t b, F&& f) const {
    a = a < lo_ ? lo_ : a;
    b = b > hi_ ? hi_ : b;
    if (a >= b) return;
    if (a <= 2 && 2 < b) f(std::uint64_t{2});
    std::uint64_t n = a | 1;
    if (n < 3) n = 3;
    for (; n < b; n += 2) {
      const std::uint64_t i = (n - first_odd_) >> 1;
      if ((words_[i >> 6] >> (i & 63)) & 1u) f(n);
    }
  }

  std::size_t bit_count() const { return nbits_; }
  std::span<const std::uint64_t> words() const { return words_; }

  /// Little-endian byte image of the bitmap: ceil((hi - lo) / 16) bytes.
  std::vector<std::uint8_t> bitmap_bytes() const;
  static PrimeTable from_bitmap_bytes(std::uint64_t lo, std::uint64_t hi, std::span<const std::uint8_t> bytes);
  static std::size_t bitmap_length(std::uint64_t lo, std::uint64_t hi);

  friend bool operator==(const PrimeTable&, const PrimeTable&) = default;

 private:
  std::uint64_t lo_ = 0;
  std::uint64_t hi_ = 0;
  std::uint64_t first_odd_ = 1;
  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

inline constexpr std::size_t kDefaultSieveBudgetBytes = std::size_t{1} << 30;

/// Segmented, odd-only sieve of Eratosthenes; segments run under OpenMP.
/// Requires 2 <= lo < hi <= 2^63. Ranges whose bitmap (or base-prime list)
/// exceeds the budget throw Errc::segment_required.
PrimeTable sieve_primes(std::uint64_t lo, std::uint64_t hi, Exec exec = Exec::parallel,
                        std::size_t budget_bytes = kDefaultSieveBudgetBytes);

/// All primes <= n, ascending.
std::vector<std::int64_t> primes_up_to(std::int64_t n);

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

namespace reference {
/// Plain (unsegmented, serial) sieve over [0, hi) restricted to [lo, hi).
PrimeTable sieve_primes(std::uint64_t lo, std::uint64_t hi);
}  // namespace reference

}  // namespace gbw
