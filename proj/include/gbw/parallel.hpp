#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace gbw {

/// Selects between the OpenMP kernel and its serial reference.
enum class Exec { serial, parallel };

void set_threads(int n);
int max_threads();

/// Kahan-compensated accumulator; works for double and std::complex<double>.
template <class T>
class KahanSum {
 public:
  void add(T x) {
    T y = x - carry_;
    T t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  T value() const { return sum_; }

 private:
  T sum_{};
  T carry_{};
};

/// Fixed block size used by every deterministic reduction. Block boundaries
/// never depend on the thread count, so results are bit-identical for any
/// number of workers and for the serial path.
inline constexpr std::int64_t kReduceBlock = 4096;

/// Pairwise (tree) combination of per-block partials, in block order.
template <class T>
T pairwise_combine(std::vector<T> parts) {
  if (parts.empty()) return T{};
  while (parts.size() > 1) {
    std::size_t half = (parts.size() + 1) / 2;
    std::vector<T> next(half);
    for (std::size_t i = 0; i < half; ++i) {
      next[i] = parts[2 * i];
      if (2 * i + 1 < parts.size()) next[i] += parts[2 * i + 1];
    }
    parts = std::move(next);
  }
  return parts.front();
}

/// Computes block(lo, hi) over fixed-size blocks of [0, n) and combines them
/// pairwise. `block` must be callable as T(std::int64_t lo, std::int64_t hi).
template <class T, class BlockFn>
T blocked_reduce(std::int64_t n, Exec exec, BlockFn&& block, std::int64_t block_size = kReduceBlock) {
  if (n <= 0) return T{};
  const std::int64_t nblocks = (n + block_size - 1) / block_size;
  std::vector<T> parts(static_cast<std::size_t>(nblocks));
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t b = 0; b < nblocks; ++b) {
      const std::int64_t lo = b * block_size;
      parts[static_cast<std::size_t>(b)] = block(lo, std::min(n, lo + block_size));
    }
  } else {
    for (std::int64_t b = 0; b < nblocks; ++b) {
      const std::int64_t lo = b * block_size;
      parts[static_cast<std::size_t>(b)] = block(lo, std::min(n, lo + block_size));
    }
  }
  return pairwise_combine(std::move(parts));
}

}  // namespace gbw
