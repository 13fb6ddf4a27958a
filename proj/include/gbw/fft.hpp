#pragma once

#include <complex>
#include <span>
#include <vector>

namespace gbw {

/// out[a] = sum_n x[n] e(n a / N) for 0 <= a < N, N = x.size(), with
/// e(t) = exp(2 pi i t). Real input only.
std::vector<std::complex<double>> exp_sum_transform(std::span<const double> x);

/// Full linear convolution (length a.size() + b.size() - 1).
std::vector<double> linear_convolution(std::span<const double> a, std::span<const double> b);

}  // namespace gbw
