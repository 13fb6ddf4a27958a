#include "gbw/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <memory>
#include <mutex>

namespace gbw {
namespace {

// FFTW planning is not thread-safe; execution on distinct arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

template <class T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <class T>
FftwBuffer<T> fftw_buffer(std::size_t n) {
  return FftwBuffer<T>(static_cast<T*>(fftw_malloc(sizeof(T) * (n == 0 ? 1 : n))));
}

class Plan {
 public:
  explicit Plan(fftw_plan p) : p_(p) {}
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p_);
  }
  void execute() const { fftw_execute(p_); }

 private:
  fftw_plan p_;
};

std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

}  // namespace

std::vector<std::complex<double>> exp_sum_transform(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  if (n == 0) return out;
  auto in = fftw_buffer<double>(n);
  auto freq = fftw_buffer<fftw_complex>(n / 2 + 1);
  std::unique_ptr<Plan> plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = std::make_unique<Plan>(
        fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), freq.get(), FFTW_ESTIMATE));
  }
  std::memcpy(in.get(), x.data(), n * sizeof(double));
  plan->execute();
  // r2c uses exp(-2 pi i n a / N); the conjugate gives the e(+) convention.
  for (std::size_t a = 0; a <= n / 2; ++a) {
    std::complex<double> v(freq[a][0], -freq[a][1]);
    out[a] = v;
    if (a != 0 && a != n - a) out[n - a] = std::conj(v);
  }
  return out;
}

std::vector<double> linear_convolution(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t len = a.size() + b.size() - 1;
  const std::size_t n = next_pow2(len);
  const std::size_t nc = n / 2 + 1;
  auto ra = fftw_buffer<double>(n);
  auto rb = fftw_buffer<double>(n);
  auto ca = fftw_buffer<fftw_complex>(nc);
  auto cb = fftw_buffer<fftw_complex>(nc);
  std::unique_ptr<Plan> fa, fb, back;
  {
    std::lock_guard lock(planner_mutex());
    fa = std::make_unique<Plan>(fftw_plan_dft_r2c_1d(static_cast<int>(n), ra.get(), ca.get(), FFTW_ESTIMATE));
    fb = std::make_unique<Plan>(fftw_plan_dft_r2c_1d(static_cast<int>(n), rb.get(), cb.get(), FFTW_ESTIMATE));
    back = std::make_unique<Plan>(fftw_plan_dft_c2r_1d(static_cast<int>(n), ca.get(), ra.get(), FFTW_ESTIMATE));
  }
  std::memset(ra.get(), 0, n * sizeof(double));
  std::memset(rb.get(), 0, n * sizeof(double));
  std::memcpy(ra.get(), a.data(), a.size() * sizeof(double));
  std::memcpy(rb.get(), b.data(), b.size() * sizeof(double));
  fa->execute();
  fb->execute();
  for (std::size_t i = 0; i < nc; ++i) {
    const double re = ca[i][0] * cb[i][0] - ca[i][1] * cb[i][1];
    const double im = ca[i][0] * cb[i][1] + ca[i][1] * cb[i][0];
    ca[i][0] = re;
    ca[i][1] = im;
  }
  back->execute();
  std::vector<double> out(len);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < len; ++i) out[i] = ra[i] * scale;
  return out;
}

}  // namespace gbw
