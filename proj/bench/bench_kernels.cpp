// Wall-clock comparison of each OpenMP kernel against its serial reference.
// On one thread the ratio measures the algorithmic gap alone.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <algorithm>
#include <functional>

#include "gbw/circle.hpp"
#include "gbw/expsum.hpp"
#include "gbw/goldbach.hpp"
#include "gbw/parallel.hpp"
#include "gbw/primes.hpp"
#include "gbw/sieve.hpp"

namespace {

double seconds(const std::function<void()>& f, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

void line(const char* name, double serial, double parallel, bool agree) {
  std::printf("%-28s reference %9.4f s  kernel %9.4f s  ratio %8.2fx  %s\n", name, serial, parallel,
              serial / parallel, agree ? "agree" : "DISAGREE");
}

}  // namespace

int main() {
  using namespace gbw;
  std::printf("threads: %d\n", max_threads());
  const int reps = 3;

  {
    PrimeTable a, b;
    const double s = seconds([&] { a = reference::sieve_primes(2, 20'000'000); }, reps);
    const double p = seconds([&] { b = sieve_primes(2, 20'000'000); }, reps);
    line("sieve_primes [2,2e7)", s, p, a == b);
  }

  const FamilyConfig cfg = FamilyConfig::make(7, PsExponent(21, 20), 400'001);
  const PrimeTable table = sieve_primes(2, 400'002);
  const CircleContext ctx = make_circle_context(cfg, table);
  const ExpSumGrid ga = grid_eval(build_S_A(cfg), cfg.X);

  {
    std::complex<double> a, b;
    const double s = seconds([&] { a = reference::convolve(ga, ctx.g_sc0, ctx.g_sq[0], cfg.N0); }, reps);
    const double p = seconds([&] { b = convolve(ga, ctx.g_sc0, ctx.g_sq[0], cfg.N0); }, reps);
    line("convolve X=1e5", s, p, std::abs(a - b) <= 1e-9 * (1.0 + std::abs(a)));
  }
  {
    const FamilyConfig small = FamilyConfig::make(7, PsExponent(21, 20), 40'001);
    const WeightedSupport w = build_S_A(small);
    ExpSumGrid a, b;
    const double s = seconds([&] { a = reference::grid_eval(w, small.X, Exec::parallel); }, 1);
    const double p = seconds([&] { b = grid_eval(w, small.X); }, reps);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
    line("grid_eval X=1e4 direct/FFT", s, p, worst <= 1e-6 * static_cast<double>(w.entries.size()));
  }
  {
    const FamilyConfig m = FamilyConfig::make(7, PsExponent(21, 20), 200'001);
    const PrimeTable t = sieve_primes(2, 200'002);
    const MixedSupports sup = mixed_supports(m, t, 200'001, 200'001);
    RepresentationReport a, b;
    const double s = seconds([&] { a = reference::mixed_representation(200'001, m, sup); }, reps);
    const double p = seconds([&] { b = mixed_representation(200'001, m, sup); }, reps);
    line("mixed_representation", s, p, a.raw_count == b.raw_count);
  }
  {
    const SieveWeights w = build_lambda(1e6, 100.0, SieveVariant::upper);
    std::vector<std::int64_t> a, b;
    const double s = seconds([&] { a = divisor_weight_sums(w, 5'000'000, Exec::serial); }, reps);
    const double p = seconds([&] { b = divisor_weight_sums(w, 5'000'000, Exec::parallel); }, reps);
    line("divisor_weight_sums 5e6", s, p, a == b);
  }
  return 0;
}
