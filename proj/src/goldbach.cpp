#include "gbw/goldbach.hpp"

#include <algorithm>
#include <cmath>

#include "gbw/error.hpp"
#include "gbw/fft.hpp"
#include "gbw/primes.hpp"

namespace gbw {
namespace {

void check_classical(std::int64_t N0) {
  if (N0 % 2 == 0) throw Error(Errc::parity, "N0 must be odd");
  if (N0 < 7 || N0 > kClassicalMaxN0) throw Error(Errc::out_of_range, "N0 outside [7, 1e8]");
}

struct Tally {
  std::int64_t count = 0;
  double weighted = 0.0;
  Tally& operator+=(const Tally& o) {
    count += o.count;
    weighted += o.weighted;
    return *this;
  }
};

template <class T>
std::vector<T> members_in(const std::vector<T>& sorted, const RationalInterval& iv, std::int64_t (*key)(const T&)) {
  std::vector<T> out;
  for (const T& v : sorted)
    if (iv.contains(key(v))) out.push_back(v);
  return out;
}

std::int64_t key_int(const std::int64_t& v) { return v; }
std::int64_t key_quad(const QuadraticPrime& v) { return v.p; }

RepresentationReport echo(std::int64_t N0, const FamilyConfig& cfg) {
  RepresentationReport r;
  r.N0 = N0;
  r.a0 = cfg.a0;
  r.c0 = cfg.c0.text();
  r.k = cfg.k;
  r.H = cfg.H;
  return r;
}

void check_mixed(std::int64_t N0, const FamilyConfig& cfg) {
  if (N0 % 2 == 0) throw Error(Errc::parity, "N0 must be odd");
  if (choose_X(N0).X != cfg.X) throw Error(Errc::config, "N0 and the configured X disagree");
}

}  // namespace

std::vector<RepresentationReport> classical_R_batch(std::span<const std::int64_t> N0s) {
  std::vector<RepresentationReport> out;
  if (N0s.empty()) return out;
  for (const std::int64_t n : N0s) check_classical(n);
  const std::int64_t nmax = *std::max_element(N0s.begin(), N0s.end());
  std::vector<double> logw(static_cast<std::size_t>(nmax) + 1, 0.0);
  std::vector<double> unit(static_cast<std::size_t>(nmax) + 1, 0.0);
  for (const std::int64_t p : primes_up_to(nmax)) {
    logw[static_cast<std::size_t>(p)] = std::log(static_cast<double>(p));
    unit[static_cast<std::size_t>(p)] = 1.0;
  }
  const std::vector<double> f2 = linear_convolution(logw, logw);
  const std::vector<double> u2 = linear_convolution(unit, unit);
  for (const std::int64_t N0 : N0s) {
    const auto total = blocked_reduce<Tally>(N0 + 1, Exec::parallel, [&](std::int64_t lo, std::int64_t hi) {
      Tally t;
      KahanSum<double> s;
      for (std::int64_t c = lo; c < hi; ++c) {
        const auto i = static_cast<std::size_t>(c);
        if (unit[i] == 0.0) continue;
        const auto j = static_cast<std::size_t>(N0 - c);
        s.add(logw[i] * f2[j]);
        t.count += std::llround(u2[j]);
      }
      t.weighted = s.value();
      return t;
    });
    RepresentationReport r;
    r.N0 = N0;
    r.raw_count = total.count;
    r.weighted_count = total.weighted;
    const double n = static_cast<double>(N0);
    r.main_term = 0.5 * singular_series(N0, kSeriesCutoff).value * n * n;
    r.ratio = r.weighted_count / r.main_term;
    out.push_back(r);
  }
  return out;
}

RepresentationReport classical_R(std::int64_t N0) {
  const std::int64_t one[1] = {N0};
  return classical_R_batch(one).front();
}

MixedSupports mixed_supports(const FamilyConfig& cfg, const PrimeTable& table, std::int64_t n0_lo,
                             std::int64_t n0_hi) {
  const RationalInterval a = interval_Int(n0_lo, cfg.X);
  const RationalInterval b = interval_Int(n0_hi, cfg.X);
  RationalInterval u = a;
  u.hi_num = b.hi_num;
  MixedSupports s;
  s.ps = ps_primes_in(u, cfg.c0, table);
  s.quadratic = quadratic_primes_in(u, table);
  s.window = construct_window(cfg);
  for (const std::int64_t n : s.window.A_star())
    if (n >= 2 && is_prime_u64(static_cast<std::uint64_t>(n))) s.window_primes.push_back(n);
  return s;
}

double volume_overlap(std::int64_t N0, std::int64_t X, double y) {
  const RationalInterval iv = interval_Int(N0, X);
  const double lo = iv.lower();
  const double hi = iv.upper();
  const double n = static_cast<double>(N0);
  return std::max(0.0, std::min(hi, n - y - lo) - std::max(lo, n - y - hi));
}

double mixed_main_term(std::int64_t N0, const FamilyConfig& cfg, const ShortIntervalWindow& window) {
  KahanSum<double> s;
  for (const std::int64_t n : window.A_star())
    if (n >= 2) s.add(volume_overlap(N0, cfg.X, static_cast<double>(n)) / std::log(static_cast<double>(n)));
  return cfg.gamma0() * cfg.kappa_A() * singular_series_star(N0, kSeriesCutoff).value * s.value();
}

RepresentationReport mixed_representation(std::int64_t N0, const FamilyConfig& cfg, const MixedSupports& sup,
                                          Exec exec) {
  check_mixed(N0, cfg);
  RepresentationReport r = echo(N0, cfg);
  const RationalInterval iv = interval_Int(N0, cfg.X);
  const std::vector<std::int64_t> p2s = members_in(sup.ps, iv, key_int);
  const std::vector<QuadraticPrime> p3s = members_in(sup.quadratic, iv, key_quad);
  const std::int64_t base = sup.window.n_star;
  std::vector<std::uint8_t> is_p1(static_cast<std::size_t>(sup.window.width), 0);
  for (const std::int64_t p : sup.window_primes) is_p1[static_cast<std::size_t>(p - base)] = 1;
  const double g = cfg.gamma0();
  std::vector<double> w2(p2s.size());
  for (std::size_t i = 0; i < p2s.size(); ++i) {
    const double p = static_cast<double>(p2s[i]);
    w2[i] = std::pow(p, 1.0 - g) * std::log(p);
  }
  const auto total = blocked_reduce<Tally>(
      static_cast<std::int64_t>(p3s.size()), exec,
      [&](std::int64_t lo, std::int64_t hi) {
        Tally t;
        KahanSum<double> s;
        for (std::int64_t j = lo; j < hi; ++j) {
          const QuadraticPrime& q = p3s[static_cast<std::size_t>(j)];
          const double w3 = static_cast<double>(q.r) * std::log(static_cast<double>(q.p));
          for (std::size_t i = 0; i < p2s.size(); ++i) {
            const std::int64_t off = N0 - p2s[i] - q.p - base;
            if (off < 0 || off >= sup.window.width || !is_p1[static_cast<std::size_t>(off)]) continue;
            ++t.count;
            s.add(w2[i] * w3);
          }
        }
        t.weighted = s.value();
        return t;
      },
      16);
  r.raw_count = total.count;
  r.weighted_count = total.weighted;
  r.main_term = mixed_main_term(N0, cfg, sup.window);
  r.ratio = r.main_term > 0.0 ? r.weighted_count / r.main_term : 0.0;
  return r;
}

RepresentationReport mixed_representation(std::int64_t N0, const FamilyConfig& cfg, const PrimeTable& table,
                                          Exec exec) {
  check_mixed(N0, cfg);
  return mixed_representation(N0, cfg, mixed_supports(cfg, table, N0, N0), exec);
}

namespace reference {

RepresentationReport mixed_representation(std::int64_t N0, const FamilyConfig& cfg, const MixedSupports& sup) {
  check_mixed(N0, cfg);
  RepresentationReport r = echo(N0, cfg);
  const RationalInterval iv = interval_Int(N0, cfg.X);
  long double weighted = 0.0L;
  for (const QuadraticPrime& q : sup.quadratic) {
    if (!iv.contains(q.p)) continue;
    for (const std::int64_t p2 : sup.ps) {
      if (!iv.contains(p2)) continue;
      const std::int64_t p1 = N0 - p2 - q.p;
      if (!std::binary_search(sup.window_primes.begin(), sup.window_primes.end(), p1)) continue;
      ++r.raw_count;
      const double p = static_cast<double>(p2);
      weighted += static_cast<long double>(std::pow(p, 1.0 - cfg.gamma0()) * std::log(p) * static_cast<double>(q.r) *
                                           std::log(static_cast<double>(q.p)));
    }
  }
  r.weighted_count = static_cast<double>(weighted);
  r.main_term = mixed_main_term(N0, cfg, sup.window);
  r.ratio = r.main_term > 0.0 ? r.weighted_count / r.main_term : 0.0;
  return r;
}

}  // namespace reference
}  // namespace gbw
