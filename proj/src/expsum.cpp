#include "gbw/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gbw/error.hpp"
#include "gbw/fft.hpp"

namespace gbw {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// e(num / den) with 0 <= num < den
std::complex<double> unit_rational(std::int64_t num, std::int64_t den) {
  return std::polar(1.0, kTwoPi * static_cast<double>(num) / static_cast<double>(den));
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  const __int128 r = static_cast<__int128>(a) * b % m;
  return static_cast<std::int64_t>(r < 0 ? r + m : r);
}

WeightedSupport primes_with_weight(SumLabel label, const FamilyConfig& cfg, const PrimeTable& table, bool ps_only,
                                   double (*weight)(std::int64_t, double)) {
  const RationalInterval iv = cfg.Int();
  std::vector<Term> terms;
  if (ps_only) {
    for (const std::int64_t p : ps_primes_in(iv, cfg.c0, table)) terms.push_back({p, weight(p, cfg.gamma0())});
  } else {
    const std::int64_t a = std::max<std::int64_t>(iv.first_int(), 2);
    const std::int64_t b = iv.last_int();
    if (b >= a)
      table.for_each_prime(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b + 1), [&](std::uint64_t p) {
        terms.push_back({static_cast<std::int64_t>(p), weight(static_cast<std::int64_t>(p), cfg.gamma0())});
      });
  }
  return WeightedSupport::from_terms(label, std::move(terms));
}

double ps_weight(std::int64_t p, double gamma) {
  const double pd = static_cast<double>(p);
  return std::log(pd) * std::pow(pd, 1.0 - gamma) / gamma;
}

double log_weight(std::int64_t p, double) { return std::log(static_cast<double>(p)); }

}  // namespace

std::string_view label_name(SumLabel label) {
  switch (label) {
    case SumLabel::S_A: return "S_A";
    case SumLabel::S_B: return "S_B";
    case SumLabel::S_AcapP: return "S_AcapP";
    case SumLabel::S_c0: return "S_c0";
    case SumLabel::S_Q_full: return "S_Q";
    case SumLabel::S_Q_1: return "S_Q_1";
    case SumLabel::S_Q_2: return "S_Q_2";
    case SumLabel::S_Q_3: return "S_Q_3";
    case SumLabel::S_d_z: return "S_d_z";
    case SumLabel::custom: return "custom";
  }
  return "custom";
}

WeightedSupport WeightedSupport::from_terms(SumLabel label, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.n < b.n; });
  WeightedSupport w;
  w.label = label;
  for (const Term& t : terms) {
    if (!w.entries.empty() && w.entries.back().n == t.n) {
      w.entries.back().weight += t.weight;
    } else {
      w.entries.push_back(t);
    }
  }
  std::erase_if(w.entries, [](const Term& t) { return t.weight == 0.0; });
  return w;
}

double WeightedSupport::total_weight() const {
  KahanSum<double> s;
  for (const Term& t : entries) s.add(t.weight);
  return s.value();
}

double WeightedSupport::l1_mass() const {
  KahanSum<double> s;
  for (const Term& t : entries) s.add(std::abs(t.weight));
  return s.value();
}

WeightedSupport build_S_A(const FamilyConfig& cfg) {
  std::vector<Term> terms;
  for (const std::int64_t n : DigitSet(cfg.k, cfg.a0).members()) terms.push_back({n, 1.0});
  return WeightedSupport::from_terms(SumLabel::S_A, std::move(terms));
}

WeightedSupport build_S_A(const ShortIntervalWindow& window) {
  std::vector<Term> terms;
  for (const std::int64_t n : window.A_star()) terms.push_back({n, 1.0});
  return WeightedSupport::from_terms(SumLabel::S_A, std::move(terms));
}

WeightedSupport build_S_AcapP(const FamilyConfig& cfg, const PrimeTable& table) {
  std::vector<Term> terms;
  table.for_each_prime(2, static_cast<std::uint64_t>(cfg.X), [&](std::uint64_t p) {
    if (digit_member(static_cast<std::int64_t>(p), cfg)) terms.push_back({static_cast<std::int64_t>(p), 1.0});
  });
  return WeightedSupport::from_terms(SumLabel::S_AcapP, std::move(terms));
}

WeightedSupport build_S_AcapP(const ShortIntervalWindow& window, const PrimeTable& table) {
  std::vector<Term> terms;
  for (const std::int64_t n : window.A_star())
    if (n >= 2 && table.is_prime(static_cast<std::uint64_t>(n))) terms.push_back({n, 1.0});
  return WeightedSupport::from_terms(SumLabel::S_AcapP, std::move(terms));
}

WeightedSupport build_S_P(const PrimeTable& table, std::int64_t lo, std::int64_t hi) {
  std::vector<Term> terms;
  lo = std::max<std::int64_t>(lo, 2);
  if (hi >= lo)
    table.for_each_prime(static_cast<std::uint64_t>(lo), static_cast<std::uint64_t>(hi + 1),
                         [&](std::uint64_t p) { terms.push_back({static_cast<std::int64_t>(p), 1.0}); });
  return WeightedSupport::from_terms(SumLabel::custom, std::move(terms));
}

WeightedSupport build_S_c0(const FamilyConfig& cfg, const PrimeTable& table) {
  return primes_with_weight(SumLabel::S_c0, cfg, table, true, ps_weight);
}

WeightedSupport build_S_c0_unrestricted(const FamilyConfig& cfg, const PrimeTable& table) {
  return primes_with_weight(SumLabel::custom, cfg, table, false, ps_weight);
}

WeightedSupport build_S_P_log(const FamilyConfig& cfg, const PrimeTable& table) {
  return primes_with_weight(SumLabel::custom, cfg, table, false, log_weight);
}

double divisor_cutoff_D(std::int64_t X, double C0) {
  const double x = static_cast<double>(X);
  return std::sqrt(x) * std::pow(std::log(x), -C0);
}

SQSplit build_S_Q_split(const FamilyConfig& cfg, const PrimeTable& table, const Factorizer& fac) {
  SQSplit out;
  out.D = divisor_cutoff_D(cfg.X, cfg.C0);
  const double upper = static_cast<double>(cfg.X) / out.D;
  const RationalInterval iv = cfg.Int();
  std::array<std::vector<Term>, 3> terms;
  const std::int64_t a = std::max<std::int64_t>(iv.first_int(), 2);
  const std::int64_t b = iv.last_int();
  if (b >= a)
    table.for_each_prime(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b + 1), [&](std::uint64_t up) {
      const auto p = static_cast<std::int64_t>(up);
      std::array<std::int64_t, 3> c{0, 0, 0};
      for (const std::int64_t d : divisors(fac(p - 1))) {
        const auto dd = static_cast<double>(d);
        const int part = dd <= out.D ? 0 : (dd <= upper ? 1 : 2);
        c[part] += chi4(d);
      }
      const double lp = std::log(static_cast<double>(p));
      for (int i = 0; i < 3; ++i) terms[i].push_back({p, static_cast<double>(c[i]) * lp});
      out.primes.push_back(p);
      out.coefficients.push_back(c);
    });
  const SumLabel labels[3] = {SumLabel::S_Q_1, SumLabel::S_Q_2, SumLabel::S_Q_3};
  for (int i = 0; i < 3; ++i) out.parts[i] = WeightedSupport::from_terms(labels[i], std::move(terms[i]));
  return out;
}

WeightedSupport build_S_Q_full(const FamilyConfig& cfg, const PrimeTable& table, QRoute route, bool times_four,
                               const Factorizer& fac) {
  const RationalInterval iv = cfg.Int();
  std::vector<Term> terms;
  const std::int64_t a = std::max<std::int64_t>(iv.first_int(), 2);
  const std::int64_t b = iv.last_int();
  const double scale = times_four ? 4.0 : 1.0;
  if (b >= a)
    table.for_each_prime(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b + 1), [&](std::uint64_t up) {
      const auto p = static_cast<std::int64_t>(up);
      const Factorization f = fac(p - 1);
      std::int64_t s = 0;
      if (route == QRoute::two_squares) {
        s = r_two_squares(f) / 4;
      } else {
        for (const std::int64_t d : divisors(f)) s += chi4(d);
      }
      terms.push_back({p, scale * static_cast<double>(s) * std::log(static_cast<double>(p))});
    });
  return WeightedSupport::from_terms(SumLabel::S_Q_full, std::move(terms));
}

SiftedSupport build_sifted(const FamilyConfig& cfg, std::int64_t d, double z) {
  if (d < 1) throw Error(Errc::out_of_range, "d must be positive");
  const std::int64_t limit = (cfg.X + d - 1) / d;  // n < X / d
  std::vector<std::int64_t> spf(static_cast<std::size_t>(std::max<std::int64_t>(limit, 2)), 0);
  for (std::int64_t i = 2; i < limit; ++i) {
    if (spf[static_cast<std::size_t>(i)]) continue;
    for (std::int64_t j = i; j < limit; j += i)
      if (!spf[static_cast<std::size_t>(j)]) spf[static_cast<std::size_t>(j)] = i;
  }
  SiftedSupport out;
  out.b_scale = cfg.kappa_A() * static_cast<double>(cfg.size_A()) / static_cast<double>(cfg.X);
  std::vector<Term> a_terms, b_terms, both;
  for (std::int64_t n = 0; n < limit; ++n) {
    // 0 is divisible by every prime, so it is rough only when no prime is <= z
    const bool rough = n == 0 ? z < 2.0 : (n == 1 || static_cast<double>(spf[static_cast<std::size_t>(n)]) > z);
    if (!rough) continue;
    const double in_a = digit_member(n * d, cfg) ? 1.0 : 0.0;
    if (in_a != 0.0) a_terms.push_back({n, 1.0});
    b_terms.push_back({n, 1.0});
    both.push_back({n, in_a - out.b_scale});
  }
  out.a_part = WeightedSupport::from_terms(SumLabel::S_d_z, std::move(a_terms));
  out.b_part = WeightedSupport::from_terms(SumLabel::S_d_z, std::move(b_terms));
  out.combined = WeightedSupport::from_terms(SumLabel::S_d_z, std::move(both));
  return out;
}

std::complex<double> e_phase(std::int64_t n, double theta) {
  long double x = static_cast<long double>(n) * static_cast<long double>(theta);
  x -= std::floor(x);
  return std::polar(1.0, kTwoPi * static_cast<double>(x));
}

std::complex<double> eval_point(const WeightedSupport& w, double theta) {
  KahanSum<std::complex<double>> s;
  for (const Term& t : w.entries) s.add(t.weight * e_phase(t.n, theta));
  return s.value();
}

std::complex<double> eval_rational(const WeightedSupport& w, std::int64_t a, std::int64_t q) {
  KahanSum<std::complex<double>> s;
  const std::int64_t ar = ((a % q) + q) % q;
  for (const Term& t : w.entries) s.add(t.weight * unit_rational(mulmod(t.n, ar, q), q));
  return s.value();
}

std::complex<double> eval_shifted(const WeightedSupport& w, std::int64_t c, std::int64_t q, double xi) {
  KahanSum<std::complex<double>> s;
  const std::int64_t cr = ((c % q) + q) % q;
  const long double x = xi;
  for (const Term& t : w.entries) {
    long double f = static_cast<long double>(t.n) * x;
    f -= std::floor(f);
    const std::complex<double> phase = unit_rational(mulmod(t.n, cr, q), q) * std::polar(1.0, kTwoPi * static_cast<double>(f));
    s.add(t.weight * phase);
  }
  return s.value();
}

ExpSumGrid grid_eval(const WeightedSupport& w, std::int64_t X) {
  std::vector<double> folded(static_cast<std::size_t>(X), 0.0);
  for (const Term& t : w.entries) folded[static_cast<std::size_t>(((t.n % X) + X) % X)] += t.weight;
  return {X, exp_sum_transform(folded)};
}

double F_Y(double theta, int m, int a0) {
  double prod = 1.0;
  long double scale = 1.0L;
  for (int j = 0; j < m; ++j) {
    std::complex<double> f = 0.0;
    for (int digit = 0; digit < 10; ++digit) {
      if (digit == a0) continue;
      long double x = static_cast<long double>(digit) * scale * theta;
      x -= std::floor(x);
      f += std::polar(1.0, kTwoPi * static_cast<double>(x));
    }
    prod *= std::abs(f) / 9.0;
    scale *= 10.0L;
  }
  return prod;
}

namespace reference {

ExpSumGrid grid_eval(const WeightedSupport& w, std::int64_t X, Exec exec) {
  ExpSumGrid g{X, std::vector<std::complex<double>>(static_cast<std::size_t>(X))};
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t a = 0; a < X; ++a) g.values[static_cast<std::size_t>(a)] = eval_rational(w, a, X);
  } else {
    for (std::int64_t a = 0; a < X; ++a) g.values[static_cast<std::size_t>(a)] = eval_rational(w, a, X);
  }
  return g;
}

}  // namespace reference
}  // namespace gbw
