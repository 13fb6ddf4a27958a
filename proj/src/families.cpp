#include "gbw/families.hpp"

#include <quadmath.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numeric>

#include "gbw/error.hpp"

namespace gbw {
namespace {

using boost::multiprecision::cpp_int;

std::int64_t pow10(int k) {
  std::int64_t r = 1;
  for (int i = 0; i < k; ++i) r *= 10;
  return r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

cpp_int ipow(std::int64_t base, std::int64_t e) { return boost::multiprecision::pow(cpp_int(base), static_cast<unsigned>(e)); }

PsDecision ps_exact(std::int64_t p, std::int64_t u, std::int64_t v) {
  // smallest n with n^u >= p^v, then test n^u < (p+1)^v
  const cpp_int lo = ipow(p, v);
  const cpp_int hi = ipow(p + 1, v);
  auto n = static_cast<std::int64_t>(
      std::ceil(std::pow(static_cast<long double>(p), static_cast<long double>(v) / static_cast<long double>(u))));
  n = std::max<std::int64_t>(n, 1);
  while (n > 1 && ipow(n - 1, u) >= lo) --n;
  while (ipow(n, u) < lo) ++n;
  return {ipow(n, u) < hi, false};
}

PsDecision ps_float(std::int64_t p, double c0) {
  const __float128 g = static_cast<__float128>(1) / static_cast<__float128>(c0);
  const __float128 lo = powq(static_cast<__float128>(p), g);
  const __float128 hi = powq(static_cast<__float128>(p + 1), g);
  const __float128 n = ceilq(lo);
  const __float128 guard = static_cast<__float128>(1e-18) * n;
  const bool undecidable = fabsq(n - lo) < guard || fabsq(hi - n) < guard;
  return {n < hi, undecidable};
}

}  // namespace

PsExponent::PsExponent(std::int64_t num, std::int64_t den) {
  if (num <= 0 || den <= 0) throw Error(Errc::config, "c0 must be a positive rational");
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
  value_ = static_cast<double>(num_) / static_cast<double>(den_);
  text_ = std::to_string(num_) + "/" + std::to_string(den_);
}

PsExponent PsExponent::from_string(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    PsExponent e(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
    e.text_ = text;
    return e;
  }
  const auto dot = text.find('.');
  const std::string digits = dot == std::string::npos ? text : text.substr(0, dot) + text.substr(dot + 1);
  const std::size_t decimals = dot == std::string::npos ? 0 : text.size() - dot - 1;
  const bool plain = !digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos;
  if (plain && decimals <= 6 && digits.size() <= 12) {
    PsExponent e(std::stoll(digits), pow10(static_cast<int>(decimals)));
    e.text_ = text;
    return e;
  }
  PsExponent e = from_double(std::stod(text));
  e.text_ = text;
  return e;
}

PsExponent PsExponent::from_double(double c0) {
  if (!(c0 > 0.0)) throw Error(Errc::config, "c0 must be positive");
  PsExponent e;
  e.value_ = c0;
  e.num_ = 0;
  e.den_ = 0;
  e.text_ = std::to_string(c0);
  return e;
}

PsDecision ps_classify(std::int64_t p, const PsExponent& c0) {
  if (p < 1) return {false, false};
  if (c0.exact()) {
    if (c0.num() == c0.den()) return {true, false};
    return ps_exact(p, c0.num(), c0.den());
  }
  return ps_float(p, c0.value());
}

bool ps_member(std::int64_t p, const PsExponent& c0) { return ps_classify(p, c0).member; }

ScaleChoice choose_X(std::int64_t N0) {
  if (N0 < 20) throw Error(Errc::too_small, "N0 must be at least 20");
  int k = 1;
  std::int64_t X = 10;
  while (20 * X <= N0) {
    X *= 10;
    ++k;
  }
  return {k, X};
}

bool RationalInterval::contains(std::int64_t n) const {
  const std::int64_t v = n * den;
  const bool above = lo_closed ? v >= lo_num : v > lo_num;
  const bool below = hi_closed ? v <= hi_num : v < hi_num;
  return above && below;
}

std::int64_t RationalInterval::first_int() const {
  std::int64_t n = floor_div(lo_num, den);
  while (!(lo_closed ? n * den >= lo_num : n * den > lo_num)) ++n;
  return n;
}

std::int64_t RationalInterval::last_int() const {
  std::int64_t n = floor_div(hi_num, den) + 1;
  while (!(hi_closed ? n * den <= hi_num : n * den < hi_num)) --n;
  return n;
}

RationalInterval interval_Int(std::int64_t N0, std::int64_t X) { return {4 * N0 - 2 * X, 4 * N0 - X, 8, false, true}; }

RationalInterval interval_Int_alt(std::int64_t N0, std::int64_t X) { return {N0 - X, 2 * N0 - 2 * X, 8, true, true}; }

FamilyConfig FamilyConfig::make(int a0, PsExponent c0, std::int64_t N0, double C0, double delta0, int H) {
  FamilyConfig cfg;
  cfg.a0 = a0;
  cfg.c0 = std::move(c0);
  cfg.N0 = N0;
  const ScaleChoice s = choose_X(N0);
  cfg.k = s.k;
  cfg.X = s.X;
  cfg.C0 = C0;
  cfg.delta0 = delta0;
  cfg.H = H;
  cfg.validate();
  return cfg;
}

double FamilyConfig::kappa_A() const { return std::gcd(10, a0) == 1 ? 5.0 / 6.0 : 10.0 / 9.0; }

std::int64_t FamilyConfig::size_A() const {
  std::int64_t r = 1;
  for (int i = 0; i < k; ++i) r *= 9;
  return r;
}

void FamilyConfig::validate() const {
  auto fail = [](const std::string& m) { throw Error(Errc::config, m); };
  if (a0 < 0 || a0 > 9) fail("a0 must be a digit");
  if (c0.value() < 1.0 || gamma0() <= kGammaStar) fail("c0 must satisfy 1 <= c0 < 1/gamma*");
  if (k < 1 || k > 17 || X != pow10(k)) fail("X must equal 10^k");
  if (N0 % 2 == 0) fail("N0 must be odd");
  if (N0 < 2 * X || N0 >= 20 * X) fail("N0 must satisfy 2X <= N0 < 20X");
  if (!(C0 > 0.0)) fail("C0 must be positive");
  if (!(delta0 > 0.0) || 9.0 * (1.0 - gamma0()) + 12.0 * delta0 >= 1.0) fail("delta0 must satisfy 9(1-gamma0)+12 delta0 < 1");
  if (H < 1 || H > k) fail("H must satisfy 1 <= H <= k");
}

std::vector<std::int64_t> ps_primes_in(const RationalInterval& iv, const PsExponent& c0, const PrimeTable& table) {
  std::vector<std::int64_t> out;
  const std::int64_t a = std::max<std::int64_t>(iv.first_int(), 2);
  const std::int64_t b = iv.last_int();
  if (b < a) return out;
  table.for_each_prime(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b + 1), [&](std::uint64_t p) {
    if (ps_member(static_cast<std::int64_t>(p), c0)) out.push_back(static_cast<std::int64_t>(p));
  });
  return out;
}

std::vector<QuadraticPrime> quadratic_primes_in(const RationalInterval& iv, const PrimeTable& table, const Factorizer& fac) {
  std::vector<QuadraticPrime> out;
  const std::int64_t a = std::max<std::int64_t>(iv.first_int(), 2);
  const std::int64_t b = iv.last_int();
  if (b < a) return out;
  table.for_each_prime(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b + 1), [&](std::uint64_t up) {
    const auto p = static_cast<std::int64_t>(up);
    const std::int64_t r = r_two_squares(fac(p - 1));
    if (r > 0) out.push_back({p, r});
  });
  return out;
}

bool digit_member(std::int64_t n, int digits, int a0) {
  if (n < 0 || n >= pow10(digits)) throw Error(Errc::out_of_range, "n has more digits than allowed");
  for (int i = 0; i < digits; ++i) {
    if (n % 10 == a0) return false;
    n /= 10;
  }
  return true;
}

bool digit_member(std::int64_t n, const FamilyConfig& cfg) { return digit_member(n, cfg.k, cfg.a0); }

std::int64_t DigitSet::size() const {
  std::int64_t r = 1;
  for (int i = 0; i < k_; ++i) r *= 9;
  return r;
}

std::vector<std::int64_t> DigitSet::members() const {
  std::vector<std::int64_t> out{0};
  for (int i = 0; i < k_; ++i) {
    std::vector<std::int64_t> next;
    next.reserve(out.size() * 9);
    for (const std::int64_t m : out)
      for (int d = 0; d < 10; ++d)
        if (d != a0_) next.push_back(m * 10 + d);
    out = std::move(next);
  }
  return out;
}

DigitSplit split_digits(std::int64_t n, int k, int H) {
  const std::int64_t p = pow10(k - H);
  return {n / p * p, n % p};
}

std::vector<std::int64_t> ShortIntervalWindow::A_star() const {
  std::vector<std::int64_t> out;
  for (std::int64_t n = n_star; n < n_star + width; ++n)
    if (digit_member(n, k, a0)) out.push_back(n);
  return out;
}

ShortIntervalWindow construct_window(const FamilyConfig& cfg) {
  if (cfg.H < 3) throw Error(Errc::window_too_short, "H must be at least 3");
  if (cfg.H > cfg.k) throw Error(Errc::range, "H must not exceed k");
  std::vector<int> prefix;
  if (cfg.a0 == 4) {
    prefix = {5, 0, 9};
  } else if (cfg.a0 == 9) {
    prefix = {5, 0};
  } else {
    prefix = {4, 9};
  }
  const int pad = cfg.a0 == 0 ? 1 : 0;
  while (static_cast<int>(prefix.size()) < cfg.H) prefix.push_back(pad);
  std::int64_t head = 0;
  for (const int d : prefix) {
    if (d == cfg.a0) throw Error(Errc::range, "window prefix collides with a0");
    head = head * 10 + d;
  }
  ShortIntervalWindow w;
  w.width = pow10(cfg.k - cfg.H);
  w.n_star = head * w.width;
  w.k = cfg.k;
  w.H = cfg.H;
  w.a0 = cfg.a0;
  const std::int64_t centre = 5 * pow10(cfg.k - 1);
  if (2 * std::abs(w.n_star - centre) > 3 * pow10(cfg.k - 2)) throw Error(Errc::range, "window anchor too far from X/2");
  return w;
}

}  // namespace gbw
