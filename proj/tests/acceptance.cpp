// One pass/fail line per acceptance criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gbw/arithmetic.hpp"
#include "gbw/circle.hpp"
#include "gbw/expsum.hpp"
#include "gbw/goldbach.hpp"
#include "gbw/primes.hpp"
#include "gbw/sieve.hpp"

using namespace gbw;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void run(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = dt <= budget_s;
  const bool pass = o.pass && in_time;
  failures += !pass;
  std::printf("criterion %2d %s  %-28s %s  [%.2f s / %.0f s]\n", id, pass ? "PASS" : "FAIL", name, o.detail.c_str(), dt,
              budget_s);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

FamilyConfig family(std::int64_t X) { return FamilyConfig::make(7, PsExponent(21, 20), 4 * X + 1); }

}  // namespace

int main() {
  run(1, "partition X=1e4", 10, [] {
    const FamilyConfig cfg = family(10'000);
    const PrimeTable table = sieve_primes(2, static_cast<std::uint64_t>(cfg.N0) + 2);
    const SQSplit split = build_S_Q_split(cfg, table);
    std::map<std::int64_t, double> total;
    for (const auto& part : split.parts)
      for (const auto& t : part.entries) total[t.n] += t.weight;
    std::int64_t int_bad = 0;
    double worst = 0.0;
    for (std::size_t i = 0; i < split.primes.size(); ++i) {
      const std::int64_t p = split.primes[i];
      const auto& c = split.coefficients[i];
      const std::int64_t s = divisor_chi_sum(p - 1);
      int_bad += (c[0] + c[1] + c[2] != s);
      const double want = static_cast<double>(s) * std::log(static_cast<double>(p));
      const auto it = total.find(p);
      const double got = it == total.end() ? 0.0 : it->second;
      worst = std::max(worst, want == 0.0 ? std::abs(got) : std::abs(got - want) / std::abs(want));
    }
    return Outcome{int_bad == 0 && worst < 1e-12 && !split.primes.empty(),
                   fmt("primes=%.0f int_mismatch=%.0f max_rel=%.2e", static_cast<double>(split.primes.size()),
                       static_cast<double>(int_bad), worst)};
  });

  run(2, "orthogonality X=1e3,1e4", 60, [] {
    double worst = 0.0;
    for (const std::int64_t X : {1'000, 10'000}) {
      const FamilyConfig cfg = family(X);
      const PrimeTable table = sieve_primes(2, static_cast<std::uint64_t>(cfg.N0) + 2);
      const CircleContext ctx = make_circle_context(cfg, table);
      for (const WeightedSupport& E : {build_S_A(cfg), build_S_AcapP(cfg, table)})
        worst = std::max(worst, orthogonality_check(E, ctx).residual);
    }
    return Outcome{worst < 1e-6, fmt("max residual=%.2e (E = S_A, S_AcapP)", worst)};
  });

  run(3, "two squares n<=1e5", 60, [] {
    const std::int64_t n_max = 100'000;
    std::vector<std::int64_t> lattice(n_max + 1, 0);
    for (std::int64_t x = -316; x <= 316; ++x)
      for (std::int64_t y = -316; y <= 316; ++y)
        if (x * x + y * y <= n_max) ++lattice[static_cast<std::size_t>(x * x + y * y)];
    std::int64_t bad = 0;
    for (std::int64_t n = 1; n <= n_max; ++n) {
      const std::int64_t r = r_two_squares(n);
      bad += (r != lattice[static_cast<std::size_t>(n)]) || (r != 4 * divisor_chi_sum(n));
    }
    return Outcome{bad == 0, fmt("exceptions=%.0f", static_cast<double>(bad))};
  });

  run(4, "buchstab", 5, [] {
    const BuchstabTable t = buchstab_omega(20.0, 1e-4);
    double err = 0.0;
    for (int i = 0; i <= 10'000; ++i) {
      const double u = 2.0 + i * 1e-4;
      err = std::max(err, std::abs(t(u) - (1.0 + std::log(u - 1.0)) / u));
    }
    const double d20 = std::abs(t(20.0) - 0.56146);
    return Outcome{err < 10 * 1e-4 && d20 < 2e-4, fmt("max err [2,3]=%.2e |omega(20)-0.56146|=%.2e", err, d20)};
  });

  run(5, "sandwich + fundamental lemma", 120, [] {
    const SieveWeights lo = build_lambda(1e3, 10.0, SieveVariant::lower);
    const SieveWeights hi = build_lambda(1e3, 10.0, SieveVariant::upper);
    const SandwichReport s = sandwich_check(lo, hi, 100'000);
    auto g = [](std::int64_t p) { return 1.0 / static_cast<double>(p); };
    const FundamentalLemmaReport a = fundamental_lemma_check(g, 1e4, 100.0);
    const FundamentalLemmaReport b = fundamental_lemma_check(g, 1e8, 100.0);
    const bool up = std::abs(b.upper_ratio_minus_1) < std::abs(a.upper_ratio_minus_1);
    const bool dn = std::abs(b.lower_ratio_minus_1) < std::abs(a.lower_ratio_minus_1);
    return Outcome{s.violations == 0 && up && dn,
                   fmt("violations=%.0f |upper-1| %.3e -> %.3e |lower-1| %.3e -> ", static_cast<double>(s.violations),
                       std::abs(a.upper_ratio_minus_1), std::abs(b.upper_ratio_minus_1),
                       std::abs(a.lower_ratio_minus_1)) +
                       fmt("%.3e", std::abs(b.lower_ratio_minus_1))};
  });

  run(6, "arc covering X=1e3", 10, [] {
    const std::int64_t X = 1'000;
    const auto arcs = build_arcs(X, max_arc_denominator(X), max_arc_halfwidth(X));
    std::int64_t uncovered = 0;
    for (std::int64_t a = 1; a <= X; ++a) {
      bool hit = false;
      for (const Arc& arc : arcs)
        if (arc.contains(a)) {
          hit = true;
          break;
        }
      uncovered += !hit;
    }
    return Outcome{uncovered == 0, fmt("arcs=%.0f uncovered=%.0f", static_cast<double>(arcs.size()),
                                       static_cast<double>(uncovered))};
  });

  run(7, "vinogradov ratio", 300, [] {
    std::vector<std::int64_t> ns;
    for (int i = 0; i < 20; ++i) ns.push_back(1'000'001 + 50 * i);
    const auto reps = classical_R_batch(ns);
    double lo = 1e300, hi = -1e300;
    std::string out;
    for (const auto& r : reps) {
      lo = std::min(lo, r.ratio);
      hi = std::max(hi, r.ratio);
      if (r.ratio < 0.9 || r.ratio > 1.1) out += " N0=" + std::to_string(r.N0);
    }
    return Outcome{out.empty(), fmt("ratio in [%.4f, %.4f]", lo, hi) + out};
  });

  run(8, "campaign [200001,202001]", 600, [] {
    const std::int64_t lo = 200'001, hi = 202'001;
    const FamilyConfig cfg = FamilyConfig::make(7, PsExponent(21, 20), lo);
    const PrimeTable table = sieve_primes(2, static_cast<std::uint64_t>(hi) + 2);
    const MixedSupports sup = mixed_supports(cfg, table, lo, hi);
    std::int64_t total = 0, nonzero = 0;
    std::string zeros;
    for (std::int64_t n = lo; n <= hi; n += 2) {
      ++total;
      if (mixed_representation(n, cfg, sup).raw_count > 0) ++nonzero;
      else zeros += " " + std::to_string(n);
    }
    const double rate = static_cast<double>(nonzero) / static_cast<double>(total);
    return Outcome{rate >= 0.99, fmt("nonzero %.0f/%.0f rate=%.4f; zero at:", static_cast<double>(nonzero),
                                     static_cast<double>(total), rate) + zeros};
  });

  run(9, "negligibility trend k=4->5", 120, [] {
    double e1[2], j2[2];
    for (int i = 0; i < 2; ++i) {
      const std::int64_t X = i == 0 ? 10'000 : 100'000;
      const FamilyConfig cfg = family(X);
      const PrimeTable table = sieve_primes(2, static_cast<std::uint64_t>(cfg.N0) + 2);
      const CircleContext ctx = make_circle_context(cfg, table);
      const ShortIntervalWindow win = construct_window(cfg);
      const double size = static_cast<double>(win.A_star().size());
      e1[i] = negligibility_ratio(build_type_sum(cfg, TypeSumKind::E1).combined, ctx, JPart::J13, size).ratio;
      j2[i] = negligibility_ratio(build_S_AcapP(win, table), ctx, JPart::J2, size).ratio;
    }
    return Outcome{e1[1] < e1[0] && j2[1] < j2[0],
                   fmt("E1 %.3e -> %.3e  J2(S_A*capP) %.3e -> %.3e", e1[0], e1[1], j2[0], j2[1])};
  });

  run(10, "major-arc approximants", 120, [] {
    MajorArcScan s[2];
    for (int i = 0; i < 2; ++i) {
      const FamilyConfig cfg = family(i == 0 ? 10'000 : 100'000);
      const PrimeTable table = sieve_primes(2, static_cast<std::uint64_t>(cfg.N0) + 2);
      s[i] = major_arc_scan(make_circle_context(cfg, table));
    }
    return Outcome{s[1].max_sc0 < s[0].max_sc0 && s[1].max_sq1 < s[0].max_sq1,
                   fmt("S_c0 %.3e -> %.3e  S_Q1 %.3e -> %.3e", s[0].max_sc0, s[1].max_sc0, s[0].max_sq1, s[1].max_sq1)};
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
