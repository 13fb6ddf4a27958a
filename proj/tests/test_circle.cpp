#include <cmath>
#include <numeric>

#include "doctest.h"
#include "gbw/circle.hpp"
#include "gbw/error.hpp"

using namespace gbw;

TEST_CASE("Dirichlet approximation") {
  const Fraction a = dirichlet_approx(1.0 / 3.0, 10);
  CHECK(a.c == 1);
  CHECK(a.q == 3);
  const Fraction b = dirichlet_approx(0.30, 10);
  CHECK(b.c == 3);
  CHECK(b.q == 10);
  for (std::int64_t x = 1; x < 997; x += 13) {
    const Fraction f = dirichlet_approx_rational(x, 997, 31);
    CHECK(f.q <= 31);
    CHECK(std::abs(static_cast<double>(x) / 997 - static_cast<double>(f.c) / f.q) <= 1.0 / (f.q * 31.0) + 1e-15);
  }
}

TEST_CASE("arc geometry") {
  CHECK(max_arc_denominator(1000) == static_cast<std::int64_t>(std::floor(std::pow(1000.0, 0.8))) + 1);
  CHECK(max_arc_halfwidth(1000) == static_cast<std::int64_t>(std::floor(std::pow(1000.0, 0.2))) + 1);
  const std::int64_t X = 1000;
  const auto arcs = build_arcs(X, max_arc_denominator(X), max_arc_halfwidth(X));
  const GridMask m = mask_from_arcs(arcs, X);
  for (std::int64_t a = 1; a <= X; ++a) {
    bool hit = false;
    for (const Arc& arc : arcs)
      hit = hit || std::abs(static_cast<double>(a) / X - static_cast<double>(arc.c) / arc.q) <=
                       static_cast<double>(arc.L) / (arc.q * static_cast<double>(X)) + 1e-12;
    CHECK(hit);
    CHECK(m[static_cast<std::size_t>(a % X)] == 1);
  }
  const auto small = build_arcs(X, 1, 1);
  REQUIRE(small.size() == 2);
  CHECK(small[0].contains(0));
  CHECK(small[1].contains(X));
}

TEST_CASE("grid classification") {
  const FamilyConfig cfg = FamilyConfig::make(7, PsExponent(21, 20), 40'001);
  const PrimeTable t = sieve_primes(2, 40'003);
  const CircleContext ctx = make_circle_context(cfg, t);
  const DiagnosticsConfig d = DiagnosticsConfig::defaults_for(cfg.X);
  const ArcClassification c = classify_grid(ctx.g_sc0, d.Q0, d.L0, cfg.delta0);
  CHECK(c.uncovered == 0);
  const GridPoint& zero = c.points[0];
  CHECK(zero.major);
  CHECK(zero.q == 1);
  CHECK_FALSE(zero.minor_set);
  const FamilyConfig big = FamilyConfig::make(7, PsExponent(21, 20), 400'001);
  const CircleContext ctx5 = make_circle_context(big, sieve_primes(2, 400'003));
  const DiagnosticsConfig d5 = DiagnosticsConfig::defaults_for(big.X);
  CHECK(classify_grid(ctx5.g_sc0, d5.Q0, d5.L0, big.delta0).minor_fraction > c.minor_fraction);
}

TEST_CASE("convolution against a brute-force triple loop") {
  const std::int64_t X = 100, N0 = 250;
  std::vector<Term> e, p, q;
  for (std::int64_t n = 1; n < 60; n += 3) e.push_back({n, 1.0 + 0.1 * n});
  for (std::int64_t n = 2; n < 90; n += 7) p.push_back({n, std::log(static_cast<double>(n))});
  for (std::int64_t n = 5; n < 95; n += 4) q.push_back({n, n % 3 == 0 ? -1.0 : 2.0});
  const auto E = WeightedSupport::from_terms(SumLabel::custom, e);
  const auto P = WeightedSupport::from_terms(SumLabel::custom, p);
  const auto Q = WeightedSupport::from_terms(SumLabel::custom, q);
  double brute = 0.0;
  for (const Term& a : e)
    for (const Term& b : p)
      for (const Term& c : q)
        if ((a.n + b.n + c.n - N0) % X == 0) brute += a.weight * b.weight * c.weight;
  const auto gE = grid_eval(E, X), gP = grid_eval(P, X), gQ = grid_eval(Q, X);
  CHECK(std::abs(convolve(gE, gP, gQ, N0) - brute) < 1e-8);
  CHECK(std::abs(reference::convolve(gE, gP, gQ, N0) - brute) < 1e-8);
  CHECK(std::abs(convolve(gE, gP, gQ, N0, nullptr, Exec::serial) - convolve(gE, gP, gQ, N0)) == 0.0);
  const auto one = grid_eval(WeightedSupport::from_terms(SumLabel::custom, {{0, 1.0}}), X);
  CHECK(std::abs(convolve(one, one, one, 300) - 1.0) < 1e-12);
  double exact = 0.0;
  for (const Term& a : e)
    for (const Term& b : p)
      for (const Term& c : q)
        if (a.n + b.n + c.n == N0 - X) exact += a.weight * b.weight * c.weight;
  CHECK(mean_value(E, P, Q, N0 - X) == doctest::Approx(exact));
  CHECK_THROWS_AS(convolve(gE, grid_eval(P, 50), gQ, N0), Error);
}

TEST_CASE("orthogonality identity") {
  for (const std::int64_t N0 : {4'001, 40'001}) {
    const FamilyConfig cfg = FamilyConfig::make(7, PsExponent(21, 20), N0);
    const PrimeTable t = sieve_primes(2, static_cast<std::uint64_t>(N0) + 2);
    const CircleContext ctx = make_circle_context(cfg, t);
    CHECK(orthogonality_check(build_S_A(cfg), ctx).residual < 1e-6);
    CHECK(orthogonality_check(WeightedSupport{}, ctx).residual == 0.0);
  }
}

TEST_CASE("major-arc approximants") {
  const FamilyConfig cfg = FamilyConfig::make(7, PsExponent(1, 1), 40'001);
  const PrimeTable t = sieve_primes(2, 40'003);
  const CircleContext ctx = make_circle_context(cfg, t);
  const ApproxResult r = major_arc_approx_Sc0(0, 1, 0.0, ctx);
  const RationalInterval iv = cfg.Int();
  double sum = 0.0;
  for (std::int64_t p = iv.first_int(); p <= iv.last_int(); ++p)
    if (t.is_prime(static_cast<std::uint64_t>(p))) sum += std::log(static_cast<double>(p));
  CHECK(r.actual.real() == doctest::Approx(sum));
  CHECK(r.approx.real() == doctest::Approx(static_cast<double>(iv.last_int() - iv.first_int() + 1)).epsilon(0.01));
  CHECK(std::abs(major_arc_approx_Sc0(1, 4, 0.0, ctx).approx) == 0.0);
  CHECK(major_arc_scan(ctx).points > 0);
}

TEST_CASE("negligibility of the zero sum") {
  const FamilyConfig cfg = FamilyConfig::make(7, PsExponent(21, 20), 4'001);
  const CircleContext ctx = make_circle_context(cfg, sieve_primes(2, 4'003));
  CHECK(negligibility_ratio(WeightedSupport{}, ctx, JPart::J13, 1.0).ratio == 0.0);
}
