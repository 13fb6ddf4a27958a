#include <cmath>
#include <random>

#include "doctest.h"
#include "gbw/arithmetic.hpp"
#include "gbw/error.hpp"
#include "gbw/goldbach.hpp"

using namespace gbw;

TEST_CASE("classical count by hand") {
  const double l2 = std::log(2.0), l3 = std::log(3.0), l5 = std::log(5.0);
  const RepresentationReport r7 = classical_R(7);
  CHECK(r7.weighted_count == doctest::Approx(3 * l2 * l2 * l3));
  CHECK(r7.raw_count == 3);
  const RepresentationReport r9 = classical_R(9);
  CHECK(r9.weighted_count == doctest::Approx(3 * l2 * l2 * l5 + l3 * l3 * l3));
  CHECK(r9.raw_count == 4);
  CHECK_THROWS_AS(classical_R(10), Error);
}

TEST_CASE("classical count against a triple loop") {
  const auto P = primes_up_to(400);
  for (std::int64_t n : {101, 201, 301, 401}) {
    double w = 0.0;
    std::int64_t raw = 0;
    for (std::int64_t a : P)
      for (std::int64_t b : P) {
        const std::int64_t c = n - a - b;
        if (c >= 2 && is_prime_u64(static_cast<std::uint64_t>(c))) {
          ++raw;
          w += std::log(double(a)) * std::log(double(b)) * std::log(double(c));
        }
      }
    const RepresentationReport r = classical_R(n);
    CHECK(r.raw_count == raw);
    CHECK(r.weighted_count == doctest::Approx(w).epsilon(1e-9));
  }
  const std::vector<std::int64_t> ns{1'001, 2'001, 3'001};
  const auto batch = classical_R_batch(ns);
  for (std::size_t i = 0; i < ns.size(); ++i) CHECK(batch[i].weighted_count == doctest::Approx(classical_R(ns[i]).weighted_count));
}

TEST_CASE("mixed representation: parallel, reference and a direct loop") {
  const std::int64_t N0 = 200'001;
  const FamilyConfig cfg = FamilyConfig::make(7, PsExponent(21, 20), N0);
  const PrimeTable t = sieve_primes(2, N0 + 2);
  const MixedSupports sup = mixed_supports(cfg, t, N0, N0 + 20);
  for (std::int64_t n = N0; n <= N0 + 20; n += 2) {
    const RepresentationReport a = mixed_representation(n, cfg, sup);
    const RepresentationReport b = reference::mixed_representation(n, cfg, sup);
    CHECK(a.raw_count == b.raw_count);
    CHECK(a.weighted_count == doctest::Approx(b.weighted_count).epsilon(1e-12));
    CHECK(a.weighted_count == mixed_representation(n, cfg, sup, Exec::serial).weighted_count);
    const RationalInterval iv = interval_Int(n, cfg.X);
    std::int64_t raw = 0;
    for (std::int64_t p1 : sup.window_primes)
      for (std::int64_t p2 = iv.first_int(); p2 <= iv.last_int(); ++p2) {
        const std::int64_t p3 = n - p1 - p2;
        if (!iv.contains(p3) || !t.is_prime(std::uint64_t(p2)) || !t.is_prime(std::uint64_t(p3))) continue;
        if (ps_member(p2, cfg.c0) && r_two_squares(p3 - 1) > 0) ++raw;
      }
    CHECK(a.raw_count == raw);
  }
  CHECK_THROWS_AS(mixed_representation(N0 + 1, cfg, sup), Error);
}

TEST_CASE("volume overlap") {
  const std::int64_t N0 = 400'001, X = 100'000;
  const RationalInterval iv = interval_Int(N0, X);
  const double mid = 0.5 * (iv.lower() + iv.upper());
  CHECK(volume_overlap(N0, X, N0 - 2 * mid) == doctest::Approx(X / 8.0));
  CHECK(volume_overlap(N0, X, 0.0) == 0.0);
}

TEST_CASE("polytopes and Monte Carlo integrals") {
  Polytope R(2);
  R.add({{1.0, 0.0}, -0.1});
  R.add({{0.0, 1.0}, -0.2});
  R.add({{-1.0, -1.0}, 0.6});
  const Box b = R.bounding_box();
  CHECK(b.lo[0] == doctest::Approx(0.1));
  CHECK(b.hi[0] == doctest::Approx(0.4));
  CHECK(b.hi[1] == doctest::Approx(0.5));
  Polytope empty(1);
  empty.add({{1.0}, -0.8});
  empty.add({{-1.0}, 0.2});
  CHECK(empty.empty());

  const std::vector<double> lo{0.25}, hi{0.5};
  const Polytope seg = Polytope::box(lo, hi);
  const BuchstabTable omega = buchstab_omega(20.0, 1e-4);
  const auto z = [](std::span<const double>) { return 0.25; };
  const McEstimate est = prop43_rhs(seg, z, 1.0, omega, 200'000, 7);
  CHECK(std::abs(est.value - 4.0 * std::log(3.0)) < 5 * est.std_error + 1e-3);
  CHECK(prop43_rhs(empty, z, 1.0, omega, 100, 1).value == 0.0);
  const McEstimate a = gamma_estimate(400'001, 100'000, seg, 1000, 3);
  const McEstimate b2 = gamma_estimate(400'001, 100'000, seg, 1000, 3);
  CHECK(a.value == b2.value);
  const std::vector<double> zlo{0.0}, zhi{0.5};
  CHECK_THROWS_AS(prop43_rhs(Polytope::box(zlo, zhi), z, 1.0, omega, 100, 1), Error);
}
