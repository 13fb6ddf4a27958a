#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "gbw/circle.hpp"
#include "gbw/error.hpp"

namespace gbw {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// E S_c0 (S_Q1 + S_Q3) e(-N0 a / X) at grid index a mod X
std::complex<double> integrand(const ExpSumGrid& E, const CircleContext& ctx, std::int64_t a) {
  const std::int64_t X = ctx.cfg.X;
  const auto k = static_cast<std::size_t>(((a % X) + X) % X);
  const auto r = static_cast<std::int64_t>(static_cast<__int128>(ctx.cfg.N0 % X) * (a % X) % X);
  const std::complex<double> phase = std::polar(1.0, -kTwoPi * static_cast<double>(r) / static_cast<double>(X));
  return E.values[k] * ctx.g_sc0.values[k] * (ctx.g_sq[0].values[k] + ctx.g_sq[2].values[k]) * phase;
}

// Sum of the integrand over every arc I_{c,q}(L) with q in (q_lo, q_hi] whose
// points satisfy |aq - cX| > L_inner, counted with multiplicity.
std::complex<double> arc_sum(const ExpSumGrid& E, const CircleContext& ctx, std::int64_t q_lo, std::int64_t q_hi,
                             std::int64_t L, std::int64_t L_inner) {
  const std::int64_t X = ctx.cfg.X;
  KahanSum<std::complex<double>> s;
  for (std::int64_t q = q_lo + 1; q <= q_hi; ++q) {
    for (std::int64_t c = 0; c <= q; ++c) {
      if (std::gcd(c, q) != 1) continue;
      const __int128 centre = static_cast<__int128>(c) * X;
      const auto lo = static_cast<std::int64_t>((centre - L + q - 1) / q);
      const auto hi = static_cast<std::int64_t>((centre + L) / q);
      for (std::int64_t a = std::max<std::int64_t>(lo, 1); a <= std::min(hi, X); ++a) {
        const __int128 d = static_cast<__int128>(a) * q - centre;
        const __int128 ad = d < 0 ? -d : d;
        if (ad <= L && ad > L_inner) s.add(integrand(E, ctx, a));
      }
    }
  }
  return s.value();
}

}  // namespace

DiagnosticsConfig DiagnosticsConfig::defaults_for(std::int64_t X) {
  const double lx = std::log(static_cast<double>(X));
  DiagnosticsConfig d;
  d.Q0 = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor(lx * lx)), 1, max_arc_denominator(X));
  d.L0 = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor(lx * lx * lx)), 0, max_arc_halfwidth(X));
  return d;
}

std::vector<BoundRatio> bound_diagnostics(const CircleContext& ctx, const DiagnosticsConfig& dcfg,
                                          const PrimeTable& table) {
  const FamilyConfig& cfg = ctx.cfg;
  const std::int64_t X = cfg.X;
  const double Xd = static_cast<double>(X);
  const double lx = std::log(Xd);
  const double size_A = static_cast<double>(cfg.size_A());
  const ExpSumGrid gA = grid_eval(build_S_A(cfg), X);
  const ArcClassification cls = classify_grid(ctx.g_sc0, dcfg.Q0, dcfg.L0, cfg.delta0);
  std::vector<BoundRatio> out;
  auto push = [&](const char* name, double lhs, double rhs) { out.push_back({name, X, lhs, rhs, lhs / rhs}); };

  {
    double mx = 0.0;
    for (std::int64_t a = 1; a <= X; ++a) {
      const auto k = static_cast<std::size_t>(a % X);
      if (cls.points[k].major) mx = std::max(mx, std::abs(ctx.g_sq[2].values[k]));
    }
    push("S_Q3_major_arcs", mx, Xd * std::pow(lx, -dcfg.B));
  }
  {
    const auto qc = static_cast<std::int64_t>(std::floor(std::pow(lx, dcfg.C1)));
    const std::int64_t q_hi = std::min(qc, max_arc_denominator(X));
    const double lhs = std::abs(arc_sum(gA, ctx, 0, q_hi, max_arc_halfwidth(X), dcfg.L0));
    push("arc_tails", lhs, size_A * Xd * Xd * lx / static_cast<double>(std::max<std::int64_t>(dcfg.L0, 1)));
  }
  {
    KahanSum<std::complex<double>> s;
    for (std::int64_t a = 1; a < X; ++a)
      if (cls.points[static_cast<std::size_t>(a)].minor_set) s.add(integrand(gA, ctx, a));
    push("minor_set", std::abs(s.value()), std::sqrt(size_A) * std::pow(Xd, 2.5 - cfg.delta0));
  }
  {
    const std::int64_t Q = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(std::pow(Xd, cfg.delta0))));
    const std::int64_t q_hi = std::min(2 * Q, max_arc_denominator(X));
    const double lhs = std::abs(arc_sum(gA, ctx, Q, q_hi, max_arc_halfwidth(X), -1));
    push("dyadic_denominators", lhs, size_A * Xd * Xd / std::sqrt(static_cast<double>(Q)));
  }
  {
    // von Mangoldt sum up to N = X against the Dirichlet denominator of a/X
    std::vector<Term> lam;
    table.for_each_prime(2, static_cast<std::uint64_t>(X) + 1, [&](std::uint64_t up) {
      const auto p = static_cast<std::int64_t>(up);
      const double lp = std::log(static_cast<double>(p));
      for (std::int64_t pk = p; pk <= X; pk *= p) {
        lam.push_back({pk, lp});
        if (pk > X / p) break;
      }
    });
    const ExpSumGrid gL = grid_eval(WeightedSupport::from_terms(SumLabel::custom, std::move(lam)), X);
    const auto root = static_cast<std::int64_t>(std::floor(std::sqrt(Xd)));
    double best = -1.0, best_lhs = 0.0, best_rhs = 1.0;
    for (std::int64_t a = 1; a < X; ++a) {
      const double q = static_cast<double>(dirichlet_approx_rational(a, X, root).q);
      const double lhs = std::abs(gL.values[static_cast<std::size_t>(a)]);
      const double rhs = std::pow(lx, 3.5) * (Xd / std::sqrt(q) + std::pow(Xd, 0.8) + std::sqrt(Xd * q));
      if (lhs / rhs > best) {
        best = lhs / rhs;
        best_lhs = lhs;
        best_rhs = rhs;
      }
    }
    push("von_mangoldt_minor", best_lhs, best_rhs);
  }
  return out;
}

}  // namespace gbw
