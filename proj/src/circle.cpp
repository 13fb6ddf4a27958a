#include "gbw/circle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "gbw/arithmetic.hpp"
#include "gbw/error.hpp"

namespace gbw {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  const std::int64_t q = a / b;
  return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

Fraction convergent(__int128 num, __int128 den, std::int64_t N) {
  __int128 h2 = 0, h1 = 1, k2 = 1, k1 = 0;
  while (den != 0) {
    const __int128 a = num / den;
    const __int128 h = a * h1 + h2;
    const __int128 k = a * k1 + k2;
    if (k > N) break;
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
    const __int128 r = num - a * den;
    num = den;
    den = r;
  }
  return {static_cast<std::int64_t>(h1), static_cast<std::int64_t>(k1)};
}

std::complex<double> interval_geometric_sum(const RationalInterval& iv, double xi) {
  KahanSum<std::complex<double>> s;
  for (std::int64_t n = iv.first_int(); n <= iv.last_int(); ++n) s.add(e_phase(n, xi));
  return s.value();
}

ApproxResult sc0_approx(std::int64_t c, std::int64_t q, double xi, const FamilyConfig& cfg,
                        const WeightedSupport& sc0) {
  ApproxResult r;
  const double factor = static_cast<double>(mobius(q)) / static_cast<double>(euler_phi(q));
  r.approx = factor * interval_geometric_sum(cfg.Int(), xi);
  r.actual = eval_shifted(sc0, c, q, xi);
  r.error = std::abs(r.actual - r.approx);
  r.normalized_error = r.error / static_cast<double>(cfg.X);
  return r;
}

ApproxResult sq1_approx(std::int64_t c, std::int64_t q, double xi, const FamilyConfig& cfg, const SQSplit& sq) {
  std::complex<double> coef = 0.0;
  for (std::int64_t d = 1; static_cast<double>(d) <= sq.D; d += 2) {
    const std::int64_t l = std::lcm(q, d);
    coef += static_cast<double>(chi4(d)) * ramanujan_like_sum(c, q, d, 1) / static_cast<double>(euler_phi(l));
  }
  ApproxResult r;
  r.approx = coef * interval_geometric_sum(cfg.Int(), xi);
  r.actual = eval_shifted(sq.parts[0], c, q, xi);
  r.error = std::abs(r.actual - r.approx);
  r.normalized_error = r.error / static_cast<double>(cfg.X);
  return r;
}

void check_grids(const ExpSumGrid& E, const ExpSumGrid& S, const ExpSumGrid& Q, const GridMask* mask) {
  const std::int64_t X = E.X;
  if (S.X != X || Q.X != X || static_cast<std::int64_t>(E.values.size()) != X ||
      static_cast<std::int64_t>(S.values.size()) != X || static_cast<std::int64_t>(Q.values.size()) != X ||
      (mask && static_cast<std::int64_t>(mask->size()) != X))
    throw Error(Errc::grid_mismatch, "grids must share X");
}

// largest m with m^5 <= n
std::int64_t iroot5(__int128 n) {
  auto m = static_cast<std::int64_t>(std::pow(static_cast<long double>(n), 0.2L));
  auto pow5 = [](__int128 v) { return v * v * v * v * v; };
  while (m > 0 && pow5(m) > n) --m;
  while (pow5(static_cast<__int128>(m) + 1) <= n) ++m;
  return m;
}

}  // namespace

Fraction dirichlet_approx(double theta, std::int64_t N) {
  if (N < 1) throw Error(Errc::out_of_range, "N must be positive");
  if (!(theta >= 0.0 && theta <= 1.0)) throw Error(Errc::out_of_range, "theta must lie in [0, 1]");
  if (theta < 0x1p-70) return {0, 1};
  int exp = 0;
  const double mant = std::frexp(theta, &exp);  // theta = mant 2^exp
  const auto num = static_cast<__int128>(std::ldexp(mant, 53));
  const __int128 den = static_cast<__int128>(1) << (53 - exp);
  return convergent(num, den, N);
}

Fraction dirichlet_approx_rational(std::int64_t a, std::int64_t b, std::int64_t N) {
  if (N < 1 || b < 1) throw Error(Errc::out_of_range, "N and b must be positive");
  return convergent(a, b, N);
}

bool Arc::contains(std::int64_t a) const {
  const __int128 diff = static_cast<__int128>(a) * q - static_cast<__int128>(c) * X;
  return (diff < 0 ? -diff : diff) <= L;
}

double Arc::lower() const {
  return (static_cast<double>(c) * static_cast<double>(X) - static_cast<double>(L)) /
         (static_cast<double>(q) * static_cast<double>(X));
}

double Arc::upper() const {
  return (static_cast<double>(c) * static_cast<double>(X) + static_cast<double>(L)) /
         (static_cast<double>(q) * static_cast<double>(X));
}

std::int64_t max_arc_denominator(std::int64_t X) {
  const __int128 x = X;
  return iroot5(x * x * x * x) + 1;
}

std::int64_t max_arc_halfwidth(std::int64_t X) { return iroot5(X) + 1; }

std::vector<Arc> build_arcs(std::int64_t X, std::int64_t Q0, std::int64_t L0) {
  if (X < 1) throw Error(Errc::out_of_range, "X must be positive");
  if (Q0 < 1 || Q0 > max_arc_denominator(X)) throw Error(Errc::range, "Q0 outside [1, floor(X^(4/5)) + 1]");
  if (L0 < 0 || L0 > max_arc_halfwidth(X)) throw Error(Errc::range, "L0 outside [0, floor(X^(1/5)) + 1]");
  std::vector<Arc> arcs;
  arcs.push_back({0, 1, L0, X});
  arcs.push_back({1, 1, L0, X});
  for (std::int64_t q = 2; q <= Q0; ++q)
    for (std::int64_t c = 1; c < q; ++c)
      if (std::gcd(c, q) == 1) arcs.push_back({c, q, L0, X});
  return arcs;
}

ArcClassification classify_grid(const ExpSumGrid& sc0, std::int64_t Q0, std::int64_t L0, double delta0) {
  const std::int64_t X = sc0.X;
  if (static_cast<std::int64_t>(sc0.values.size()) != X) throw Error(Errc::grid_mismatch, "grid length is not X");
  const std::int64_t qmax = max_arc_denominator(X);
  const std::int64_t lmax = max_arc_halfwidth(X);
  if (Q0 < 1 || Q0 > qmax || L0 < 0 || L0 > lmax) throw Error(Errc::range, "arc parameters out of range");
  ArcClassification out;
  out.X = X;
  out.Q0 = Q0;
  out.L0 = L0;
  out.points.resize(static_cast<std::size_t>(X));
  const double threshold = std::pow(static_cast<double>(X), 1.0 - delta0);
  std::int64_t minor = 0;
#pragma omp parallel for schedule(dynamic, 256) reduction(+ : minor)
  for (std::int64_t a = 1; a <= X; ++a) {
    GridPoint& g = out.points[static_cast<std::size_t>(a % X)];
    for (std::int64_t q = 1; q <= Q0 && !g.major; ++q) {
      const std::int64_t c = floor_div(2 * a * q + X, 2 * X);
      const Arc arc{c, q, L0, X};
      if (std::gcd(c, q) == 1 && arc.contains(a)) {
        g.c = c;
        g.q = q;
        g.major = true;
      }
    }
    if (!g.major) {
      const Fraction f = dirichlet_approx_rational(a, X, qmax);
      if (Arc{f.c, f.q, lmax, X}.contains(a)) {
        g.c = f.c;
        g.q = f.q;
        g.fallback = true;
      }
    }
    if (a < X && std::abs(sc0.values[static_cast<std::size_t>(a)]) <= threshold) {
      g.minor_set = true;
      ++minor;
    }
  }
  for (const GridPoint& g : out.points) {
    out.major_count += g.major;
    out.fallback_count += g.fallback;
    out.uncovered += !g.major && !g.fallback;
  }
  out.minor_fraction = static_cast<double>(minor) / static_cast<double>(X);
  return out;
}

GridMask mask_from_arcs(std::span<const Arc> arcs, std::int64_t X) {
  GridMask mask(static_cast<std::size_t>(X), 0);
  for (const Arc& arc : arcs) {
    if (arc.X != X) throw Error(Errc::grid_mismatch, "arc built for another X");
    const std::int64_t lo = ceil_div(arc.c * X - arc.L, arc.q);
    const std::int64_t hi = floor_div(arc.c * X + arc.L, arc.q);
    for (std::int64_t a = std::max<std::int64_t>(lo, 1); a <= std::min(hi, X); ++a)
      mask[static_cast<std::size_t>(a % X)] = 1;
  }
  return mask;
}

std::complex<double> convolve(const ExpSumGrid& E, const ExpSumGrid& Sc0, const ExpSumGrid& SQ, std::int64_t N0,
                              const GridMask* restriction, Exec exec) {
  check_grids(E, Sc0, SQ, restriction);
  const std::int64_t X = E.X;
  const std::int64_t n0 = ((N0 % X) + X) % X;
  const auto total = blocked_reduce<std::complex<double>>(X, exec, [&](std::int64_t lo, std::int64_t hi) {
    KahanSum<std::complex<double>> s;
    for (std::int64_t i = lo; i < hi; ++i) {
      const auto k = static_cast<std::size_t>(i);
      if (restriction && !(*restriction)[k]) continue;
      const auto r = static_cast<std::int64_t>(static_cast<__int128>(n0) * i % X);
      const std::complex<double> phase = std::polar(1.0, -kTwoPi * static_cast<double>(r) / static_cast<double>(X));
      s.add(E.values[k] * Sc0.values[k] * SQ.values[k] * phase);
    }
    return s.value();
  });
  return total / static_cast<double>(X);
}

double mean_value(const WeightedSupport& E, const WeightedSupport& c0, const WeightedSupport& Q, std::int64_t N0) {
  if (E.empty() || c0.empty() || Q.empty()) return 0.0;
  const std::int64_t base = E.min_n();
  std::vector<double> v(static_cast<std::size_t>(E.max_n() - base + 1), 0.0);
  for (const Term& t : E.entries) v[static_cast<std::size_t>(t.n - base)] = t.weight;
  const auto n2 = static_cast<std::int64_t>(c0.size());
  return blocked_reduce<double>(
      n2, Exec::parallel,
      [&](std::int64_t lo, std::int64_t hi) {
        KahanSum<double> s;
        for (std::int64_t i = lo; i < hi; ++i) {
          const Term& p2 = c0.entries[static_cast<std::size_t>(i)];
          for (const Term& p3 : Q.entries) {
            const std::int64_t m = N0 - p2.n - p3.n;
            if (m < base || m > E.max_n()) continue;
            const double vm = v[static_cast<std::size_t>(m - base)];
            if (vm != 0.0) s.add(vm * p2.weight * p3.weight);
          }
        }
        return s.value();
      },
      32);
}

OrthogonalityReport orthogonality_check(const WeightedSupport& E, const WeightedSupport& c0,
                                        const std::array<WeightedSupport, 3>& q_parts, std::int64_t N0,
                                        std::int64_t X) {
  OrthogonalityReport rep;
  std::vector<Term> all;
  for (const WeightedSupport& part : q_parts) all.insert(all.end(), part.entries.begin(), part.entries.end());
  const WeightedSupport Q = WeightedSupport::from_terms(SumLabel::S_Q_full, std::move(all));
  if (E.empty() || c0.empty() || Q.empty()) return rep;

  const std::int64_t tmin = N0 - c0.max_n() - Q.max_n();
  const std::int64_t tmax = N0 - c0.min_n() - Q.min_n();
  const std::int64_t s_lo = ceil_div(E.min_n() - tmax, X);
  const std::int64_t s_hi = floor_div(E.max_n() - tmin, X);
  for (std::int64_t s = s_lo; s <= s_hi; ++s) rep.offsets += s != 0;
  if (rep.offsets > 2) throw Error(Errc::aliasing, "supports too wide for the grid size");

  const ExpSumGrid gE = grid_eval(E, X);
  const ExpSumGrid gc = grid_eval(c0, X);
  for (int i = 0; i < 3; ++i) rep.J[i] = convolve(gE, gc, grid_eval(q_parts[i], X), N0);
  for (std::int64_t s = s_lo; s <= s_hi; ++s)
    if (s != 0) rep.alias += mean_value(E, c0, Q, N0 + s * X);
  rep.M = mean_value(E, c0, Q, N0);
  rep.residual = std::abs(rep.J[0] + rep.J[1] + rep.J[2] - rep.alias - rep.M) / (1.0 + std::abs(rep.M));
  return rep;
}

CircleContext make_circle_context(const FamilyConfig& cfg, const PrimeTable& table) {
  CircleContext ctx;
  ctx.cfg = cfg;
  ctx.sc0 = build_S_c0(cfg, table);
  ctx.sq = build_S_Q_split(cfg, table);
  ctx.g_sc0 = grid_eval(ctx.sc0, cfg.X);
  for (int i = 0; i < 3; ++i) ctx.g_sq[i] = grid_eval(ctx.sq.parts[i], cfg.X);
  return ctx;
}

OrthogonalityReport orthogonality_check(const WeightedSupport& E, const CircleContext& ctx) {
  return orthogonality_check(E, ctx.sc0, ctx.sq.parts, ctx.cfg.N0, ctx.cfg.X);
}

ApproxResult major_arc_approx_Sc0(std::int64_t c, std::int64_t q, double xi, const CircleContext& ctx) {
  return sc0_approx(c, q, xi, ctx.cfg, ctx.sc0);
}

ApproxResult major_arc_approx_Sc0(std::int64_t c, std::int64_t q, double xi, const FamilyConfig& cfg,
                                  const PrimeTable& table) {
  return sc0_approx(c, q, xi, cfg, build_S_c0(cfg, table));
}

ApproxResult major_arc_approx_SQ1(std::int64_t c, std::int64_t q, double xi, const CircleContext& ctx) {
  return sq1_approx(c, q, xi, ctx.cfg, ctx.sq);
}

ApproxResult major_arc_approx_SQ1(std::int64_t c, std::int64_t q, double xi, const FamilyConfig& cfg,
                                  const PrimeTable& table) {
  return sq1_approx(c, q, xi, cfg, build_S_Q_split(cfg, table));
}

MajorArcScan major_arc_scan(const CircleContext& ctx, std::int64_t q_max, int steps) {
  MajorArcScan scan;
  for (std::int64_t q = 1; q <= q_max; ++q) {
    const double xi_max = 8.0 / (static_cast<double>(q) * static_cast<double>(ctx.cfg.X));
    for (std::int64_t c = 0; c < q; ++c) {
      if (std::gcd(c, q) != 1) continue;
      for (int j = -steps; j <= steps; ++j) {
        const double xi = xi_max * j / steps;
        scan.max_sc0 = std::max(scan.max_sc0, sc0_approx(c, q, xi, ctx.cfg, ctx.sc0).normalized_error);
        scan.max_sq1 = std::max(scan.max_sq1, sq1_approx(c, q, xi, ctx.cfg, ctx.sq).normalized_error);
        ++scan.points;
      }
    }
  }
  return scan;
}

NegligibilityResult negligibility_ratio(const WeightedSupport& E, const CircleContext& ctx, JPart part, double size) {
  NegligibilityResult r;
  if (E.empty()) return r;
  const ExpSumGrid gE = grid_eval(E, ctx.cfg.X);
  for (int i = 0; i < 3; ++i) r.J[i] = convolve(gE, ctx.g_sc0, ctx.g_sq[i], ctx.cfg.N0);
  const std::complex<double> J = part == JPart::J13 ? r.J[0] + r.J[2] : r.J[1];
  const auto X = static_cast<double>(ctx.cfg.X);
  r.ratio = std::abs(J) * std::log(X) / (size * X);
  return r;
}

namespace reference {

std::complex<double> convolve(const ExpSumGrid& E, const ExpSumGrid& Sc0, const ExpSumGrid& SQ, std::int64_t N0,
                              const GridMask* restriction) {
  check_grids(E, Sc0, SQ, restriction);
  const std::int64_t X = E.X;
  long double re = 0.0L, im = 0.0L;
  for (std::int64_t a = 1; a <= X; ++a) {
    const auto k = static_cast<std::size_t>(a % X);
    if (restriction && !(*restriction)[k]) continue;
    const long double t = -static_cast<long double>(kTwoPi) * static_cast<long double>(((N0 % X) * a) % X) /
                          static_cast<long double>(X);
    const std::complex<double> v = E.values[k] * Sc0.values[k] * SQ.values[k] *
                                   std::complex<double>(static_cast<double>(std::cos(t)), static_cast<double>(std::sin(t)));
    re += v.real();
    im += v.imag();
  }
  return {static_cast<double>(re / X), static_cast<double>(im / X)};
}

}  // namespace reference
}  // namespace gbw
