#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gbw/expsum.hpp"
#include "gbw/parallel.hpp"

namespace gbw {

struct Fraction {
  std::int64_t c;
  std::int64_t q;
};

/// Last continued-fraction convergent c/q of theta with q <= N, so that
/// |theta - c/q| <= 1/(qN). The double is expanded exactly as a dyadic rational.
Fraction dirichlet_approx(double theta, std::int64_t N);
/// Same for theta = a / b given exactly.
Fraction dirichlet_approx_rational(std::int64_t a, std::int64_t b, std::int64_t N);

/// I_{c,q}(L) = [c/q - L/(qX), c/q + L/(qX)].
struct Arc {
  std::int64_t c = 0;
  std::int64_t q = 1;
  std::int64_t L = 0;
  std::int64_t X = 1;

  /// a/X lies in the arc, tested as |a q - c X| <= L.
  bool contains(std::int64_t a) const;
  double lower() const;
  double upper() const;
};

/// floor(X^(4/5)) + 1 and floor(X^(1/5)) + 1, computed exactly.
std::int64_t max_arc_denominator(std::int64_t X);
std::int64_t max_arc_halfwidth(std::int64_t X);

/// All arcs with q <= Q0, 0 <= c <= q, gcd(c, q) = 1.
std::vector<Arc> build_arcs(std::int64_t X, std::int64_t Q0, std::int64_t L0);

struct GridPoint {
  std::int64_t c = 0;
  std::int64_t q = 0;
  bool major = false;     // inside some I_{c,q}(L0) with q <= Q0
  bool fallback = false;  // only covered at maximal (q, L), via dirichlet_approx
  bool minor_set = false; // |S_c0(a/X)| <= X^(1 - delta0) and 0 < a < X
};

struct ArcClassification {
  std::int64_t X = 0;
  std::int64_t Q0 = 0;
  std::int64_t L0 = 0;
  std::vector<GridPoint> points;  // index a mod X
  std::int64_t major_count = 0;
  std::int64_t fallback_count = 0;
  std::int64_t uncovered = 0;
  double minor_fraction = 0.0;
};

ArcClassification classify_grid(const ExpSumGrid& sc0, std::int64_t Q0, std::int64_t L0, double delta0);

/// Per grid index a mod X; nonzero entries are kept.
using GridMask = std::vector<std::uint8_t>;

GridMask mask_from_arcs(std::span<const Arc> arcs, std::int64_t X);

/// (1/X) sum_{1 <= a <= X} E S_c0 S_Q e(-N0 a / X), optionally restricted.
std::complex<double> convolve(const ExpSumGrid& E, const ExpSumGrid& Sc0, const ExpSumGrid& SQ, std::int64_t N0,
                              const GridMask* restriction = nullptr, Exec exec = Exec::parallel);

/// sum over m + p2 + p3 = N0 of v(m) w2(p2) w3(p3), with the weights the
/// supports carry.
double mean_value(const WeightedSupport& E, const WeightedSupport& c0, const WeightedSupport& Q, std::int64_t N0);

struct OrthogonalityReport {
  std::array<std::complex<double>, 3> J{};
  double alias = 0.0;  // contribution of m = N0 - p2 - p3 + sX, s != 0
  int offsets = 0;
  double M = 0.0;
  double residual = 0.0;
};

/// |J1 + J2 + J3 - alias - M| / (1 + |M|). More than two aliasing offsets
/// throw aliasing.
OrthogonalityReport orthogonality_check(const WeightedSupport& E, const WeightedSupport& c0,
                                        const std::array<WeightedSupport, 3>& q_parts, std::int64_t N0,
                                        std::int64_t X);

/// Everything the circle-method diagnostics share for one configuration.
struct CircleContext {
  FamilyConfig cfg;
  WeightedSupport sc0;
  SQSplit sq;
  ExpSumGrid g_sc0;
  std::array<ExpSumGrid, 3> g_sq;
};

CircleContext make_circle_context(const FamilyConfig& cfg, const PrimeTable& table);

OrthogonalityReport orthogonality_check(const WeightedSupport& E, const CircleContext& ctx);

/// M(E) with the printed weights p2^(1-gamma) log p2 and r(p3 - 1) log p3,
/// given M computed with the builder weights.
inline double printed_mean_value(double M, const FamilyConfig& cfg) { return 4.0 * cfg.gamma0() * M; }

struct ApproxResult {
  std::complex<double> approx;
  std::complex<double> actual;
  double error = 0.0;
  double normalized_error = 0.0;  // error / X
};

/// mu(q)/phi(q) sum_{n in Int} e(n xi) against S_c0(c/q + xi).
ApproxResult major_arc_approx_Sc0(std::int64_t c, std::int64_t q, double xi, const CircleContext& ctx);
ApproxResult major_arc_approx_Sc0(std::int64_t c, std::int64_t q, double xi, const FamilyConfig& cfg,
                                  const PrimeTable& table);

/// sum_{d <= D} chi(d) c_d(c, q, 1) / phi([q, d]) sum_{m in Int} e(m xi) against S_Q^(1)(c/q + xi).
ApproxResult major_arc_approx_SQ1(std::int64_t c, std::int64_t q, double xi, const CircleContext& ctx);
ApproxResult major_arc_approx_SQ1(std::int64_t c, std::int64_t q, double xi, const FamilyConfig& cfg,
                                  const PrimeTable& table);

struct MajorArcScan {
  double max_sc0 = 0.0;  // largest normalized error over the scanned points
  double max_sq1 = 0.0;
  std::int64_t points = 0;
};

/// Both approximants at c/q + xi over q <= q_max, gcd(c, q) = 1,
/// xi = j * xi_max / steps for |j| <= steps, xi_max = 8 / (qX).
MajorArcScan major_arc_scan(const CircleContext& ctx, std::int64_t q_max = 5, int steps = 8);

struct DiagnosticsConfig {
  std::int64_t Q0 = 0;
  std::int64_t L0 = 0;
  double C1 = 2.0;
  double A = 2.0;
  double B = 2.0;
  double epsilon = 0.01;

  /// Q0 = (log X)^2 and L0 = (log X)^3, clamped to the arc maxima.
  static DiagnosticsConfig defaults_for(std::int64_t X);
};

struct BoundRatio {
  std::string name;
  std::int64_t X = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

/// LHS / RHS health ratios for the arc and prime-sum bounds, using E = S_A.
std::vector<BoundRatio> bound_diagnostics(const CircleContext& ctx, const DiagnosticsConfig& dcfg,
                                          const PrimeTable& table);

enum class JPart { J13, J2 };

struct NegligibilityResult {
  std::array<std::complex<double>, 3> J{};
  double ratio = 0.0;
};

/// |J| log X / (size X) with J = J1 + J3 or J2.
NegligibilityResult negligibility_ratio(const WeightedSupport& E, const CircleContext& ctx, JPart part, double size);

namespace reference {
std::complex<double> convolve(const ExpSumGrid& E, const ExpSumGrid& Sc0, const ExpSumGrid& SQ, std::int64_t N0,
                              const GridMask* restriction = nullptr);
}  // namespace reference

}  // namespace gbw
