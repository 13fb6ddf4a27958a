#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "gbw/arithmetic.hpp"
#include "gbw/families.hpp"
#include "gbw/parallel.hpp"

namespace gbw {

struct RepresentationReport {
  std::int64_t N0 = 0;
  std::int64_t raw_count = 0;
  double weighted_count = 0.0;
  double main_term = 0.0;
  double ratio = 0.0;
  // family parameters; empty / zero for the classical count
  int a0 = 0;
  std::string c0;
  int k = 0;
  int H = 0;
};

inline constexpr std::int64_t kClassicalMaxN0 = 100'000'000;
inline constexpr std::int64_t kSeriesCutoff = 1'000'000;

/// R(N0) = sum over p1 + p2 + p3 = N0 of log p1 log p2 log p3, with the
/// ordered-triple count in raw_count and main term S(N0) N0^2 / 2.
RepresentationReport classical_R(std::int64_t N0);
/// One self-convolution shared by every N0 in the batch.
std::vector<RepresentationReport> classical_R_batch(std::span<const std::int64_t> N0s);

/// Precomputed family members over an interval covering Int(N0) for every N0 of a campaign.
struct MixedSupports {
  std::vector<std::int64_t> ps;              // Piatetski-Shapiro primes, ascending
  std::vector<QuadraticPrime> quadratic;     // primes with r(p - 1) > 0, ascending
  std::vector<std::int64_t> window_primes;   // A* cap primes, ascending
  ShortIntervalWindow window;
};

/// Members for every Int(N0) with N0 in [n0_lo, n0_hi].
MixedSupports mixed_supports(const FamilyConfig& cfg, const PrimeTable& table, std::int64_t n0_lo,
                             std::int64_t n0_hi);

/// Triples p1 + p2 + p3 = N0 with p1 in A* cap P, p2 a Piatetski-Shapiro prime
/// in Int(N0), p3 in Int(N0) with r(p3 - 1) > 0. The weight of a triple is
/// p2^(1-gamma) r(p3 - 1) log p2 log p3. The main term is the heuristic
/// gamma kappa_A S*(N0) sum_{n in A*} Vol(N0, n) / log n.
RepresentationReport mixed_representation(std::int64_t N0, const FamilyConfig& cfg, const PrimeTable& table,
                                          Exec exec = Exec::parallel);
RepresentationReport mixed_representation(std::int64_t N0, const FamilyConfig& cfg, const MixedSupports& sup,
                                          Exec exec = Exec::parallel);

/// Heuristic main term used by mixed_representation.
double mixed_main_term(std::int64_t N0, const FamilyConfig& cfg, const ShortIntervalWindow& window);

/// Length of {w in Int(N0) : N0 - w - y in Int(N0)}.
double volume_overlap(std::int64_t N0, std::int64_t X, double y);

/// c . u + constant >= 0
struct AffineForm {
  std::vector<double> coeffs;
  double constant = 0.0;

  double operator()(std::span<const double> u) const;
};

struct Box {
  std::vector<double> lo;
  std::vector<double> hi;
  double volume() const;
};

/// {u in [0,1]^l : L(u) >= 0 for every constraint L}.
class Polytope {
 public:
  explicit Polytope(int dim);
  static Polytope box(std::span<const double> lo, std::span<const double> hi);

  void add(AffineForm form);
  int dim() const { return dim_; }
  const std::vector<AffineForm>& constraints() const { return forms_; }
  bool contains(std::span<const double> u) const;

  /// Tight bounding box by Fourier-Motzkin elimination; empty() when infeasible.
  Box bounding_box() const;
  bool empty() const;

 private:
  int dim_;
  std::vector<AffineForm> forms_;
};

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
};

/// Gamma = int_R Vol(N0, X^(u1+...+ul)) X^(u1+...+ul) log X du, i.e. the
/// integral over y = p1...pl with Log(p) uniform on R.
McEstimate gamma_estimate(std::int64_t N0, std::int64_t X, const Polytope& R, std::int64_t samples,
                          std::uint64_t seed = 0);

enum class OmegaArgument {
  printed,   // w(1 - sum u)
  rescaled,  // w((1 - sum u) / z(u))
};

/// Gamma int_R w(.) / (u1...ul z(u)) du. Below 1 the argument uses w(t) = 1/t.
McEstimate prop43_rhs(const Polytope& R, const std::function<double(std::span<const double>)>& z, double Gamma,
                      const BuchstabTable& omega, std::int64_t samples, std::uint64_t seed = 0,
                      OmegaArgument arg = OmegaArgument::printed);

namespace reference {
RepresentationReport mixed_representation(std::int64_t N0, const FamilyConfig& cfg, const MixedSupports& sup);
}  // namespace reference

}  // namespace gbw
