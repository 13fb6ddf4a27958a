#include <cmath>
#include <random>

#include "gbw/error.hpp"
#include "gbw/goldbach.hpp"

namespace gbw {
namespace {

constexpr double kFeasTol = 1e-12;

// Removes variable j from a system of forms >= 0.
std::vector<AffineForm> eliminate(const std::vector<AffineForm>& sys, std::size_t j) {
  std::vector<AffineForm> pos, neg, out;
  for (const AffineForm& f : sys) {
    if (f.coeffs[j] > 0) pos.push_back(f);
    else if (f.coeffs[j] < 0) neg.push_back(f);
    else out.push_back(f);
  }
  for (const AffineForm& p : pos) {
    for (const AffineForm& n : neg) {
      const double a = p.coeffs[j], b = -n.coeffs[j];
      AffineForm c{std::vector<double>(p.coeffs.size()), b * p.constant + a * n.constant};
      for (std::size_t i = 0; i < c.coeffs.size(); ++i) c.coeffs[i] = b * p.coeffs[i] + a * n.coeffs[i];
      c.coeffs[j] = 0.0;
      out.push_back(std::move(c));
    }
  }
  return out;
}

McEstimate monte_carlo(const Polytope& R, std::int64_t samples, std::uint64_t seed,
                       const std::function<double(std::span<const double>)>& f) {
  if (samples < 2) throw Error(Errc::out_of_range, "need at least two samples");
  const Box box = R.bounding_box();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> u(static_cast<std::size_t>(R.dim()));
  KahanSum<double> s, s2;
  for (std::int64_t i = 0; i < samples; ++i) {
    for (std::size_t d = 0; d < u.size(); ++d) u[d] = box.lo[d] + (box.hi[d] - box.lo[d]) * unif(rng);
    const double v = R.contains(u) ? f(u) : 0.0;
    s.add(v);
    s2.add(v * v);
  }
  const double n = static_cast<double>(samples);
  const double mean = s.value() / n;
  const double var = std::max(0.0, (s2.value() / n - mean * mean) * n / (n - 1.0));
  const double vol = box.volume();
  return {vol * mean, vol * std::sqrt(var / n), samples};
}

}  // namespace

double AffineForm::operator()(std::span<const double> u) const {
  double s = constant;
  for (std::size_t i = 0; i < coeffs.size(); ++i) s += coeffs[i] * u[i];
  return s;
}

double Box::volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < lo.size(); ++i) v *= std::max(0.0, hi[i] - lo[i]);
  return v;
}

Polytope::Polytope(int dim) : dim_(dim) {
  if (dim < 1) throw Error(Errc::out_of_range, "dimension must be positive");
}

Polytope Polytope::box(std::span<const double> lo, std::span<const double> hi) {
  if (lo.size() != hi.size()) throw Error(Errc::out_of_range, "box bounds differ in length");
  Polytope p(static_cast<int>(lo.size()));
  for (std::size_t i = 0; i < lo.size(); ++i) {
    AffineForm a{std::vector<double>(lo.size(), 0.0), -lo[i]};
    a.coeffs[i] = 1.0;
    AffineForm b{std::vector<double>(lo.size(), 0.0), hi[i]};
    b.coeffs[i] = -1.0;
    p.add(std::move(a));
    p.add(std::move(b));
  }
  return p;
}

void Polytope::add(AffineForm form) {
  if (static_cast<int>(form.coeffs.size()) != dim_) throw Error(Errc::out_of_range, "form dimension mismatch");
  forms_.push_back(std::move(form));
}

bool Polytope::contains(std::span<const double> u) const {
  for (const double x : u)
    if (x < 0.0 || x > 1.0) return false;
  for (const AffineForm& f : forms_)
    if (f(u) < 0.0) return false;
  return true;
}

Box Polytope::bounding_box() const {
  const auto l = static_cast<std::size_t>(dim_);
  std::vector<AffineForm> sys = forms_;
  for (std::size_t i = 0; i < l; ++i) {
    AffineForm lo{std::vector<double>(l, 0.0), 0.0};
    lo.coeffs[i] = 1.0;
    AffineForm hi{std::vector<double>(l, 0.0), 1.0};
    hi.coeffs[i] = -1.0;
    sys.push_back(std::move(lo));
    sys.push_back(std::move(hi));
  }
  Box box{std::vector<double>(l, 0.0), std::vector<double>(l, 1.0)};
  for (std::size_t i = 0; i < l; ++i) {
    std::vector<AffineForm> rest = sys;
    for (std::size_t j = 0; j < l; ++j)
      if (j != i) rest = eliminate(rest, j);
    for (const AffineForm& f : rest) {
      const double a = f.coeffs[i];
      if (a > 0) box.lo[i] = std::max(box.lo[i], -f.constant / a);
      else if (a < 0) box.hi[i] = std::min(box.hi[i], f.constant / -a);
      else if (f.constant < -kFeasTol) box.hi[i] = box.lo[i] - 1.0;  // infeasible
    }
  }
  return box;
}

bool Polytope::empty() const {
  const Box b = bounding_box();
  for (std::size_t i = 0; i < b.lo.size(); ++i)
    if (b.lo[i] > b.hi[i] + kFeasTol) return true;
  return false;
}

McEstimate gamma_estimate(std::int64_t N0, std::int64_t X, const Polytope& R, std::int64_t samples,
                          std::uint64_t seed) {
  if (R.empty()) throw Error(Errc::empty_polytope, "R is empty");
  const double lx = std::log(static_cast<double>(X));
  return monte_carlo(R, samples, seed, [&](std::span<const double> u) {
    double s = 0.0;
    for (const double x : u) s += x;
    const double y = std::pow(static_cast<double>(X), s);
    return volume_overlap(N0, X, y) * y * lx;
  });
}

McEstimate prop43_rhs(const Polytope& R, const std::function<double(std::span<const double>)>& z, double Gamma,
                      const BuchstabTable& omega, std::int64_t samples, std::uint64_t seed, OmegaArgument arg) {
  if (R.empty()) return {0.0, 0.0, samples};
  const Box box = R.bounding_box();
  for (const double lo : box.lo)
    if (lo <= kFeasTol) throw Error(Errc::singular_region, "R reaches a coordinate hyperplane");
  McEstimate m = monte_carlo(R, samples, seed, [&](std::span<const double> u) {
    double s = 0.0, prod = 1.0;
    for (const double x : u) {
      s += x;
      prod *= x;
    }
    const double zu = z(u);
    const double t = arg == OmegaArgument::printed ? 1.0 - s : (1.0 - s) / zu;
    return omega.extended(t) / (prod * zu);
  });
  m.value *= Gamma;
  m.std_error *= std::abs(Gamma);
  return m;
}

}  // namespace gbw
