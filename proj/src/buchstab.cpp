#include <cmath>

#include "gbw/arithmetic.hpp"
#include "gbw/error.hpp"

namespace gbw {

BuchstabTable::BuchstabTable(double u_max, double step, std::vector<double> values)
    : u_max_(u_max), step_(step), values_(std::move(values)) {}

double BuchstabTable::operator()(double u) const {
  if (u < 1.0 || u > u_max_ + 1e-12) throw Error(Errc::out_of_range, "omega queried outside [1, u_max]");
  if (u <= 2.0) return 1.0 / u;
  const double x = (u - 1.0) / step_;
  auto i = static_cast<std::size_t>(x);
  if (i + 1 >= values_.size()) return values_.back();
  const double t = x - static_cast<double>(i);
  return values_[i] * (1.0 - t) + values_[i + 1] * t;
}

double BuchstabTable::extended(double u) const {
  if (u > 0.0 && u < 1.0) return 1.0 / u;
  return (*this)(u);
}

namespace {

class Solver {
 public:
  Solver(double h, std::size_t n) : h_(h), w_(n + 1) {
    for (std::size_t i = 0; i <= n; ++i) {
      const double u = grid(i);
      if (u <= 2.0) {
        w_[i] = 1.0 / u;
        first_ode_ = i + 1;
      }
    }
    // first grid index not left of the kink at u = 2
    kink_ = first_ode_ - (grid(first_ode_ - 1) == 2.0 ? 1 : 0);
  }

  double grid(std::size_t i) const { return 1.0 + static_cast<double>(i) * h_; }

  // omega(x) for x <= u_done via the exact branch or cubic history.
  double delayed(double x, std::size_t done) const {
    if (x <= 2.0) return 1.0 / x;
    const auto j = static_cast<std::ptrdiff_t>(std::floor((x - 1.0) / h_));
    std::ptrdiff_t base = j - 1;
    base = std::max(base, static_cast<std::ptrdiff_t>(kink_));
    base = std::min(base, static_cast<std::ptrdiff_t>(done) - 3);
    double acc = 0.0;
    for (int a = 0; a < 4; ++a) {
      double l = 1.0;
      const double xa = grid(static_cast<std::size_t>(base + a));
      for (int b = 0; b < 4; ++b) {
        if (a == b) continue;
        const double xb = grid(static_cast<std::size_t>(base + b));
        l *= (x - xb) / (xa - xb);
      }
      acc += l * w_[static_cast<std::size_t>(base + a)];
    }
    return acc;
  }

  double rhs(double u, double w, std::size_t done) const { return (delayed(u - 1.0, done) - w) / u; }

  void run() {
    double u = 2.0;
    double w = 0.5;
    for (std::size_t i = first_ode_; i < w_.size(); ++i) {
      const double target = grid(i);
      const double h = target - u;
      const std::size_t done = i - 1;
      const double k1 = rhs(u, w, done);
      const double k2 = rhs(u + h / 2, w + h / 2 * k1, done);
      const double k3 = rhs(u + h / 2, w + h / 2 * k2, done);
      const double k4 = rhs(u + h, w + h * k3, done);
      w += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
      u = target;
      w_[i] = w;
    }
  }

  std::vector<double> take() { return std::move(w_); }

 private:
  double h_;
  std::vector<double> w_;
  std::size_t first_ode_ = 0;
  std::size_t kink_ = 0;
};

}  // namespace

BuchstabTable buchstab_omega(double u_max, double step) {
  if (!(step > 0.0)) throw Error(Errc::out_of_range, "step must be positive");
  if (step > 1e-3) throw Error(Errc::step_too_coarse, "step must not exceed 1e-3");
  if (u_max < 2.0) throw Error(Errc::out_of_range, "u_max must be at least 2");
  const auto n = static_cast<std::size_t>(std::ceil((u_max - 1.0) / step - 1e-9));
  Solver s(step, n);
  s.run();
  return BuchstabTable(u_max, step, s.take());
}

}  // namespace gbw
