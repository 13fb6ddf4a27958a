#include "gbw/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include "json.hpp"
#include <ostream>

#include "gbw/arithmetic.hpp"
#include "gbw/circle.hpp"
#include "gbw/error.hpp"
#include "gbw/goldbach.hpp"
#include "gbw/sieve.hpp"

namespace gbw {
namespace {

std::string str(double v) { return format_double(v); }
std::string str(std::int64_t v) { return std::to_string(v); }

std::int64_t pow10(int k) {
  std::int64_t x = 1;
  for (int i = 0; i < k; ++i) x *= 10;
  return x;
}

// primes up to the top of Int(N0) for every N0 <= n0_max
std::uint64_t table_bound(std::int64_t n0_max) { return static_cast<std::uint64_t>(n0_max) + 1; }

}  // namespace

PrimeTable obtain_primes(const RunConfig& cfg, std::uint64_t hi) {
  if (!cfg.cache.empty() && std::filesystem::exists(cfg.cache)) {
    PrimeTable t = load_prime_cache(cfg.cache);
    if (t.covers(2, hi)) return t;
  }
  return sieve_primes(2, hi);
}

int cmd_primes(const RunConfig& cfg, const std::filesystem::path& cache_path, std::ostream& log) {
  const PrimeTable table = sieve_primes(cfg.primes_lo, cfg.primes_hi);
  save_prime_cache(cache_path, table);
  const PrimeTable back = load_prime_cache(cache_path);
  const bool same = back == table;
  log << "range [" << table.lo() << ", " << table.hi() << ") primes " << back.count() << " cache "
      << cache_path.string() << (same ? " verified" : " MISMATCH") << '\n';
  return same ? kExitPass : kExitFailure;
}

int cmd_identities(const RunConfig& cfg, std::ostream& out) {
  CsvWriter csv(out);
  csv.row({"identity", "status", "value", "threshold"});
  bool ok = true;
  auto report = [&](const std::string& name, bool pass, double value, double threshold) {
    ok = ok && pass;
    csv.row({name, pass ? "pass" : "fail", str(value), str(threshold)});
  };

  const FamilyConfig fam = cfg.family_for(cfg.identities_N0);
  const PrimeTable table = sieve_primes(2, table_bound(fam.N0));

  {
    const SQSplit split = build_S_Q_split(fam, table);
    std::int64_t int_mismatch = 0;
    double worst = 0.0;
    for (std::size_t i = 0; i < split.primes.size(); ++i) {
      const std::int64_t p = split.primes[i];
      const auto& c = split.coefficients[i];
      const std::int64_t s = divisor_chi_sum(p - 1);
      int_mismatch += (c[0] + c[1] + c[2] != s);
      const double lp = std::log(static_cast<double>(p));
      const double want = static_cast<double>(s) * lp;
      const double got = static_cast<double>(c[0]) * lp + static_cast<double>(c[1]) * lp + static_cast<double>(c[2]) * lp;
      if (want != 0.0) worst = std::max(worst, std::abs(got - want) / std::abs(want));
    }
    report("partition_integer", int_mismatch == 0, static_cast<double>(int_mismatch), 0.0);
    report("partition_float", worst < 1e-12, worst, 1e-12);
  }
  {
    const CircleContext ctx = make_circle_context(fam, table);
    const OrthogonalityReport rep = orthogonality_check(build_S_A(fam), ctx);
    report("orthogonality", rep.residual < cfg.tolerance, rep.residual, cfg.tolerance);
  }
  {
    std::vector<std::int64_t> C(1000);
    for (std::int64_t i = 0; i < 1000; ++i) C[static_cast<std::size_t>(i)] = i + 1;
    const BuchstabTriple t = buchstab_step(C, 3.0, 30.0, 0.37);
    report("buchstab", t.residual < 1e-12 * 1000, t.residual, 1e-12 * 1000);
  }
  {
    SieveWeights lo = build_lambda(1e3, 10.0, SieveVariant::lower);
    SieveWeights hi = build_lambda(1e3, 10.0, SieveVariant::upper);
    if (cfg.corrupt_lambda_one) {
      lo.values.front().second = 0;
      hi.values.front().second = 0;
    }
    const bool unit = lo.at(1) == 1 && hi.at(1) == 1;
    report("lambda_one", unit, static_cast<double>(hi.at(1)), 1.0);
    const SandwichReport s = sandwich_check(lo, hi, 100'000);
    report("sandwich", s.violations == 0, static_cast<double>(s.violations), 0.0);
  }
  return ok ? kExitPass : kExitFailure;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& summary_json) {
  std::int64_t lo = cfg.n0_lo | 1;
  const FamilyConfig fam = cfg.family_for(lo);
  const PrimeTable table = obtain_primes(cfg, table_bound(cfg.n0_hi));
  const MixedSupports sup = mixed_supports(fam, table, lo, cfg.n0_hi);
  CsvWriter csv(out);
  csv.row({"N0", "raw_count", "weighted_count", "main_term", "ratio", "error"});
  std::vector<double> ratios;
  std::vector<std::int64_t> zeros;
  std::int64_t rows = 0, errors = 0;
  for (std::int64_t n0 = lo; n0 <= cfg.n0_hi; n0 += 2) {
    ++rows;
    try {
      const RepresentationReport r = mixed_representation(n0, fam, sup);
      csv.row({str(n0), str(r.raw_count), str(r.weighted_count), str(r.main_term), str(r.ratio), ""});
      if (r.raw_count == 0) zeros.push_back(n0);
      ratios.push_back(r.ratio);
    } catch (const Error& e) {
      ++errors;
      csv.row({str(n0), "", "", "", "", std::string(errc_name(e.code())) + ": " + e.what()});
    }
  }
  std::sort(ratios.begin(), ratios.end());
  const double rate = rows ? static_cast<double>(rows - errors - static_cast<std::int64_t>(zeros.size())) /
                                 static_cast<double>(rows)
                           : 0.0;
  nlohmann::json j;
  j["rows"] = rows;
  j["errors"] = errors;
  j["zero_count"] = zeros.size();
  j["zero_N0"] = zeros;
  j["nonzero_rate"] = rate;
  j["min_ratio"] = ratios.empty() ? 0.0 : ratios.front();
  j["median_ratio"] = ratios.empty() ? 0.0 : ratios[ratios.size() / 2];
  j["a0"] = fam.a0;
  j["c0"] = fam.c0.text();
  j["X"] = fam.X;
  j["H"] = fam.H;
  summary_json << j.dump(2) << '\n';
  return rate >= cfg.min_nonzero_rate ? kExitPass : kExitFailure;
}

int cmd_scaling(const RunConfig& cfg, std::ostream& out) {
  if (cfg.k_values.size() < 2) throw Error(Errc::config, "scaling needs at least two k values");
  CsvWriter csv(out);
  csv.row({"diagnostic", "k", "X", "value"});
  for (const int k : cfg.k_values) {
    const std::int64_t X = pow10(k);
    const FamilyConfig fam = cfg.family_for(cfg.n0_factor * X + 1);
    const PrimeTable table = obtain_primes(cfg, table_bound(fam.N0));
    const CircleContext ctx = make_circle_context(fam, table);
    auto row = [&](const std::string& name, double v) { csv.row({name, str(static_cast<std::int64_t>(k)), str(X), str(v)}); };
    const TypeSumParams params = TypeSumParams::from_epsilon(cfg.epsilon);
    const double size_A = static_cast<double>(fam.size_A());
    row("negligibility_E0", negligibility_ratio(build_type_sum(fam, TypeSumKind::E0, params).combined, ctx, JPart::J13, size_A).ratio);
    row("negligibility_E1", negligibility_ratio(build_type_sum(fam, TypeSumKind::E1, params).combined, ctx, JPart::J13, size_A).ratio);
    row("negligibility_E2", negligibility_ratio(build_type_sum(fam, TypeSumKind::E2, params).combined, ctx, JPart::J13, size_A).ratio);
    const ShortIntervalWindow win = construct_window(fam);
    const double size_star = static_cast<double>(win.A_star().size());
    row("negligibility_J2_AstarP", negligibility_ratio(build_S_AcapP(win, table), ctx, JPart::J2, size_star).ratio);
    const DiagnosticsConfig dcfg = cfg.diagnostics(X);
    row("minor_fraction", classify_grid(ctx.g_sc0, dcfg.Q0, dcfg.L0, fam.delta0).minor_fraction);
    for (const BoundRatio& b : bound_diagnostics(ctx, dcfg, table)) row("bound_" + b.name, b.ratio);
    const MajorArcScan scan = major_arc_scan(ctx);
    row("major_arc_error_Sc0", scan.max_sc0);
    row("major_arc_error_SQ1", scan.max_sq1);
  }
  return kExitPass;
}

int cmd_singular(const RunConfig& cfg, std::ostream& out) {
  const SingularSeriesValue s = singular_series(cfg.N0, cfg.series_cutoff);
  const SingularSeriesValue t = singular_series_star(cfg.N0, cfg.series_cutoff);
  nlohmann::json j;
  j["N0"] = cfg.N0;
  j["cutoff"] = cfg.series_cutoff;
  j["singular_series"] = {{"value", s.value}, {"truncation_bound", s.truncation_bound}};
  j["singular_series_star"] = {{"value", t.value}, {"truncation_bound", t.truncation_bound}};
  out << j.dump(2) << '\n';
  return kExitPass;
}

int cmd_buchstab(const RunConfig& cfg, std::ostream& out) {
  const BuchstabTable t = buchstab_omega(cfg.u_max, cfg.step);
  CsvWriter csv(out);
  csv.row({"u", "omega"});
  for (std::size_t i = 0; i < t.values().size(); ++i)
    csv.row({str(1.0 + static_cast<double>(i) * t.step()), str(t.values()[i])});
  return kExitPass;
}

int cmd_arcs(const RunConfig& cfg, std::ostream& out) {
  const FamilyConfig fam = cfg.family();
  const PrimeTable table = obtain_primes(cfg, table_bound(fam.N0));
  const ExpSumGrid g = grid_eval(build_S_c0(fam, table), fam.X);
  const DiagnosticsConfig d = cfg.diagnostics(fam.X);
  const ArcClassification cls = classify_grid(g, d.Q0, d.L0, fam.delta0);
  CsvWriter csv(out);
  csv.row({"a", "c", "q", "major", "fallback", "minor_set"});
  for (std::int64_t a = 1; a <= fam.X; ++a) {
    const GridPoint& p = cls.points[static_cast<std::size_t>(a % fam.X)];
    csv.row({str(a), str(p.c), str(p.q), p.major ? "1" : "0", p.fallback ? "1" : "0", p.minor_set ? "1" : "0"});
  }
  return cls.uncovered == 0 ? kExitPass : kExitFailure;
}

int cmd_expsum(const RunConfig& cfg, std::ostream& out) {
  const FamilyConfig fam = cfg.family();
  const PrimeTable table = obtain_primes(cfg, table_bound(fam.N0));
  WeightedSupport w;
  const std::string& l = cfg.label;
  if (l == "S_A") w = build_S_A(fam);
  else if (l == "S_AcapP") w = build_S_AcapP(fam, table);
  else if (l == "S_c0") w = build_S_c0(fam, table);
  else if (l == "S_Q") w = build_S_Q_full(fam, table, QRoute::divisor_sum);
  else if (l == "S_Q_1" || l == "S_Q_2" || l == "S_Q_3") w = build_S_Q_split(fam, table).parts[static_cast<std::size_t>(l.back() - '1')];
  else throw Error(Errc::config, "unknown expsum label '" + l + "'");
  const ExpSumGrid g = grid_eval(w, fam.X);
  CsvWriter csv(out);
  csv.row({"a", "re", "im"});
  for (std::int64_t a = 1; a <= fam.X; ++a) {
    const std::complex<double> v = g.at(a);
    csv.row({str(a), str(v.real()), str(v.imag())});
  }
  return kExitPass;
}

}  // namespace gbw
