#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gbw/commands.hpp"
#include "gbw/error.hpp"
#include "gbw/parallel.hpp"

namespace {

struct Common {
  std::string config;
  std::string out;
  std::string summary;
  int threads = -1;
  long long seed = -1;
  std::vector<std::string> sets;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "INI configuration file");
  sub->add_option("--out", c.out, "output file (stdout when absent)");
  sub->add_option("--threads", c.threads, "OpenMP threads (0 = all)");
  sub->add_option("--seed", c.seed, "RNG seed");
  sub->add_option("--set", c.sets, "override section.key=value")->take_all();
}

class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw gbw::Error(gbw::Errc::io, "cannot open '" + path + "' for writing");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ternary Goldbach workbench for special prime families"};
  app.require_subcommand(1);
  Common c;
  std::string cache_out;

  auto* primes = app.add_subcommand("primes", "sieve a range and write the prime cache");
  primes->add_option("--cache", cache_out, "cache path (defaults to primes.cache)");
  auto* identities = app.add_subcommand("identities", "exact identity checks");
  auto* verify = app.add_subcommand("verify", "representation campaign over a band of N0");
  verify->add_option("--summary", c.summary, "JSON summary file (stderr when absent)");
  auto* scaling = app.add_subcommand("scaling", "diagnostics across X = 10^k");
  auto* singular = app.add_subcommand("singular", "truncated singular series");
  auto* buchstab = app.add_subcommand("buchstab", "Buchstab function table");
  auto* arcs = app.add_subcommand("arcs", "major/minor arc classification of the grid");
  auto* expsum = app.add_subcommand("expsum", "exponential sum over the grid a/X");
  for (auto* s : {primes, identities, verify, scaling, singular, buchstab, arcs, expsum}) add_common(s, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : gbw::kExitConfig;
  }

  try {
    gbw::RunConfig cfg = c.config.empty() ? gbw::RunConfig{} : gbw::load_config(c.config);
    for (const auto& s : c.sets) gbw::apply_override(cfg, s);
    if (c.threads >= 0) cfg.threads = c.threads;
    if (c.seed >= 0) cfg.seed = static_cast<std::uint64_t>(c.seed);
    cfg.validate();
    if (cfg.threads > 0) gbw::set_threads(cfg.threads);

    Sink out(c.out);
    if (*primes) return gbw::cmd_primes(cfg, cache_out.empty() ? cfg.cache : cache_out, std::cerr);
    if (*identities) return gbw::cmd_identities(cfg, out.stream());
    if (*verify) {
      Sink summary(c.summary);
      return gbw::cmd_verify(cfg, out.stream(), c.summary.empty() ? std::cerr : summary.stream());
    }
    if (*scaling) return gbw::cmd_scaling(cfg, out.stream());
    if (*singular) return gbw::cmd_singular(cfg, out.stream());
    if (*buchstab) return gbw::cmd_buchstab(cfg, out.stream());
    if (*arcs) return gbw::cmd_arcs(cfg, out.stream());
    if (*expsum) return gbw::cmd_expsum(cfg, out.stream());
  } catch (const gbw::Error& e) {
    std::cerr << "error [" << gbw::errc_name(e.code()) << "]: " << e.what() << '\n';
    return e.code() == gbw::Errc::config ? gbw::kExitConfig : gbw::kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return gbw::kExitFailure;
  }
  return gbw::kExitConfig;
}
