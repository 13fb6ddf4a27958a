#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "gbw/error.hpp"
#include "gbw/io.hpp"

namespace gbw {
namespace {

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T v{};
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) throw Error(Errc::config, key + ": cannot parse '" + text + "'");
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw Error(Errc::config, key + ": expected a boolean, got '" + text + "'");
}

std::vector<int> parse_int_list(const std::string& key, const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(' ');
    const auto e = item.find_last_not_of(' ');
    if (b == std::string::npos) continue;
    out.push_back(parse_number<int>(key, item.substr(b, e - b + 1)));
  }
  return out;
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value)>;

template <class T>
Setter number(T RunConfig::*field) {
  return [field](RunConfig& c, const std::string& k, const std::string& v) { c.*field = parse_number<T>(k, v); };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"family.a0", number(&RunConfig::a0)},
      {"family.c0", [](RunConfig& c, const std::string&, const std::string& v) { c.c0 = v; }},
      {"family.N0", number(&RunConfig::N0)},
      {"family.C0", number(&RunConfig::C0)},
      {"family.delta0", number(&RunConfig::delta0)},
      {"family.H", number(&RunConfig::H)},
      {"diagnostics.Q0", number(&RunConfig::Q0)},
      {"diagnostics.L0", number(&RunConfig::L0)},
      {"diagnostics.C1", number(&RunConfig::C1)},
      {"diagnostics.A", number(&RunConfig::A)},
      {"diagnostics.B", number(&RunConfig::B)},
      {"diagnostics.epsilon", number(&RunConfig::epsilon)},
      {"run.threads", number(&RunConfig::threads)},
      {"run.seed", number(&RunConfig::seed)},
      {"run.samples", number(&RunConfig::samples)},
      {"primes.lo", number(&RunConfig::primes_lo)},
      {"primes.hi", number(&RunConfig::primes_hi)},
      {"primes.cache", [](RunConfig& c, const std::string&, const std::string& v) { c.cache = v; }},
      {"verify.n0_lo", number(&RunConfig::n0_lo)},
      {"verify.n0_hi", number(&RunConfig::n0_hi)},
      {"verify.min_nonzero_rate", number(&RunConfig::min_nonzero_rate)},
      {"scaling.k_values",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.k_values = parse_int_list(k, v); }},
      {"scaling.n0_factor", number(&RunConfig::n0_factor)},
      {"identities.N0", number(&RunConfig::identities_N0)},
      {"identities.corrupt_lambda_one",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.corrupt_lambda_one = parse_bool(k, v); }},
      {"identities.tolerance", number(&RunConfig::tolerance)},
      {"singular.cutoff", number(&RunConfig::series_cutoff)},
      {"buchstab.u_max", number(&RunConfig::u_max)},
      {"buchstab.step", number(&RunConfig::step)},
      {"expsum.label", [](RunConfig& c, const std::string&, const std::string& v) { c.label = v; }},
  };
  return table;
}

void set(RunConfig& cfg, const std::string& key, const std::string& value) {
  const auto it = setters().find(key);
  if (it == setters().end()) throw Error(Errc::config, "unknown key '" + key + "'");
  it->second(cfg, key, value);
}

}  // namespace

FamilyConfig RunConfig::family_for(std::int64_t n0) const {
  try {
    return FamilyConfig::make(a0, PsExponent::from_string(c0), n0, C0, delta0, H);
  } catch (const Error& e) {
    if (e.code() == Errc::config) throw;
    throw Error(Errc::config, e.what());
  }
}

FamilyConfig RunConfig::family() const { return family_for(N0); }

DiagnosticsConfig RunConfig::diagnostics(std::int64_t X) const {
  DiagnosticsConfig d = DiagnosticsConfig::defaults_for(X);
  if (Q0 > 0) d.Q0 = Q0;
  if (L0 > 0) d.L0 = L0;
  d.C1 = C1;
  d.A = A;
  d.B = B;
  d.epsilon = epsilon;
  return d;
}

void RunConfig::validate() const {
  family();
  if (threads < 0) throw Error(Errc::config, "run.threads must be nonnegative");
  if (samples < 2) throw Error(Errc::config, "run.samples must be at least 2");
  if (n0_lo > n0_hi) throw Error(Errc::config, "verify band is empty");
  if (min_nonzero_rate < 0.0 || min_nonzero_rate > 1.0) throw Error(Errc::config, "verify.min_nonzero_rate outside [0, 1]");
  if (primes_hi <= primes_lo) throw Error(Errc::config, "primes range is empty");
  if (n0_factor < 2 || n0_factor >= 20) throw Error(Errc::config, "scaling.n0_factor outside [2, 20)");
  for (const int k : k_values)
    if (k < 3 || k > 7) throw Error(Errc::config, "scaling.k_values entries must lie in [3, 7]");
  if (step <= 0.0 || u_max < 2.0) throw Error(Errc::config, "bad buchstab range");
}

RunConfig parse_config(std::istream& in) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw Error(Errc::config, e.what());
  }
  RunConfig cfg;
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw Error(Errc::config, "key '" + section + "' outside a section");
    for (const auto& [key, value] : body) set(cfg, section + "." + key, value.data());
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::config, "cannot read config " + path.string());
  return parse_config(in);
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw Error(Errc::config, "override must read section.key=value");
  set(cfg, assignment.substr(0, eq), assignment.substr(eq + 1));
}

}  // namespace gbw
