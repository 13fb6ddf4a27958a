#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gbw/circle.hpp"
#include "gbw/families.hpp"
#include "gbw/primes.hpp"

namespace gbw {

// Prime cache: "GBLB1", u16 version, then lo, hi, bitmap_len, FNV-1a checksum
// as little-endian u64, followed by the bitmap.
inline constexpr char kCacheMagic[5] = {'G', 'B', 'L', 'B', '1'};
inline constexpr std::uint16_t kCacheVersion = 1;
inline constexpr std::size_t kCacheHeaderSize = 5 + 2 + 4 * 8;

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_prime_cache(const PrimeTable& table);
PrimeTable decode_prime_cache(std::span<const std::uint8_t> bytes);
/// Writes through a temporary file and a rename.
void save_prime_cache(const std::filesystem::path& path, const PrimeTable& table);
PrimeTable load_prime_cache(const std::filesystem::path& path);

/// RFC 4180 writer: CRLF records, fields quoted when they contain a comma,
/// quote, CR or LF.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
};

std::vector<std::vector<std::string>> parse_csv(std::istream& in);
/// Shortest text that reads back to the same double.
std::string format_double(double v);

struct RunConfig {
  // [family]
  int a0 = 7;
  std::string c0 = "1.05";
  std::int64_t N0 = 200'001;
  double C0 = 1.0;
  double delta0 = 0.04;
  int H = 3;
  // [diagnostics]; zero Q0 / L0 select the defaults
  std::int64_t Q0 = 0;
  std::int64_t L0 = 0;
  double C1 = 2.0;
  double A = 2.0;
  double B = 2.0;
  double epsilon = 0.01;
  // [run]
  int threads = 0;
  std::uint64_t seed = 0;
  std::int64_t samples = 100'000;
  // [primes]
  std::uint64_t primes_lo = 2;
  std::uint64_t primes_hi = 1'000'000;
  std::string cache = "primes.gblb";
  // [verify]
  std::int64_t n0_lo = 200'001;
  std::int64_t n0_hi = 202'001;
  double min_nonzero_rate = 0.99;
  // [scaling]
  std::vector<int> k_values{4, 5};
  std::int64_t n0_factor = 4;  // N0 = n0_factor * 10^k + 1
  // [identities]
  std::int64_t identities_N0 = 4'001;
  bool corrupt_lambda_one = false;
  double tolerance = 1e-6;
  // [singular]
  std::int64_t series_cutoff = 1'000'000;
  // [buchstab]
  double u_max = 20.0;
  double step = 1e-4;
  // [expsum]
  std::string label = "S_A";

  FamilyConfig family() const;
  FamilyConfig family_for(std::int64_t N0) const;
  DiagnosticsConfig diagnostics(std::int64_t X) const;
  void validate() const;
};

/// Reads an INI file; unknown sections or keys throw config.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(std::istream& in);
/// Applies "section.key=value".
void apply_override(RunConfig& cfg, const std::string& assignment);

}  // namespace gbw
