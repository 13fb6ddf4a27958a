#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gbw/error.hpp"
#include "gbw/io.hpp"

using namespace gbw;

namespace {
Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::io;
}
}  // namespace

TEST_CASE("fnv1a") {
  const std::vector<std::uint8_t> empty;
  CHECK(fnv1a64(empty) == 0xcbf29ce484222325ull);
  const std::vector<std::uint8_t> a{'a'};
  CHECK(fnv1a64(a) == 0xaf63dc4c8601ec8cull);
}

TEST_CASE("prime cache round trip and corruption") {
  const PrimeTable t = sieve_primes(2, 1'000'000);
  const auto bytes = encode_prime_cache(t);
  CHECK(bytes.size() == kCacheHeaderSize + PrimeTable::bitmap_length(2, 1'000'000));
  CHECK(std::equal(kCacheMagic, kCacheMagic + 5, bytes.begin()));
  CHECK(decode_prime_cache(bytes) == t);

  auto cut = bytes;
  cut.resize(cut.size() - 1);
  CHECK(code_of([&] { decode_prime_cache(cut); }) == Errc::corrupt_cache);
  auto flipped = bytes;
  flipped.back() ^= 1;
  CHECK(code_of([&] { decode_prime_cache(flipped); }) == Errc::corrupt_cache);
  auto magic = bytes;
  magic[0] = 'X';
  CHECK(code_of([&] { decode_prime_cache(magic); }) == Errc::corrupt_cache);
  CHECK(code_of([&] { decode_prime_cache(std::span<const std::uint8_t>(bytes.data(), 10)); }) == Errc::corrupt_cache);

  const auto path = std::filesystem::temp_directory_path() / "gbw_test_cache.bin";
  save_prime_cache(path, t);
  CHECK(load_prime_cache(path) == t);
  std::filesystem::remove(path);
  CHECK(code_of([&] { load_prime_cache(path); }) == Errc::io);
}

TEST_CASE("csv") {
  std::ostringstream out;
  CsvWriter w(out);
  w.row({"a", "b,c", "say \"hi\"", "line\nbreak"});
  w.row({"1", format_double(0.1), format_double(1e-300)});
  CHECK(out.str().rfind("a,\"b,c\",\"say \"\"hi\"\"\",\"line\nbreak\"\r\n", 0) == 0);
  std::istringstream in(out.str());
  const auto rows = parse_csv(in);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][1] == "b,c");
  CHECK(rows[0][2] == "say \"hi\"");
  CHECK(rows[0][3] == "line\nbreak");
  CHECK(std::stod(rows[1][1]) == 0.1);
  CHECK(std::stod(rows[1][2]) == 1e-300);
}

TEST_CASE("config parsing") {
  std::istringstream in("[family]\na0 = 4\nc0 = 1.02\nN0 = 40001\n[verify]\nn0_lo = 40001\nn0_hi = 40101\n");
  RunConfig cfg = parse_config(in);
  CHECK(cfg.a0 == 4);
  CHECK(cfg.c0 == "1.02");
  CHECK(cfg.family().X == 10'000);
  CHECK(cfg.n0_hi == 40'101);
  apply_override(cfg, "family.H=4");
  CHECK(cfg.H == 4);
  apply_override(cfg, "scaling.k_values=3,4,5");
  CHECK(cfg.k_values == std::vector<int>{3, 4, 5});
  CHECK(code_of([&] { apply_override(cfg, "family.nope=1"); }) == Errc::config);
  CHECK(code_of([&] { apply_override(cfg, "garbage"); }) == Errc::config);
  std::istringstream bad("[family]\nfoo = 1\n");
  CHECK(code_of([&] { parse_config(bad); }) == Errc::config);
  CHECK(code_of([&] { load_config("/nonexistent/gbw.ini"); }) == Errc::config);
  RunConfig even;
  even.N0 = 200'000;
  CHECK(code_of([&] { even.validate(); }) == Errc::config);
}
