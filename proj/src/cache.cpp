#include <fstream>
#include <iterator>

#include "gbw/error.hpp"
#include "gbw/io.hpp"

namespace gbw {
namespace {

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_u64(std::span<const std::uint8_t> b, std::size_t at) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[at + static_cast<std::size_t>(i)]) << (8 * i);
  return v;
}

}  // namespace

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (const std::uint8_t b : bytes) {
    h ^= b;
    h *= 1099511628211ull;
  }
  return h;
}

std::vector<std::uint8_t> encode_prime_cache(const PrimeTable& table) {
  const std::vector<std::uint8_t> bitmap = table.bitmap_bytes();
  std::vector<std::uint8_t> out(kCacheMagic, kCacheMagic + 5);
  out.push_back(static_cast<std::uint8_t>(kCacheVersion & 0xff));
  out.push_back(static_cast<std::uint8_t>(kCacheVersion >> 8));
  put_u64(out, table.lo());
  put_u64(out, table.hi());
  put_u64(out, bitmap.size());
  put_u64(out, fnv1a64(bitmap));
  out.insert(out.end(), bitmap.begin(), bitmap.end());
  return out;
}

PrimeTable decode_prime_cache(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kCacheHeaderSize) throw Error(Errc::corrupt_cache, "truncated header");
  if (!std::equal(kCacheMagic, kCacheMagic + 5, bytes.begin())) throw Error(Errc::corrupt_cache, "bad magic");
  const auto version = static_cast<std::uint16_t>(bytes[5] | (bytes[6] << 8));
  if (version != kCacheVersion) throw Error(Errc::corrupt_cache, "unsupported version");
  const std::uint64_t lo = get_u64(bytes, 7);
  const std::uint64_t hi = get_u64(bytes, 15);
  const std::uint64_t len = get_u64(bytes, 23);
  const std::uint64_t sum = get_u64(bytes, 31);
  if (hi <= lo || len != PrimeTable::bitmap_length(lo, hi)) throw Error(Errc::corrupt_cache, "inconsistent range");
  if (bytes.size() - kCacheHeaderSize != len) throw Error(Errc::corrupt_cache, "bitmap length mismatch");
  const auto bitmap = bytes.subspan(kCacheHeaderSize);
  if (fnv1a64(bitmap) != sum) throw Error(Errc::corrupt_cache, "checksum mismatch");
  return PrimeTable::from_bitmap_bytes(lo, hi, bitmap);
}

void save_prime_cache(const std::filesystem::path& path, const PrimeTable& table) {
  const std::vector<std::uint8_t> bytes = encode_prime_cache(table);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io, "cannot open " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(Errc::io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(Errc::io, "cannot rename to " + path.string() + ": " + ec.message());
}

PrimeTable load_prime_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_prime_cache(bytes);
}

}  // namespace gbw
