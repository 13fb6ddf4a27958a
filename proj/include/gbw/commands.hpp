#pragma once

#include <filesystem>
#include <iosfwd>

#include "gbw/io.hpp"

namespace gbw {

/// Exit codes shared by every command.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;

/// Loads the cache when it exists and covers [2, hi), otherwise sieves.
PrimeTable obtain_primes(const RunConfig& cfg, std::uint64_t hi);

int cmd_primes(const RunConfig& cfg, const std::filesystem::path& cache_path, std::ostream& log);
/// Partition, orthogonality, Buchstab and sandwich identities; one CSV row each.
int cmd_identities(const RunConfig& cfg, std::ostream& csv);
/// Mixed-representation campaign over the odd N0 of the verify band.
int cmd_verify(const RunConfig& cfg, std::ostream& csv, std::ostream& summary_json);
/// (diagnostic, k, X, value) rows for every k of the scaling list.
int cmd_scaling(const RunConfig& cfg, std::ostream& csv);
int cmd_singular(const RunConfig& cfg, std::ostream& json);
int cmd_buchstab(const RunConfig& cfg, std::ostream& csv);
int cmd_arcs(const RunConfig& cfg, std::ostream& csv);
int cmd_expsum(const RunConfig& cfg, std::ostream& csv);

}  // namespace gbw
