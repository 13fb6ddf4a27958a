#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gbw {

/// Failure categories surfaced by the workbench. The CLI maps them to
/// exit codes and CSV error columns via errc_name().
enum class Errc {
  needs_factorization,
  even_input,
  step_too_coarse,
  too_small,
  out_of_range,
  segment_required,
  window_too_short,
  empty_range,
  grid_mismatch,
  aliasing,
  range,
  empty_polytope,
  singular_region,
  parity,
  corrupt_cache,
  io,
  config,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace gbw
