#include "gbw/error.hpp"

namespace gbw {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::needs_factorization: return "needs-factorization";
    case Errc::even_input: return "even-input";
    case Errc::step_too_coarse: return "step-too-coarse";
    case Errc::too_small: return "too-small";
    case Errc::out_of_range: return "out-of-range";
    case Errc::segment_required: return "segment-required";
    case Errc::window_too_short: return "window-too-short";
    case Errc::empty_range: return "empty-range";
    case Errc::grid_mismatch: return "grid-mismatch";
    case Errc::aliasing: return "aliasing";
    case Errc::range: return "range";
    case Errc::empty_polytope: return "empty-polytope";
    case Errc::singular_region: return "singular-region";
    case Errc::parity: return "parity";
    case Errc::corrupt_cache: return "corrupt-cache";
    case Errc::io: return "io";
    case Errc::config: return "config";
  }
  return "unknown";
}

Error::Error(Errc code, const std::string& detail)
    : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

}  // namespace gbw
