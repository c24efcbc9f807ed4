#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace favlab {

enum class Errc {
  invalid_argument,
  symbol_out_of_range,
  no_net_within_bound,
  rational_alpha,
  no_reflector_available,
  budget_exhausted,
  verification_failed,
  precondition_violated,
  indeterminate,
  level_too_large,
  resolution_too_coarse,
  center_hit,
  center_inside,
  rho_too_small,
  non_homogeneous,
  degenerate_fit,
  range,
  enumeration_cap,
  steering_failed,
  config,
  io,
};

/// Short machine-readable name, used in `ERROR <code>: <detail>` lines.
std::string_view code_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(detail), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace favlab
