#include "favlab/error.hpp"

namespace favlab {

std::string_view code_name(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::symbol_out_of_range: return "symbol_out_of_range";
    case Errc::no_net_within_bound: return "no_net_within_bound";
    case Errc::rational_alpha: return "rational_alpha";
    case Errc::no_reflector_available: return "no_reflector_available";
    case Errc::budget_exhausted: return "budget_exhausted";
    case Errc::verification_failed: return "verification_failed";
    case Errc::precondition_violated: return "precondition_violated";
    case Errc::indeterminate: return "indeterminate";
    case Errc::level_too_large: return "level_too_large";
    case Errc::resolution_too_coarse: return "resolution_too_coarse";
    case Errc::center_hit: return "center_hit";
    case Errc::center_inside: return "center_inside";
    case Errc::rho_too_small: return "rho_too_small";
    case Errc::non_homogeneous: return "non_homogeneous";
    case Errc::degenerate_fit: return "degenerate_fit";
    case Errc::range: return "range";
    case Errc::enumeration_cap: return "enumeration_cap";
    case Errc::steering_failed: return "steering_failed";
    case Errc::config: return "config";
    case Errc::io: return "io";
  }
  return "unknown";
}

}  // namespace favlab
