#pragma once

#include <string_view>

#include "favlab/rotation.hpp"

namespace favlab {

/// Evaluates a small arithmetic language: decimal literals (with exponent),
/// pi, sqrt(...), unary minus, + - * / and parentheses. Throws
/// Errc::invalid_argument on malformed input.
Real eval_expr(std::string_view text);
double eval_expr_double(std::string_view text);

}  // namespace favlab
