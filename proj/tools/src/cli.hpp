#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "favlab/ifs.hpp"

namespace favlab::cli {

/// Parses argv, dispatches one subcommand and returns the exit code: 0 on
/// success, 2 for usage or configuration errors, 1 for domain errors. Errors
/// are printed to `err` as "ERROR <code>: <detail>".
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct SvgOptions {
  double size{512.0};
  /// one bar row per angle, showing the merged level-`bar_level` projection
  std::vector<double> bar_thetas;
  std::size_t bar_level{0};
  /// chaos-game points drawn from a generator seeded with `seed`
  std::size_t chaos_points{0};
  std::uint64_t seed{0};
};

/// Circles for the level-`depth` cylinder disks, plus the optional point
/// cloud and projection bars. Throws Errc::level_too_large beyond 2^20 glyphs.
std::string render_svg(const Ifs& ifs, std::size_t depth, const SvgOptions& options);

/// "%.17g", enough digits to round-trip a double.
std::string format_double(double v);

/// "# favlab <version> config=<hash> seed=<seed>"
std::string csv_comment(std::string_view config_hash, std::uint64_t seed);

}  // namespace favlab::cli
