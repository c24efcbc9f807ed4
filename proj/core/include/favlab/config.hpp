#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "favlab/ifs.hpp"
#include "favlab/relclose.hpp"

namespace favlab {

/// Parses {"maps": [{"r", "theta_over_pi" | "theta", "reflect", "tx", "ty"}, ...],
/// "hull": [[x, y], ...]}. The optional hull must be invariant. Throws
/// Errc::config on malformed input.
Ifs parse_ifs(std::string_view json_text);
Ifs load_ifs(const std::filesystem::path& path);

/// Canonical JSON of the system, used for the config hash.
std::string ifs_to_json(const Ifs& ifs);

/// 64-bit FNV-1a of the text, as 16 hex digits.
std::string content_hash(std::string_view text);

std::string certificate_to_json(const RelCloseCertificate& cert);
/// Words are parsed against an alphabet of size `alphabet`.
RelCloseCertificate parse_certificate(std::string_view json_text, std::size_t alphabet);
RelCloseCertificate load_certificate(const std::filesystem::path& path, std::size_t alphabet);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace favlab
