#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>

namespace pmkt::io {

/// Shortest round-trip decimal form of v ('.' decimal point, locale-free).
std::string format_double(double v);

/// FNV-1a 64-bit hash of a byte string; used for output checksums.
std::uint64_t fnv1a64(std::string_view bytes);

/// 16-digit lowercase hex.
std::string hex64(std::uint64_t v);

std::string read_text_file(const std::string& path); // throws std::runtime_error
void write_text_file(const std::string& path, std::string_view content);

std::string iso8601_utc(std::chrono::system_clock::time_point t);

} // namespace pmkt::io
