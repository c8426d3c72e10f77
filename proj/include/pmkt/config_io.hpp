#pragma once

#include <string>
#include <string_view>

#include "pmkt/dynamics.hpp"

namespace pmkt {

/// Parses a flat key = value config (optional [section] headers are allowed
/// and ignored; '#' and ';' start comments). Keys mirror the MarketConfig
/// field names; unset keys keep their defaults. Errors are reported as
/// config_error with "source:line: message".
MarketConfig parse_market_config(std::string_view text, const std::string& source_name);

/// Loads and parses a config file. An empty path yields the defaults.
MarketConfig load_market_config(const std::string& path);

/// Canonical text form (fixed key order, shortest round-trip numbers).
std::string serialize_market_config(const MarketConfig& config);

} // namespace pmkt
