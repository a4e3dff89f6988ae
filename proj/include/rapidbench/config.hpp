#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

namespace rapidbench {

/// Reads a TOML-style key/value file into a JSON tree. Supported subset:
/// `key = value` lines, one level of `[section]` tables, strings in double
/// quotes, booleans, numbers, flat arrays, and `#` comments. Throws
/// ConfigError with a line number on anything else.
nlohmann::json parse_config_text(std::string_view text);

/// Loads and parses a config file. Throws ConfigError when unreadable.
nlohmann::json load_config_file(const std::string& path);

/// Whole-file read/write helpers.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

/// FNV-1a 64-bit content hash, hex-encoded; used to stamp reports with the
/// configuration they came from.
std::string content_hash(std::string_view text);

}  // namespace rapidbench
