// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dataworth Authors

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <yaml-cpp/yaml.h>

#include "dataworth/errors.hpp"

namespace dataworth::detail {

/// Reads a whole file; throws IoError.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

/// Parses YAML, converting yaml-cpp exceptions into ParseError with line info.
/// Empty input yields a null node.
YAML::Node load_yaml(std::string_view text, const std::string& origin);

inline std::size_t line_of(const YAML::Node& node) {
  return static_cast<std::size_t>(node.Mark().line) + 1;
}

[[noreturn]] void fail(const std::string& origin, const YAML::Node& node, const std::string& field,
                       const std::string& message);

/// Scalar field as string; throws ParseError naming `field` if missing or not a scalar.
std::string require_scalar(const YAML::Node& map, const char* key, const std::string& origin,
                           const std::string& field_path);
std::string optional_scalar(const YAML::Node& map, const char* key, const std::string& origin,
                            const std::string& field_path, std::string fallback = {});
bool optional_bool(const YAML::Node& map, const char* key, const std::string& origin,
                   const std::string& field_path, bool fallback);

}  // namespace dataworth::detail
