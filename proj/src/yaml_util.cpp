// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dataworth Authors

#include "yaml_util.hpp"

#include <fstream>
#include <sstream>

namespace dataworth::detail {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("error while writing '" + path.string() + "'");
}

YAML::Node load_yaml(std::string_view text, const std::string& origin) {
  try {
    return YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    ParseError::Location where{origin, static_cast<std::size_t>(e.mark.line) + 1, std::nullopt, {}};
    if (e.mark.is_null()) where.line.reset();
    throw ParseError(std::move(where), e.msg);
  }
}

void fail(const std::string& origin, const YAML::Node& node, const std::string& field,
          const std::string& message) {
  ParseError::Location where{origin, std::nullopt, std::nullopt, field};
  if (node.IsDefined() && !node.Mark().is_null()) where.line = line_of(node);
  throw ParseError(std::move(where), message);
}

std::string require_scalar(const YAML::Node& map, const char* key, const std::string& origin,
                           const std::string& field_path) {
  YAML::Node v = map[key];
  if (!v.IsDefined() || v.IsNull()) fail(origin, map, field_path + "." + key, "missing required field");
  if (!v.IsScalar()) fail(origin, v, field_path + "." + key, "expected a scalar");
  return v.Scalar();
}

std::string optional_scalar(const YAML::Node& map, const char* key, const std::string& origin,
                            const std::string& field_path, std::string fallback) {
  YAML::Node v = map[key];
  if (!v.IsDefined() || v.IsNull()) return fallback;
  if (!v.IsScalar()) fail(origin, v, field_path + "." + key, "expected a scalar");
  return v.Scalar();
}

bool optional_bool(const YAML::Node& map, const char* key, const std::string& origin,
                   const std::string& field_path, bool fallback) {
  YAML::Node v = map[key];
  if (!v.IsDefined() || v.IsNull()) return fallback;
  bool out = fallback;
  if (!v.IsScalar() || !YAML::convert<bool>::decode(v, out)) {
    fail(origin, v, field_path + "." + key, "expected true or false");
  }
  return out;
}

}  // namespace dataworth::detail
