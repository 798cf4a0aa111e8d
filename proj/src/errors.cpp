// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dataworth Authors

#include "dataworth/errors.hpp"

namespace dataworth {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::validation: return "validation";
    case ErrorKind::io: return "io";
    case ErrorKind::parse: return "parse";
    case ErrorKind::not_found: return "not_found";
    case ErrorKind::internal: return "internal";
  }
  return "internal";
}

namespace {

std::string format_location(const ParseError::Location& w) {
  std::string out = w.file.empty() ? std::string("<input>") : w.file;
  if (w.line) out += ":" + std::to_string(*w.line);
  if (w.byte_offset) out += " (byte " + std::to_string(*w.byte_offset) + ")";
  if (!w.field.empty()) out += " [" + w.field + "]";
  return out;
}

}  // namespace

ParseError::ParseError(Location where, const std::string& message)
    : Error(ErrorKind::parse, format_location(where) + ": " + message),
      where_(std::move(where)),
      detail_(message) {}

DuplicateIdError::DuplicateIdError(std::string id, std::string first, std::string second)
    : Error(ErrorKind::parse,
            "duplicate id '" + id + "' defined in " + first + " and " + second),
      id_(std::move(id)),
      first_(std::move(first)),
      second_(std::move(second)) {}

NotFoundError::NotFoundError(std::string what, std::string id, std::optional<std::string> suggestion)
    : Error(ErrorKind::not_found,
            "unknown " + what + " '" + id + "'" +
                (suggestion ? "; did you mean '" + *suggestion + "'?" : std::string())),
      id_(std::move(id)),
      suggestion_(std::move(suggestion)) {}

}  // namespace dataworth
