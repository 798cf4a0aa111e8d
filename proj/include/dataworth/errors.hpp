// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dataworth Authors

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace dataworth {

enum class ErrorKind {
  validation,  // inadmissible input: bad answers, version mismatch, conflicts
  io,          // unreadable or unwritable files
  parse,       // malformed documents
  not_found,   // unknown ids
  internal,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  [[nodiscard]] ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message) : Error(ErrorKind::validation, message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error(ErrorKind::io, message) {}
};

/// Parse failure with whatever position information the reader had.
class ParseError : public Error {
 public:
  struct Location {
    std::string file;
    std::optional<std::size_t> line;        // 1-based
    std::optional<std::size_t> byte_offset;  // 0-based
    std::string field;                       // e.g. "questions[3].scores"
  };

  ParseError(Location where, const std::string& message);
  [[nodiscard]] const Location& where() const { return where_; }
  [[nodiscard]] const std::string& detail() const { return detail_; }

 private:
  Location where_;
  std::string detail_;
};

class DuplicateIdError : public Error {
 public:
  DuplicateIdError(std::string id, std::string first, std::string second);
  [[nodiscard]] const std::string& id() const { return id_; }
  [[nodiscard]] const std::string& first_definition() const { return first_; }
  [[nodiscard]] const std::string& second_definition() const { return second_; }

 private:
  std::string id_, first_, second_;
};

class NotFoundError : public Error {
 public:
  NotFoundError(std::string what, std::string id, std::optional<std::string> suggestion);
  [[nodiscard]] const std::string& id() const { return id_; }
  [[nodiscard]] const std::optional<std::string>& suggestion() const { return suggestion_; }

 private:
  std::string id_;
  std::optional<std::string> suggestion_;
};

}  // namespace dataworth
