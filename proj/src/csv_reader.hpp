// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dataworth Authors

#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

namespace dataworth::detail {

/// Streaming RFC 4180 reader. Accepts LF or CRLF record ends, quoted fields
/// with doubled-quote escapes and embedded newlines. Malformed records (an
/// unterminated quote, text after a closing quote) are still returned and
/// flagged.
class CsvReader {
 public:
  CsvReader(std::istream& in, char delimiter) : in_(in), delim_(delimiter) {}

  /// Reads the next record into `cells`; false at end of input.
  bool next(std::vector<std::string>& cells);

  [[nodiscard]] bool malformed() const { return malformed_; }
  /// Byte offset where the last record began.
  [[nodiscard]] std::uint64_t record_offset() const { return record_offset_; }
  /// Byte offset of the first malformation in the last record.
  [[nodiscard]] std::uint64_t error_offset() const { return error_offset_; }

 private:
  int get();
  int peek();

  std::istream& in_;
  char delim_;
  char buf_[1 << 16];
  std::size_t pos_ = 0, len_ = 0;
  std::uint64_t offset_ = 0;
  std::uint64_t record_offset_ = 0;
  std::uint64_t error_offset_ = 0;
  bool malformed_ = false;
  bool eof_ = false;
};

}  // namespace dataworth::detail
