// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dataworth Authors

#include "csv_reader.hpp"

namespace dataworth::detail {

int CsvReader::peek() {
  if (pos_ == len_) {
    if (eof_) return -1;
    in_.read(buf_, sizeof buf_);
    len_ = static_cast<std::size_t>(in_.gcount());
    pos_ = 0;
    if (len_ == 0) {
      eof_ = true;
      return -1;
    }
  }
  return static_cast<unsigned char>(buf_[pos_]);
}

int CsvReader::get() {
  int c = peek();
  if (c >= 0) {
    ++pos_;
    ++offset_;
  }
  return c;
}

bool CsvReader::next(std::vector<std::string>& cells) {
  cells.clear();
  malformed_ = false;
  record_offset_ = offset_;
  if (peek() < 0) return false;

  auto flag = [&] {
    if (!malformed_) error_offset_ = offset_;
    malformed_ = true;
  };

  std::string cell;
  for (;;) {
    int c = get();
    if (c == '"' && cell.empty()) {
      // Quoted field.
      const std::uint64_t opened = offset_ - 1;
      for (;;) {
        c = get();
        if (c < 0) {
          if (!malformed_) error_offset_ = opened;
          malformed_ = true;
          cells.push_back(std::move(cell));
          return true;
        }
        if (c == '"') {
          if (peek() == '"') {
            get();
            cell.push_back('"');
            continue;
          }
          break;
        }
        cell.push_back(static_cast<char>(c));
      }
      // After the closing quote only a delimiter or record end is valid.
      c = peek();
      if (c != delim_ && c != '\n' && c != '\r' && c >= 0) flag();
      continue;
    }
    if (c < 0 || c == '\n') {
      cells.push_back(std::move(cell));
      return true;
    }
    if (c == '\r') {
      if (peek() == '\n') get();
      cells.push_back(std::move(cell));
      return true;
    }
    if (c == delim_) {
      cells.push_back(std::move(cell));
      cell.clear();
      continue;
    }
    cell.push_back(static_cast<char>(c));
  }
}

}  // namespace dataworth::detail
