// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dataworth Authors

#pragma once

// Desk-summation oracle for replay fixtures. Deliberately shares no code with
// the library: it reads the score column with its own splitter and decimal
// parser and adds the values as exact fractions.

#include <boost/multiprecision/cpp_int.hpp>

#include <fstream>
#include <stdexcept>
#include <string>

namespace oracle {

using Fraction = boost::multiprecision::cpp_rational;

inline Fraction decimal(const std::string& text) {
  boost::multiprecision::cpp_int whole = 0, scale = 1;
  bool negative = false, seen_point = false;
  for (char c : text) {
    if (c == '-') {
      negative = true;
    } else if (c == '.') {
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      whole = whole * 10 + (c - '0');
      if (seen_point) scale *= 10;
    } else if (c != ' ' && c != '\r') {
      throw std::invalid_argument("oracle: bad number '" + text + "'");
    }
  }
  Fraction f(whole, scale);
  return negative ? -f : f;
}

struct DeskSum {
  Fraction total = 0;
  int rows = 0;
  std::string printed_total;
};

inline DeskSum desk_sum(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("oracle: cannot open " + path);
  DeskSum out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string key = "# printed_total:";
      if (line.compare(0, key.size(), key) == 0) {
        out.printed_total = line.substr(key.size());
        while (!out.printed_total.empty() && out.printed_total.front() == ' ') out.printed_total.erase(0, 1);
      }
      continue;
    }
    if (line.rfind("facet\t", 0) == 0) continue;
    const auto last_tab = line.rfind('\t');
    out.total += decimal(line.substr(last_tab + 1));
    ++out.rows;
  }
  return out;
}

}  // namespace oracle
