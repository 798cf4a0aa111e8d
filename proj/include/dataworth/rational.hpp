// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dataworth Authors

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace dataworth {

/// Exact rational number used for every score, weight and total.
///
/// Scores in the questionnaire are quarters and tenths; user-entered numeric
/// answers are decimal strings. Keeping everything rational means totals such
/// as 44.25 come out bit-exact, and what-if deltas sum back to the recomputed
/// total with no rounding residue.
class Rational {
 public:
  using Repr = boost::multiprecision::cpp_rational;

  Rational() = default;
  Rational(std::int64_t value) : value_(value) {}  // NOLINT(implicit)
  Rational(std::int64_t num, std::int64_t den);

  /// Parses "1", "0.75", ".5", "-2.5e-1" or "1/3". Throws std::invalid_argument.
  static Rational parse(std::string_view text);
  static bool try_parse(std::string_view text, Rational& out) noexcept;

  /// Exact decimal when the denominator is of the form 2^a 5^b (trailing zeros
  /// trimmed, "1" rather than "1.0"); otherwise "p/q".
  [[nodiscard]] std::string to_string() const;
  /// Fixed decimal rounded half-away-from-zero to at most `max_places`,
  /// trailing zeros trimmed. Used by the human-readable renderers.
  [[nodiscard]] std::string to_decimal(int max_places = 12) const;
  [[nodiscard]] double to_double() const;
  [[nodiscard]] bool is_terminating_decimal() const;

  [[nodiscard]] bool is_zero() const { return value_ == 0; }
  [[nodiscard]] bool is_negative() const { return value_ < 0; }
  [[nodiscard]] const Repr& repr() const { return value_; }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { Rational r; r.value_ = -a.value_; return r; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  explicit Rational(Repr v) : value_(std::move(v)) {}
  Repr value_{0};
};

}  // namespace dataworth
