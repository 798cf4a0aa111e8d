// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dataworth Authors

#include "dataworth/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace dataworth {

namespace {

using boost::multiprecision::cpp_int;

cpp_int pow10(unsigned n) {
  cpp_int r = 1;
  for (unsigned i = 0; i < n; ++i) r *= 10;
  return r;
}

bool parse_digits(std::string_view s, cpp_int& out) {
  if (s.empty()) return false;
  out = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    out = out * 10 + (c - '0');
  }
  return true;
}

bool parse_impl(std::string_view text, Rational::Repr& out) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return false;

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational::Repr num, den;
    if (!parse_impl(text.substr(0, slash), num) || !parse_impl(text.substr(slash + 1), den)) return false;
    if (den == 0) return false;
    out = num / den;
    return true;
  }

  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = text.substr(e + 1);
    text = text.substr(0, e);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    cpp_int ev;
    if (!parse_digits(exp_part, ev) || ev > 4096) return false;
    exponent = ev.convert_to<long>();
    if (exp_negative) exponent = -exponent;
  }

  std::string_view int_part = text;
  std::string_view frac_part;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    int_part = text.substr(0, dot);
    frac_part = text.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) return false;

  cpp_int int_value = 0, frac_value = 0;
  if (!int_part.empty() && !parse_digits(int_part, int_value)) return false;
  if (!frac_part.empty() && !parse_digits(frac_part, frac_value)) return false;

  cpp_int scale = pow10(static_cast<unsigned>(frac_part.size()));
  cpp_int numerator = int_value * scale + frac_value;
  Rational::Repr value(numerator, scale);
  if (exponent > 0) value *= Rational::Repr(pow10(static_cast<unsigned>(exponent)));
  if (exponent < 0) value /= Rational::Repr(pow10(static_cast<unsigned>(-exponent)));
  out = negative ? Rational::Repr(-value) : value;
  return true;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  value_ = Repr(num, den);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.value_ == 0) throw std::domain_error("division by zero");
  value_ /= o.value_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  Repr v;
  if (!parse_impl(text, v)) throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  return Rational(std::move(v));
}

bool Rational::try_parse(std::string_view text, Rational& out) noexcept {
  try {
    Repr v;
    if (!parse_impl(text, v)) return false;
    out = Rational(std::move(v));
    return true;
  } catch (...) {
    return false;
  }
}

bool Rational::is_terminating_decimal() const {
  cpp_int den = boost::multiprecision::denominator(value_);
  while (den % 2 == 0) den /= 2;
  while (den % 5 == 0) den /= 5;
  return den == 1;
}

std::string Rational::to_string() const {
  if (!is_terminating_decimal()) {
    return boost::multiprecision::numerator(value_).str() + "/" +
           boost::multiprecision::denominator(value_).str();
  }
  cpp_int den = boost::multiprecision::denominator(value_);
  // den is 2^a 5^b, so 10^max(a,b) is the first power of ten it divides.
  int places = 0;
  cpp_int scale = 1;
  while (scale % den != 0) {
    scale *= 10;
    ++places;
  }
  return to_decimal(places);
}

std::string Rational::to_decimal(int max_places) const {
  if (max_places < 0) max_places = 0;
  cpp_int num = boost::multiprecision::numerator(value_);
  cpp_int den = boost::multiprecision::denominator(value_);
  bool negative = num < 0;
  if (negative) num = -num;
  cpp_int scale = pow10(static_cast<unsigned>(max_places));
  cpp_int scaled = num * scale;
  cpp_int q = scaled / den;
  cpp_int r = scaled % den;
  if (r * 2 >= den) q += 1;

  std::string digits = q.str();
  if (static_cast<int>(digits.size()) <= max_places) {
    digits.insert(0, static_cast<std::size_t>(max_places) - digits.size() + 1, '0');
  }
  std::string int_digits = digits.substr(0, digits.size() - static_cast<std::size_t>(max_places));
  std::string frac_digits = digits.substr(digits.size() - static_cast<std::size_t>(max_places));
  while (!frac_digits.empty() && frac_digits.back() == '0') frac_digits.pop_back();

  std::string out;
  if (negative && (q != 0)) out.push_back('-');
  out += int_digits;
  if (!frac_digits.empty()) out += "." + frac_digits;
  return out;
}

double Rational::to_double() const { return value_.convert_to<double>(); }

}  // namespace dataworth
