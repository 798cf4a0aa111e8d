// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dataworth Authors

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dataworth/catalog.hpp"
#include "dataworth/errors.hpp"
#include "dataworth/rational.hpp"

namespace dataworth {

enum class Provenance { manual, auto_profiler, replay_fixture };

const char* to_string(Provenance p);
std::optional<Provenance> parse_provenance(std::string_view text);

/// One answer: a label, a number, or one of the two reserved "no answer"
/// values. Numbers are kept exactly as entered; range checks happen in
/// validation, never by clamping.
class ResponseValue {
 public:
  enum class Kind { label, number, dont_know, not_applicable };

  static ResponseValue of_label(std::string label);
  static ResponseValue of_number(Rational number);
  static ResponseValue dont_know();
  static ResponseValue not_applicable();

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] const std::string& label() const { return label_; }
  [[nodiscard]] const Rational& number() const { return number_; }
  [[nodiscard]] bool is_special() const { return kind_ == Kind::dont_know || kind_ == Kind::not_applicable; }
  /// Text form used in files and reports ("Structured", "0.85", "DontKnow").
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const ResponseValue&, const ResponseValue&) = default;

 private:
  Kind kind_ = Kind::dont_know;
  std::string label_;
  Rational number_;
};

/// Reads free-form answer text for `question`: reserved tokens, numbers for
/// numeric kinds, quantity parsers, label aliases. Anything unrecognised is
/// kept verbatim as a label so validation can report it.
ResponseValue interpret_response(const QuestionSpec& question, std::string_view text);

/// Why `value` is not admissible for `question`, or nullopt when it is.
std::optional<std::string> admissibility_problem(const QuestionSpec& question, const ResponseValue& value);

struct Response {
  std::string question_id;
  ResponseValue value;
  Provenance provenance = Provenance::manual;
  std::string note;

  friend bool operator==(const Response&, const Response&) = default;
};

struct ResponseSet {
  std::string dataset_id;
  std::string catalog_version;
  std::map<std::string, Response> responses;
  std::set<std::string> omitted;

  /// Records an answer and clears any omission for that question.
  void set(Response response);
  /// Adds every catalog question without an answer to `omitted`.
  void finalize_omitted(const Catalog& catalog);

  friend bool operator==(const ResponseSet&, const ResponseSet&) = default;
};

struct Violation {
  enum class Code {
    unknown_question,
    inadmissible_value,
    out_of_range,
    dont_know_not_allowed,
    exclusivity_conflict,
    answered_and_omitted,
  };
  Code code;
  std::string question_id;
  std::string message;
};

const char* to_string(Violation::Code code);

struct ValidationReport {
  std::vector<Violation> violations;
  /// Unanswered canonical questions, listed for coverage.
  std::vector<std::string> unanswered;
  [[nodiscard]] bool valid() const { return violations.empty(); }
  [[nodiscard]] std::string summary() const;
};

/// Raised when scoring or storing an invalid response set.
class InvalidResponsesError : public ValidationError {
 public:
  explicit InvalidResponsesError(ValidationReport report);
  [[nodiscard]] const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Throws ValidationError on catalog version mismatch; everything else is
/// reported.
ValidationReport validate(const Catalog& catalog, const ResponseSet& set);

struct MergeResult {
  ResponseSet merged;
  ValidationReport report;
};

/// Overlay answers win per question. Throws ValidationError if dataset or
/// catalog version differ (an empty value on either side matches anything).
MergeResult merge(const Catalog& catalog, const ResponseSet& base, const ResponseSet& overlay);

// Answers file (YAML): dataset, catalog_version, answers{id: value | {value, note, provenance}}, omitted[].
std::string write_answers(const ResponseSet& set);
ResponseSet parse_answers(const Catalog& catalog, std::string_view text, const std::string& origin);
ResponseSet read_answers(const Catalog& catalog, const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Replay fixtures: tab-separated rows (facet, question, response, score) as
// printed in a worked scoring table, with '#'-prefixed metadata lines.

struct ReplayRow {
  std::size_t line = 0;
  std::string facet;
  std::string question;
  std::string response;
  Rational printed_score;
  std::string question_id;  // resolved catalog id
};

struct ReplayFixture {
  std::string dataset_id;
  std::string caption;
  /// Printed grand total; 0 when the fixture does not state one.
  Rational printed_total;
  bool has_printed_total = false;
  std::vector<ReplayRow> rows;
  ResponseSet responses;
  /// Per-question printed scores, by question id.
  std::map<std::string, Rational> expected_scores;
  /// Catalog the rows were resolved against (the input catalog, plus the
  /// examples-extension pack when a row needed it).
  Catalog catalog = Catalog::load_canonical();
};

ReplayFixture parse_replay_table(const Catalog& catalog, std::string_view text, const std::string& origin);
ReplayFixture from_replay_table(const Catalog& catalog, const std::filesystem::path& path);
std::string write_replay_table(const ReplayFixture& fixture);

}  // namespace dataworth
