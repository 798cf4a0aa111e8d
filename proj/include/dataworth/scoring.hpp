// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dataworth Authors

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dataworth/assessment.hpp"
#include "dataworth/catalog.hpp"
#include "dataworth/rational.hpp"

namespace dataworth {

enum class AggregationMode {
  raw_sum,     // total = sum of weight * score; weights default to 1
  normalized,  // weights rescaled to sum to 1, total in [0,1]
};

const char* to_string(AggregationMode mode);
std::optional<AggregationMode> parse_aggregation_mode(std::string_view text);

/// Per-question weights. Questions without an explicit weight get
/// default_weight.
struct WeightProfile {
  AggregationMode mode = AggregationMode::raw_sum;
  Rational default_weight{1};
  /// normalized mode only: rescale over answered questions (including
  /// DontKnow/NotApplicable) instead of over the whole catalog.
  bool renormalize_on_omission = true;
  std::map<std::string, Rational> weights;

  static WeightProfile raw_sum() { return {}; }
  static WeightProfile normalized_equal();

  [[nodiscard]] Rational weight_of(const std::string& question_id) const;
  /// Stable short hash of the profile contents.
  [[nodiscard]] std::string fingerprint() const;
};

/// Unknown ids, negative weights, or an all-zero normalized profile.
void validate_profile(const Catalog& catalog, const WeightProfile& profile);

/// Effective weights over the catalog. In normalized mode they sum to 1.
std::map<std::string, Rational> resolve_weights(const Catalog& catalog, const WeightProfile& profile);

// Weights file (YAML): mode, default_weight, renormalize_on_omission, weights{id: w}.
WeightProfile parse_weights(std::string_view text, const std::string& origin);
WeightProfile read_weights(const std::filesystem::path& path);
std::string write_weights(const WeightProfile& profile);

/// Score of one admissible response; DontKnow and NotApplicable score 0.
/// Throws ValidationError for inadmissible values.
Rational score_response(const QuestionSpec& question, const ResponseValue& value);

struct QuestionScore {
  std::size_t order = 0;  // position in catalog order
  std::string question_id;
  std::string facet_id;
  std::string prompt;
  ResponseValue response;
  Provenance provenance = Provenance::manual;
  Rational value;  // V_i in [0,1]
  Rational weight;
  Rational contribution;
  /// True when value came from a replay override rather than the score rule.
  bool overridden = false;
};

struct FacetSubtotal {
  std::string facet_id;
  std::string title;
  Rational subtotal;
  std::size_t answered = 0;
};

struct ValueReport {
  std::string dataset_id;
  std::string catalog_version;  // version tag
  std::string profile_fingerprint;
  AggregationMode mode = AggregationMode::raw_sum;
  std::vector<QuestionScore> questions;  // answered questions, catalog order
  std::vector<FacetSubtotal> facets;     // facets with at least one answer
  Rational total;
  std::size_t answered = 0;
  std::size_t omitted = 0;
  std::size_t dont_know = 0;
  std::size_t not_applicable = 0;
};

/// Printed per-question scores that replace catalog scoring (replay mode).
using ScoreOverrides = std::map<std::string, Rational>;

/// Throws InvalidResponsesError if the set does not validate.
ValueReport compute_value(const Catalog& catalog, const ResponseSet& set, const WeightProfile& profile,
                          const ScoreOverrides* overrides = nullptr);

struct ComparisonCell {
  std::string response;
  Rational value;
};

struct ComparisonRow {
  std::string question_id;
  std::string facet_id;
  std::size_t order = 0;
  /// One entry per dataset, in ranking order; nullopt when unanswered.
  std::vector<std::optional<ComparisonCell>> cells;
};

struct ComparisonReport {
  std::string catalog_version;
  std::string profile_fingerprint;
  /// (dataset id, total), descending by total, ties by dataset id.
  std::vector<std::pair<std::string, Rational>> ranking;
  std::string winner;
  /// Questions whose score differs between at least two datasets.
  std::vector<ComparisonRow> differences;
  std::vector<ValueReport> reports;  // ranking order
};

/// Needs at least two reports sharing catalog version and profile.
ComparisonReport compare(std::vector<ValueReport> reports);

struct Change {
  std::string question_id;
  std::string value;  // free-form, interpreted like an answers-file value
};

struct ChangeDelta {
  std::string question_id;
  std::optional<ResponseValue> before;  // nullopt when previously unanswered
  ResponseValue after;
  Rational total_before;
  Rational total_after;
  Rational delta;
};

struct DeltaReport {
  std::string dataset_id;
  Rational base_total;
  Rational new_total;
  /// Applied in order; deltas sum exactly to new_total - base_total.
  std::vector<ChangeDelta> changes;
  ResponseSet updated;
};

DeltaReport what_if(const Catalog& catalog, const ResponseSet& set, const WeightProfile& profile,
                    const std::vector<Change>& changes, const ScoreOverrides* overrides = nullptr);

struct Discrepancy {
  std::size_t line = 0;
  std::string question_id;
  std::string response;
  Rational printed;
  Rational catalog_score;
};

struct ReplayVerdict {
  std::string dataset_id;
  std::size_t rows = 0;
  /// Sum of the fixture's row scores as computed by the engine.
  Rational engine_sum;
  Rational printed_total;
  bool has_printed_total = false;
  bool matches_printed = false;
  /// Total when rows are rescored with catalog rules instead.
  Rational catalog_total;
  std::vector<Discrepancy> discrepancies;
  ValueReport report;  // replay-mode report
};

ReplayVerdict replay_check(const ReplayFixture& fixture);

}  // namespace dataworth
