// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dataworth Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dataworth/assessment.hpp"
#include "dataworth/catalog.hpp"
#include "dataworth/rational.hpp"

namespace dataworth {

enum class DetectedFormat { csv, tsv, json, xml, pdf, gif_jpg, other };
enum class StructureClass { structured, semi_structured, unstructured };
enum class Granularity { aggregate, individual, unknown };
enum class FieldType { empty, boolean, integer, number, date, string, nested };

const char* to_string(DetectedFormat f);
const char* to_string(StructureClass s);
const char* to_string(Granularity g);
const char* to_string(FieldType t);
std::optional<DetectedFormat> parse_detected_format(std::string_view text);

/// Magic bytes first; then the extension when the content agrees with it or
/// says nothing; otherwise what the content looks like.
DetectedFormat detect_format(const std::filesystem::path& path);
DetectedFormat detect_format(std::string_view head, std::string_view extension);

StructureClass classify_structure(DetectedFormat format);
/// Data Volume score for a byte count: 0.5, 0.75, 1 or 0.5.
Rational size_bucket(std::uint64_t bytes);

// ---------------------------------------------------------------------------
// Sensitivity rules

enum class SensitivityCategory { pii, protected_attribute, financial, health, confidential };

const char* to_string(SensitivityCategory c);
std::optional<SensitivityCategory> parse_sensitivity_category(std::string_view text);

struct SensitivityRule {
  std::string id;
  SensitivityCategory category = SensitivityCategory::pii;
  /// ECMAScript regex, case-insensitive, searched in the normalised column
  /// name (lowercase, non-alphanumerics turned into '_').
  std::string name_pattern;
  /// Regex that must match a whole cell. Only string-typed columns are
  /// checked.
  std::string value_pattern;
  /// Fraction of sampled non-missing cells that must match value_pattern.
  Rational value_threshold{1, 2};
  Rational confidence{1};
  bool enabled = true;
};

struct RulePack {
  std::vector<SensitivityRule> rules;

  static RulePack builtin();
  /// Throws NotFoundError for unknown ids.
  void set_enabled(std::string_view rule_id, bool enabled);
};

// Rule pack file (YAML): rules[{id, category, name_pattern?, value_pattern?, value_threshold?, confidence?, enabled?}].
RulePack parse_rulepack(std::string_view text, const std::string& origin);
RulePack read_rulepack(const std::filesystem::path& path);
std::string write_rulepack(const RulePack& pack);

struct SensitivityMatch {
  std::string rule_id;
  SensitivityCategory category = SensitivityCategory::pii;
  std::string column;
  bool by_name = false;
  bool by_value = false;
  Rational confidence;
  /// Masked sample value, or empty when matched by name alone.
  std::string evidence;
};

struct SensitivityFlags {
  std::vector<std::string> pii_columns;
  std::vector<std::string> protected_columns;
  std::vector<std::string> financial_columns;
  std::vector<std::string> health_columns;
  std::vector<std::string> confidential_columns;
  std::vector<SensitivityMatch> matches;

  [[nodiscard]] bool empty() const { return matches.empty(); }
};

// ---------------------------------------------------------------------------
// Profiles

struct FieldInfo {
  std::string name;
  FieldType type = FieldType::empty;
  std::uint64_t missing = 0;
  /// 1 - missing / rows.
  Rational completeness{1};
};

struct SchemaInfo {
  bool has_schema = false;
  std::vector<FieldInfo> fields;
};

struct QualityScan {
  std::uint64_t rows = 0;
  std::uint64_t error_rows = 0;
  std::uint64_t duplicate_rows = 0;
  Rational duplicate_row_fraction;
  std::vector<FieldInfo> fields;  // completeness per field
};

struct ProfileOptions {
  /// Leading rows used for type inference.
  std::size_t sample_rows = 10000;
  /// Extra rows drawn uniformly from the remainder.
  std::size_t reservoir_rows = 1000;
  std::uint64_t seed = 0x5eed;
  RulePack rulepack = RulePack::builtin();
};

/// Everything the profiler measured. Absent optionals mean "no evidence";
/// auto_fill leaves the matching questions unanswered.
struct DatasetProfile {
  std::string path;
  std::optional<DetectedFormat> format;
  std::optional<std::uint64_t> byte_size;
  std::optional<StructureClass> structure;
  std::optional<bool> has_schema;
  std::vector<FieldInfo> fields;
  std::optional<std::uint64_t> row_count;
  std::uint64_t error_rows = 0;
  std::optional<Rational> duplicate_row_fraction;
  Granularity granularity = Granularity::unknown;
  std::optional<SensitivityFlags> sensitivity;
  std::optional<bool> time_series;
  std::optional<bool> primary_types_only;
  std::optional<bool> instances_similar;
  /// True when type inference saw only part of the rows.
  bool sampled = false;
  /// Content problems that did not stop profiling (malformed quoting, JSON
  /// syntax errors).
  std::vector<std::string> warnings;

  [[nodiscard]] std::optional<std::string> size_bucket_label() const;
  [[nodiscard]] std::optional<Rational> size_bucket_score() const;
};

SchemaInfo infer_schema(const std::filesystem::path& path, DetectedFormat format,
                        const ProfileOptions& options = {});
QualityScan quality_scan(const std::filesystem::path& path, DetectedFormat format,
                         const ProfileOptions& options = {});
SensitivityFlags scan_sensitivity(const std::filesystem::path& path, DetectedFormat format,
                                  const RulePack& rulepack, const ProfileOptions& options = {});

DatasetProfile profile_file(const std::filesystem::path& path, const ProfileOptions& options = {});

/// Question ids auto_fill may answer.
const std::vector<std::string>& auto_answerable_questions();

/// Responses (auto_profiler provenance) for every question the profile has
/// evidence for; everything else in `catalog` is omitted.
ResponseSet auto_fill(const DatasetProfile& profile, const Catalog& catalog);

}  // namespace dataworth
