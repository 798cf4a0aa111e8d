// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dataworth Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dataworth/rational.hpp"

namespace dataworth {

enum class ResponseKind { binary, categorical, numeric_unit, categorical_or_numeric };

const char* to_string(ResponseKind kind);
std::optional<ResponseKind> parse_response_kind(std::string_view text);

/// Reserved response tokens. Both always score 0 and are admissible for every
/// question whose spec allows them.
inline constexpr std::string_view kDontKnow = "DontKnow";
inline constexpr std::string_view kNotApplicable = "NotApplicable";

struct ScoreRule {
  /// label -> score, in the question's allowed-value order.
  std::vector<std::pair<std::string, Rational>> map;
  bool numeric_passthrough = false;
  /// True when a binary question uses the stock Y=1 / N=0 scoring.
  bool default_binary = false;

  [[nodiscard]] std::optional<Rational> score_of(std::string_view label) const;
};

struct QuestionSpec {
  std::string id;  // "<facet>.<name>"
  std::string facet_id;
  std::string prompt;
  ResponseKind kind = ResponseKind::binary;
  std::vector<std::string> allowed_values;  // empty for numeric_unit
  ScoreRule score_rule;
  bool dont_know_allowed = true;
  std::optional<std::string> exclusivity_group;
  std::string applicability;
  /// Alternate prompt wordings seen in the worked scoring tables.
  std::vector<std::string> aliases;
  /// Free-form response -> allowed label ("NS" -> "Not significant").
  std::vector<std::pair<std::string, std::string>> value_aliases;
  /// Named converter for quantity responses, e.g. "byte_size" turns "0.5 GB"
  /// into a size-bucket label.
  std::string value_parser;
  bool low_confidence = false;
  bool canonical = true;
  /// Where this question was defined; used in duplicate-id diagnostics.
  std::string origin;

  [[nodiscard]] bool accepts_numeric() const {
    return kind == ResponseKind::numeric_unit || kind == ResponseKind::categorical_or_numeric;
  }
  /// Maps a free-form categorical response onto one of allowed_values, or
  /// nullopt. Matching ignores case, spacing and punctuation.
  [[nodiscard]] std::optional<std::string> match_label(std::string_view response) const;
};

struct FacetSpec {
  std::string id;
  std::string title;
  std::string description;
  std::vector<std::string> question_ids;
  bool canonical = true;
};

struct CatalogVersion {
  std::string semver;
  std::string checksum;  // "sha256:<hex>" over the canonical content
  std::vector<std::string> extensions;  // ids of non-canonical questions

  /// semver, or semver+ext.<8 hex> when extensions are loaded.
  [[nodiscard]] std::string tag() const;
};

/// Parsed catalog or extension document, before merging.
struct CatalogDocument {
  std::string version;
  std::string checksum;
  std::vector<FacetSpec> facets;
  std::vector<QuestionSpec> questions;
  std::string origin;
  /// line numbers (1-based) of each question definition, by id.
  std::map<std::string, std::size_t> question_lines;
};

/// Immutable questionnaire catalog. Copies share storage.
class Catalog {
 public:
  static constexpr std::string_view kCanonicalVersion = "1.0.0";

  /// Built-in questionnaire: 17 facets, every boxed sub-facet question.
  static Catalog load_canonical();
  /// Canonical catalog merged with the extension file at `path`.
  static Catalog load_extended(const std::filesystem::path& path);
  /// Reads a full catalog file (as written by serialize_catalog).
  static Catalog load_file(const std::filesystem::path& path);
  static Catalog from_document(const CatalogDocument& doc);

  /// Returns a new catalog with `ext` merged in. Extension questions may
  /// join existing facets or facets the extension declares.
  [[nodiscard]] Catalog extended_with(const CatalogDocument& ext) const;

  [[nodiscard]] const QuestionSpec* find(std::string_view id) const;
  /// Throws NotFoundError carrying the nearest id.
  [[nodiscard]] const QuestionSpec& lookup(std::string_view id) const;
  [[nodiscard]] std::optional<std::string> suggest(std::string_view id) const;
  /// Finds a question by id, prompt or prompt alias.
  [[nodiscard]] const QuestionSpec* resolve(std::string_view id_or_prompt) const;

  [[nodiscard]] const std::vector<FacetSpec>& facets() const;
  [[nodiscard]] const FacetSpec* facet(std::string_view id) const;
  /// Questions in facet order.
  [[nodiscard]] const std::vector<QuestionSpec>& questions() const;
  [[nodiscard]] const CatalogVersion& version() const;
  [[nodiscard]] bool has_extensions() const { return !version().extensions.empty(); }

  struct Data;  // implementation detail

 private:
  explicit Catalog(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;
};

/// Built-in extension pack with questions that only appear in the worked
/// scoring tables. Not part of the canonical catalog.
CatalogDocument examples_extension_pack();

/// Size-bucket label for a byte count (data_volume.size).
std::string volume_bucket_label(std::uint64_t bytes);
/// Parses "0.5 GB", ".35GB", "750 MB", "1024" (bytes). Decimal units.
std::optional<std::uint64_t> parse_byte_size(std::string_view text);

/// Lowercase, strip everything but letters and digits.
std::string normalize_token(std::string_view text);
/// Lowercase, punctuation dropped, whitespace collapsed.
std::string normalize_prompt(std::string_view text);

// Catalog file format (YAML). Field names are documented in docs/formats.md.
std::string serialize_catalog(const Catalog& catalog);
CatalogDocument parse_catalog_document(std::string_view text, const std::string& origin);
CatalogDocument read_catalog_document(const std::filesystem::path& path);
std::string canonical_checksum(const Catalog& catalog);

}  // namespace dataworth
