// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dataworth Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dataworth/catalog.hpp"
#include "dataworth/profiler.hpp"
#include "dataworth/rational.hpp"

namespace dataworth {

/// Metadata record for one dataset in a distribution study.
struct DatasetDescriptor {
  std::string id;
  /// Free-form tag such as kaggle_dump, uci_dump or profiled.
  std::string source;
  /// dimension -> observed value
  std::map<std::string, std::string> values;
  /// File (and document index) the record came from.
  std::string origin;
};

/// Dimensions with a fixed place in tables: pii, format,
/// protected_attributes, size, schema, level, layout, aggregation_type,
/// update_frequency, data_type, arrival_frequency.
const std::vector<std::string>& standard_dimensions();
bool is_standard_dimension(std::string_view dimension);

struct IngestError {
  std::string path;
  std::string message;
};

struct Corpus {
  std::vector<DatasetDescriptor> descriptors;
  std::vector<IngestError> errors;

  [[nodiscard]] std::size_t size() const { return descriptors.size(); }
  /// Every observed dimension: standard ones in their fixed order, then
  /// extension dimensions alphabetically.
  [[nodiscard]] std::vector<std::string> dimensions() const;
  /// Observed dimensions outside the standard set.
  [[nodiscard]] std::vector<std::string> extension_dimensions() const;
};

// Descriptor file (YAML): one or more documents, each
//   id: <string>
//   source: <string>       (optional)
//   values: {<dimension>: <scalar>, ...}
// yes/no/true/false values are read as Y/N.
std::vector<DatasetDescriptor> parse_descriptors(std::string_view text, const std::string& origin);
std::string write_descriptor(const DatasetDescriptor& d);

/// Reads every file; malformed files and duplicate ids go to Corpus::errors
/// and are skipped. Files are parsed on up to `threads` workers; descriptor
/// order follows `paths`.
Corpus ingest(const std::vector<std::filesystem::path>& paths, unsigned threads = 1);

/// Descriptor for a profiled file, using the profiler's evidence only.
DatasetDescriptor descriptor_from_profile(const DatasetProfile& profile, std::string id = {});

struct DistributionRow {
  std::string dimension;
  /// value -> count, ordered by value label.
  std::map<std::string, std::uint64_t> counts;
  /// Descriptors carrying the dimension (sum of counts).
  std::uint64_t observed = 0;
  /// Descriptors without it.
  std::uint64_t missing = 0;
};

struct DistributionTable {
  /// Corpus size.
  std::uint64_t total = 0;
  std::vector<DistributionRow> rows;  // Corpus::dimensions() order

  [[nodiscard]] const DistributionRow* row(std::string_view dimension) const;
};

/// Throws NotFoundError when no descriptor carries the dimension.
DistributionRow distribution(const Corpus& corpus, const std::string& dimension);
DistributionTable tabulate(const Corpus& corpus);

enum class PriorProvenance { frequency_derived, manual_override };
const char* to_string(PriorProvenance p);

struct DimensionPrior {
  std::string dimension;
  /// Decreasing preference.
  std::vector<std::string> order;
  PriorProvenance provenance = PriorProvenance::frequency_derived;
};

struct RankPrior {
  std::vector<DimensionPrior> dimensions;

  [[nodiscard]] const DimensionPrior* find(std::string_view dimension) const;
};

/// dimension -> preferred order. Values the override leaves out keep their
/// frequency order after the listed ones.
using PriorOverrides = std::map<std::string, std::vector<std::string>>;

/// Descending count, ties broken by label. Throws ValidationError for an
/// empty row or an override naming an unobserved or repeated value.
DimensionPrior derive_rank_prior(const DistributionRow& row, const PriorOverrides& overrides = {});
RankPrior derive_rank_prior(const DistributionTable& table, const PriorOverrides& overrides = {});

/// Evenly spaced scores from 1 at the top of the ranking to 0 at the
/// bottom; a single value scores 1.
ScoreRule prior_to_scores(const DimensionPrior& prior);

// Overrides file (YAML): {<dimension>: [value, ...], ...}
PriorOverrides parse_prior_overrides(std::string_view text, const std::string& origin);
PriorOverrides read_prior_overrides(const std::filesystem::path& path);

}  // namespace dataworth
