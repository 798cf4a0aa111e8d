// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dataworth Authors

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "dataworth/corpus.hpp"
#include "dataworth/profiler.hpp"
#include "dataworth/scoring.hpp"

namespace dataworth {

enum class RenderFormat { machine, human_table, markdown };

const char* to_string(RenderFormat f);
/// "machine"/"json", "human"/"table"/"human_table", "markdown"/"md".
std::optional<RenderFormat> parse_render_format(std::string_view text);

struct RenderSpec {
  RenderFormat format = RenderFormat::human_table;
  /// 0: rows and total. 1: adds facet subtotals and weight columns.
  int verbosity = 0;
  /// Adds a Source column (manual / auto_profiler / replay_fixture).
  bool include_provenance = false;
};

/// Human number formatting: exact decimal when it terminates within six
/// places, otherwise rounded to six; trailing zeros trimmed.
std::string format_score(const Rational& r);

// All renderers are pure and end their output with a newline.
std::string render_value(const ValueReport& report, const RenderSpec& spec = {});
std::string render_comparison(const ComparisonReport& report, const RenderSpec& spec = {});
std::string render_delta(const DeltaReport& report, const RenderSpec& spec = {});
std::string render_replay(const ReplayVerdict& verdict, const RenderSpec& spec = {});
std::string render_profile(const DatasetProfile& profile, const RenderSpec& spec = {});
std::string render_distribution(const DistributionTable& table, const RenderSpec& spec = {});
std::string render_rank_prior(const RankPrior& prior, const RenderSpec& spec = {});
std::string render_validation(const ValidationReport& report, const RenderSpec& spec = {});

/// Plot-ready export: "dimension<TAB>value<TAB>count" with a header row;
/// missing counts appear as value "(missing)".
std::string distribution_tsv(const DistributionTable& table);

}  // namespace dataworth
