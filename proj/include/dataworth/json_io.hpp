// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dataworth Authors

#pragma once

#include <json.hpp>

#include "dataworth/assessment.hpp"
#include "dataworth/catalog.hpp"
#include "dataworth/corpus.hpp"
#include "dataworth/profiler.hpp"
#include "dataworth/scoring.hpp"

// Machine format. Rationals are strings in their exact form ("0.75",
// "1/3"); everything a renderer drops is kept here. *_from_json throws
// ParseError on shape or type mismatches.
namespace dataworth {

using Json = nlohmann::json;

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j, const std::string& field = "value");

Json to_json(const ResponseValue& v);
ResponseValue response_value_from_json(const Json& j);

Json to_json(const ResponseSet& set);
ResponseSet response_set_from_json(const Json& j);

Json to_json(const ValueReport& report);
ValueReport value_report_from_json(const Json& j);

Json to_json(const ComparisonReport& report);
ComparisonReport comparison_report_from_json(const Json& j);

Json to_json(const DeltaReport& report);
Json to_json(const ReplayVerdict& verdict);
Json to_json(const ValidationReport& report);
Json to_json(const WeightProfile& profile);

Json to_json(const DatasetProfile& profile);
DatasetProfile dataset_profile_from_json(const Json& j);

Json to_json(const DistributionTable& table);
DistributionTable distribution_table_from_json(const Json& j);
Json to_json(const RankPrior& prior);
Json to_json(const ScoreRule& rule);

Json to_json(const Catalog& catalog);

}  // namespace dataworth
