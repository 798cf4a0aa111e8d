// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dataworth Authors

#include "dataworth/json_io.hpp"

#include "dataworth/errors.hpp"

namespace dataworth {

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& message) {
  throw ParseError(ParseError::Location{"json", std::nullopt, std::nullopt, field}, message);
}

const Json& member(const Json& j, const char* key) {
  if (!j.is_object()) bad(key, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(key, "missing field");
  return *it;
}

std::string str(const Json& j, const char* key) {
  const Json& v = member(j, key);
  if (!v.is_string()) bad(key, "expected a string");
  return v.get<std::string>();
}

std::uint64_t uint(const Json& j, const char* key) {
  const Json& v = member(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    bad(key, "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

bool boolean(const Json& j, const char* key) {
  const Json& v = member(j, key);
  if (!v.is_boolean()) bad(key, "expected a boolean");
  return v.get<bool>();
}

const Json& array(const Json& j, const char* key) {
  const Json& v = member(j, key);
  if (!v.is_array()) bad(key, "expected an array");
  return v;
}

Rational rat(const Json& j, const char* key) { return rational_from_json(member(j, key), key); }

const char* kind_name(ResponseValue::Kind k) {
  switch (k) {
    case ResponseValue::Kind::label: return "label";
    case ResponseValue::Kind::number: return "number";
    case ResponseValue::Kind::dont_know: return "dont_know";
    case ResponseValue::Kind::not_applicable: return "not_applicable";
  }
  return "label";
}

Json string_list(const std::vector<std::string>& v) { return Json(v); }

std::vector<std::string> strings(const Json& j, const char* key) {
  std::vector<std::string> out;
  for (const auto& v : array(j, key)) {
    if (!v.is_string()) bad(key, "expected strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

template <typename T>
Json optional_json(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_same_v<T, Rational>) {
    return to_json(*v);
  } else {
    return *v;
  }
}

Json field_json(const FieldInfo& f) {
  return {{"name", f.name}, {"type", to_string(f.type)}, {"missing", f.missing}, {"completeness", to_json(f.completeness)}};
}

FieldType field_type(const std::string& s) {
  for (auto t : {FieldType::empty, FieldType::boolean, FieldType::integer, FieldType::number, FieldType::date,
                 FieldType::string, FieldType::nested}) {
    if (s == to_string(t)) return t;
  }
  bad("type", "unknown field type '" + s + "'");
}

}  // namespace

Json to_json(const Rational& r) { return r.to_string(); }

Rational rational_from_json(const Json& j, const std::string& field) {
  if (j.is_string()) {
    Rational r;
    if (Rational::try_parse(j.get<std::string>(), r)) return r;
  } else if (j.is_number_integer()) {
    return Rational(j.get<std::int64_t>());
  }
  bad(field, "expected an exact number string");
}

Json to_json(const ResponseValue& v) {
  Json j{{"kind", kind_name(v.kind())}};
  if (v.kind() == ResponseValue::Kind::label) j["value"] = v.label();
  if (v.kind() == ResponseValue::Kind::number) j["value"] = to_json(v.number());
  return j;
}

ResponseValue response_value_from_json(const Json& j) {
  const std::string kind = str(j, "kind");
  if (kind == "label") return ResponseValue::of_label(str(j, "value"));
  if (kind == "number") return ResponseValue::of_number(rat(j, "value"));
  if (kind == "dont_know") return ResponseValue::dont_know();
  if (kind == "not_applicable") return ResponseValue::not_applicable();
  bad("kind", "unknown response kind '" + kind + "'");
}

Json to_json(const ResponseSet& set) {
  Json answers = Json::array();
  for (const auto& [id, r] : set.responses) {
    answers.push_back({{"question_id", id},
                       {"response", to_json(r.value)},
                       {"provenance", to_string(r.provenance)},
                       {"note", r.note}});
  }
  return {{"dataset_id", set.dataset_id},
          {"catalog_version", set.catalog_version},
          {"answers", answers},
          {"omitted", Json(std::vector<std::string>(set.omitted.begin(), set.omitted.end()))}};
}

ResponseSet response_set_from_json(const Json& j) {
  ResponseSet s;
  s.dataset_id = str(j, "dataset_id");
  s.catalog_version = str(j, "catalog_version");
  for (const auto& a : array(j, "answers")) {
    Response r;
    r.question_id = str(a, "question_id");
    r.value = response_value_from_json(member(a, "response"));
    auto p = parse_provenance(str(a, "provenance"));
    if (!p) bad("provenance", "unknown provenance");
    r.provenance = *p;
    r.note = str(a, "note");
    s.responses[r.question_id] = r;
  }
  for (const auto& id : strings(j, "omitted")) s.omitted.insert(id);
  return s;
}

Json to_json(const ValueReport& r) {
  Json questions = Json::array();
  for (const auto& q : r.questions) {
    questions.push_back({{"order", q.order},
                         {"question_id", q.question_id},
                         {"facet_id", q.facet_id},
                         {"prompt", q.prompt},
                         {"response", to_json(q.response)},
                         {"provenance", to_string(q.provenance)},
                         {"value", to_json(q.value)},
                         {"weight", to_json(q.weight)},
                         {"contribution", to_json(q.contribution)},
                         {"overridden", q.overridden}});
  }
  Json facets = Json::array();
  for (const auto& f : r.facets) {
    facets.push_back(
        {{"facet_id", f.facet_id}, {"title", f.title}, {"subtotal", to_json(f.subtotal)}, {"answered", f.answered}});
  }
  return {{"dataset_id", r.dataset_id},
          {"catalog_version", r.catalog_version},
          {"profile_fingerprint", r.profile_fingerprint},
          {"mode", to_string(r.mode)},
          {"total", to_json(r.total)},
          {"answered", r.answered},
          {"omitted", r.omitted},
          {"dont_know", r.dont_know},
          {"not_applicable", r.not_applicable},
          {"facets", facets},
          {"questions", questions}};
}

ValueReport value_report_from_json(const Json& j) {
  ValueReport r;
  r.dataset_id = str(j, "dataset_id");
  r.catalog_version = str(j, "catalog_version");
  r.profile_fingerprint = str(j, "profile_fingerprint");
  auto mode = parse_aggregation_mode(str(j, "mode"));
  if (!mode) bad("mode", "unknown aggregation mode");
  r.mode = *mode;
  r.total = rat(j, "total");
  r.answered = uint(j, "answered");
  r.omitted = uint(j, "omitted");
  r.dont_know = uint(j, "dont_know");
  r.not_applicable = uint(j, "not_applicable");
  for (const auto& f : array(j, "facets")) {
    r.facets.push_back(FacetSubtotal{str(f, "facet_id"), str(f, "title"), rat(f, "subtotal"), uint(f, "answered")});
  }
  for (const auto& q : array(j, "questions")) {
    QuestionScore s;
    s.order = uint(q, "order");
    s.question_id = str(q, "question_id");
    s.facet_id = str(q, "facet_id");
    s.prompt = str(q, "prompt");
    s.response = response_value_from_json(member(q, "response"));
    auto p = parse_provenance(str(q, "provenance"));
    if (!p) bad("provenance", "unknown provenance");
    s.provenance = *p;
    s.value = rat(q, "value");
    s.weight = rat(q, "weight");
    s.contribution = rat(q, "contribution");
    s.overridden = boolean(q, "overridden");
    r.questions.push_back(std::move(s));
  }
  return r;
}

Json to_json(const ComparisonReport& c) {
  Json ranking = Json::array();
  for (const auto& [id, total] : c.ranking) ranking.push_back({{"dataset_id", id}, {"total", to_json(total)}});
  Json diffs = Json::array();
  for (const auto& row : c.differences) {
    Json cells = Json::array();
    for (const auto& cell : row.cells) {
      if (cell) {
        cells.push_back({{"response", cell->response}, {"value", to_json(cell->value)}});
      } else {
        cells.push_back(nullptr);
      }
    }
    diffs.push_back(
        {{"question_id", row.question_id}, {"facet_id", row.facet_id}, {"order", row.order}, {"cells", cells}});
  }
  Json reports = Json::array();
  for (const auto& r : c.reports) reports.push_back(to_json(r));
  return {{"catalog_version", c.catalog_version},
          {"profile_fingerprint", c.profile_fingerprint},
          {"winner", c.winner},
          {"ranking", ranking},
          {"differences", diffs},
          {"reports", reports}};
}

ComparisonReport comparison_report_from_json(const Json& j) {
  ComparisonReport c;
  c.catalog_version = str(j, "catalog_version");
  c.profile_fingerprint = str(j, "profile_fingerprint");
  c.winner = str(j, "winner");
  for (const auto& r : array(j, "ranking")) c.ranking.emplace_back(str(r, "dataset_id"), rat(r, "total"));
  for (const auto& d : array(j, "differences")) {
    ComparisonRow row;
    row.question_id = str(d, "question_id");
    row.facet_id = str(d, "facet_id");
    row.order = uint(d, "order");
    for (const auto& cell : array(d, "cells")) {
      if (cell.is_null()) {
        row.cells.emplace_back(std::nullopt);
      } else {
        row.cells.emplace_back(ComparisonCell{str(cell, "response"), rat(cell, "value")});
      }
    }
    c.differences.push_back(std::move(row));
  }
  for (const auto& r : array(j, "reports")) c.reports.push_back(value_report_from_json(r));
  return c;
}

Json to_json(const DeltaReport& d) {
  Json changes = Json::array();
  for (const auto& c : d.changes) {
    changes.push_back({{"question_id", c.question_id},
                       {"before", c.before ? to_json(*c.before) : Json(nullptr)},
                       {"after", to_json(c.after)},
                       {"total_before", to_json(c.total_before)},
                       {"total_after", to_json(c.total_after)},
                       {"delta", to_json(c.delta)}});
  }
  return {{"dataset_id", d.dataset_id},
          {"base_total", to_json(d.base_total)},
          {"new_total", to_json(d.new_total)},
          {"delta", to_json(d.new_total - d.base_total)},
          {"changes", changes},
          {"updated", to_json(d.updated)}};
}

Json to_json(const ReplayVerdict& v) {
  Json discrepancies = Json::array();
  for (const auto& d : v.discrepancies) {
    discrepancies.push_back({{"line", d.line},
                             {"question_id", d.question_id},
                             {"response", d.response},
                             {"printed", to_json(d.printed)},
                             {"catalog_score", to_json(d.catalog_score)}});
  }
  return {{"dataset_id", v.dataset_id},
          {"rows", v.rows},
          {"engine_sum", to_json(v.engine_sum)},
          {"printed_total", v.has_printed_total ? to_json(v.printed_total) : Json(nullptr)},
          {"matches_printed", v.matches_printed},
          {"catalog_total", to_json(v.catalog_total)},
          {"discrepancies", discrepancies},
          {"report", to_json(v.report)}};
}

Json to_json(const ValidationReport& r) {
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"code", to_string(v.code)}, {"question_id", v.question_id}, {"message", v.message}});
  }
  return {{"valid", r.valid()}, {"violations", violations}, {"unanswered", string_list(r.unanswered)}};
}

Json to_json(const WeightProfile& p) {
  Json weights = Json::object();
  for (const auto& [id, w] : p.weights) weights[id] = to_json(w);
  return {{"mode", to_string(p.mode)},
          {"default_weight", to_json(p.default_weight)},
          {"renormalize_on_omission", p.renormalize_on_omission},
          {"weights", weights},
          {"fingerprint", p.fingerprint()}};
}

Json to_json(const DatasetProfile& p) {
  Json fields = Json::array();
  for (const auto& f : p.fields) fields.push_back(field_json(f));
  Json sensitivity = nullptr;
  if (p.sensitivity) {
    const auto& s = *p.sensitivity;
    Json matches = Json::array();
    for (const auto& m : s.matches) {
      matches.push_back({{"rule_id", m.rule_id},
                         {"category", to_string(m.category)},
                         {"column", m.column},
                         {"by_name", m.by_name},
                         {"by_value", m.by_value},
                         {"confidence", to_json(m.confidence)},
                         {"evidence", m.evidence}});
    }
    sensitivity = {{"pii_columns", string_list(s.pii_columns)},
                   {"protected_columns", string_list(s.protected_columns)},
                   {"financial_columns", string_list(s.financial_columns)},
                   {"health_columns", string_list(s.health_columns)},
                   {"confidential_columns", string_list(s.confidential_columns)},
                   {"matches", matches}};
  }
  return {{"path", p.path},
          {"format", p.format ? Json(to_string(*p.format)) : Json(nullptr)},
          {"byte_size", optional_json(p.byte_size)},
          {"size_bucket", optional_json(p.size_bucket_label())},
          {"structure", p.structure ? Json(to_string(*p.structure)) : Json(nullptr)},
          {"has_schema", optional_json(p.has_schema)},
          {"row_count", optional_json(p.row_count)},
          {"error_rows", p.error_rows},
          {"duplicate_row_fraction", optional_json(p.duplicate_row_fraction)},
          {"granularity", to_string(p.granularity)},
          {"time_series", optional_json(p.time_series)},
          {"primary_types_only", optional_json(p.primary_types_only)},
          {"instances_similar", optional_json(p.instances_similar)},
          {"sampled", p.sampled},
          {"fields", fields},
          {"sensitivity", sensitivity},
          {"warnings", string_list(p.warnings)}};
}

DatasetProfile dataset_profile_from_json(const Json& j) {
  DatasetProfile p;
  p.path = str(j, "path");
  auto opt_bool = [&](const char* key) -> std::optional<bool> {
    const Json& v = member(j, key);
    if (v.is_null()) return std::nullopt;
    return boolean(j, key);
  };
  auto opt_uint = [&](const char* key) -> std::optional<std::uint64_t> {
    if (member(j, key).is_null()) return std::nullopt;
    return uint(j, key);
  };
  if (!member(j, "format").is_null()) {
    p.format = parse_detected_format(str(j, "format"));
    if (!p.format) bad("format", "unknown format");
  }
  p.byte_size = opt_uint("byte_size");
  if (!member(j, "structure").is_null()) {
    const std::string s = str(j, "structure");
    for (auto c : {StructureClass::structured, StructureClass::semi_structured, StructureClass::unstructured}) {
      if (s == to_string(c)) p.structure = c;
    }
    if (!p.structure) bad("structure", "unknown structure class");
  }
  p.has_schema = opt_bool("has_schema");
  p.row_count = opt_uint("row_count");
  p.error_rows = uint(j, "error_rows");
  if (!member(j, "duplicate_row_fraction").is_null()) p.duplicate_row_fraction = rat(j, "duplicate_row_fraction");
  const std::string g = str(j, "granularity");
  p.granularity = g == "aggregate" ? Granularity::aggregate
                  : g == "individual" ? Granularity::individual
                                      : Granularity::unknown;
  p.time_series = opt_bool("time_series");
  p.primary_types_only = opt_bool("primary_types_only");
  p.instances_similar = opt_bool("instances_similar");
  p.sampled = boolean(j, "sampled");
  for (const auto& f : array(j, "fields")) {
    p.fields.push_back(FieldInfo{str(f, "name"), field_type(str(f, "type")), uint(f, "missing"), rat(f, "completeness")});
  }
  const Json& s = member(j, "sensitivity");
  if (!s.is_null()) {
    SensitivityFlags flags;
    flags.pii_columns = strings(s, "pii_columns");
    flags.protected_columns = strings(s, "protected_columns");
    flags.financial_columns = strings(s, "financial_columns");
    flags.health_columns = strings(s, "health_columns");
    flags.confidential_columns = strings(s, "confidential_columns");
    for (const auto& m : array(s, "matches")) {
      SensitivityMatch match;
      match.rule_id = str(m, "rule_id");
      auto c = parse_sensitivity_category(str(m, "category"));
      if (!c) bad("category", "unknown sensitivity category");
      match.category = *c;
      match.column = str(m, "column");
      match.by_name = boolean(m, "by_name");
      match.by_value = boolean(m, "by_value");
      match.confidence = rat(m, "confidence");
      match.evidence = str(m, "evidence");
      flags.matches.push_back(std::move(match));
    }
    p.sensitivity = std::move(flags);
  }
  p.warnings = strings(j, "warnings");
  return p;
}

Json to_json(const DistributionTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json counts = Json::array();
    for (const auto& [v, n] : r.counts) counts.push_back({{"value", v}, {"count", n}});
    rows.push_back(
        {{"dimension", r.dimension}, {"counts", counts}, {"observed", r.observed}, {"missing", r.missing}});
  }
  return {{"total", t.total}, {"dimensions", rows}};
}

DistributionTable distribution_table_from_json(const Json& j) {
  DistributionTable t;
  t.total = uint(j, "total");
  for (const auto& r : array(j, "dimensions")) {
    DistributionRow row;
    row.dimension = str(r, "dimension");
    for (const auto& c : array(r, "counts")) row.counts[str(c, "value")] = uint(c, "count");
    row.observed = uint(r, "observed");
    row.missing = uint(r, "missing");
    t.rows.push_back(std::move(row));
  }
  return t;
}

Json to_json(const ScoreRule& rule) {
  Json scores = Json::array();
  for (const auto& [label, s] : rule.map) scores.push_back({{"value", label}, {"score", to_json(s)}});
  return {{"scores", scores}, {"numeric_passthrough", rule.numeric_passthrough}};
}

Json to_json(const RankPrior& prior) {
  Json dims = Json::array();
  for (const auto& d : prior.dimensions) {
    dims.push_back({{"dimension", d.dimension},
                    {"order", string_list(d.order)},
                    {"provenance", to_string(d.provenance)},
                    {"scores", to_json(prior_to_scores(d))["scores"]}});
  }
  return {{"dimensions", dims}};
}

Json to_json(const Catalog& catalog) {
  const auto& v = catalog.version();
  Json facets = Json::array();
  for (const auto& f : catalog.facets()) {
    facets.push_back({{"id", f.id},
                      {"title", f.title},
                      {"description", f.description},
                      {"questions", string_list(f.question_ids)},
                      {"canonical", f.canonical}});
  }
  Json questions = Json::array();
  for (const auto& q : catalog.questions()) {
    Json j{{"id", q.id},
           {"facet", q.facet_id},
           {"prompt", q.prompt},
           {"kind", to_string(q.kind)},
           {"values", string_list(q.allowed_values)},
           {"scores", to_json(q.score_rule)["scores"]},
           {"numeric_passthrough", q.score_rule.numeric_passthrough},
           {"dont_know_allowed", q.dont_know_allowed},
           {"applicability", q.applicability},
           {"low_confidence", q.low_confidence},
           {"canonical", q.canonical}};
    if (q.exclusivity_group) j["exclusivity_group"] = *q.exclusivity_group;
    questions.push_back(std::move(j));
  }
  return {{"version", v.semver},
          {"tag", v.tag()},
          {"checksum", v.checksum},
          {"extensions", string_list(v.extensions)},
          {"facets", facets},
          {"questions", questions}};
}

}  // namespace dataworth
