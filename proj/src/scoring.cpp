// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dataworth Authors

#include "dataworth/scoring.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "catalog_internal.hpp"
#include "yaml_util.hpp"

namespace dataworth {

const char* to_string(AggregationMode mode) {
  return mode == AggregationMode::normalized ? "normalized" : "raw_sum";
}

std::optional<AggregationMode> parse_aggregation_mode(std::string_view text) {
  if (text == "raw_sum" || text == "raw") return AggregationMode::raw_sum;
  if (text == "normalized") return AggregationMode::normalized;
  return std::nullopt;
}

WeightProfile WeightProfile::normalized_equal() {
  WeightProfile p;
  p.mode = AggregationMode::normalized;
  return p;
}

Rational WeightProfile::weight_of(const std::string& question_id) const {
  auto it = weights.find(question_id);
  return it == weights.end() ? default_weight : it->second;
}

std::string WeightProfile::fingerprint() const {
  std::string canon = std::string("mode=") + to_string(mode) + ";default=" + default_weight.to_string() +
                      ";renormalize=" + (renormalize_on_omission ? "1" : "0");
  for (const auto& [id, w] : weights) canon += ";" + id + "=" + w.to_string();
  return detail::sha256_hex(canon).substr(0, 12);
}

void validate_profile(const Catalog& catalog, const WeightProfile& profile) {
  if (profile.default_weight.is_negative()) throw ValidationError("default_weight must not be negative");
  for (const auto& [id, w] : profile.weights) {
    if (!catalog.find(id)) throw NotFoundError("question", id, catalog.suggest(id));
    if (w.is_negative()) throw ValidationError("weight for '" + id + "' must not be negative");
  }
  if (profile.mode == AggregationMode::normalized) {
    Rational sum;
    for (const auto& q : catalog.questions()) sum += profile.weight_of(q.id);
    if (sum.is_zero()) throw ValidationError("normalized profile has no positive weight");
  }
}

std::map<std::string, Rational> resolve_weights(const Catalog& catalog, const WeightProfile& profile) {
  validate_profile(catalog, profile);
  std::map<std::string, Rational> out;
  Rational sum;
  for (const auto& q : catalog.questions()) {
    Rational w = profile.weight_of(q.id);
    sum += w;
    out.emplace(q.id, std::move(w));
  }
  if (profile.mode == AggregationMode::normalized) {
    for (auto& [id, w] : out) w = w / sum;
  }
  return out;
}

WeightProfile parse_weights(std::string_view text, const std::string& origin) {
  using detail::fail;
  YAML::Node root = detail::load_yaml(text, origin);
  WeightProfile p;
  if (!root.IsDefined() || root.IsNull()) return p;
  if (!root.IsMap()) fail(origin, root, "", "expected a mapping at top level");

  const std::string mode = detail::optional_scalar(root, "mode", origin, "", "raw_sum");
  auto m = parse_aggregation_mode(mode);
  if (!m) fail(origin, root["mode"], "mode", "unknown mode '" + mode + "' (expected raw_sum or normalized)");
  p.mode = *m;
  p.renormalize_on_omission = detail::optional_bool(root, "renormalize_on_omission", origin, "", true);

  auto number = [&](const YAML::Node& node, const std::string& field) {
    Rational r;
    if (!node.IsScalar() || !Rational::try_parse(node.Scalar(), r)) fail(origin, node, field, "expected a number");
    return r;
  };
  if (YAML::Node d = root["default_weight"]; d.IsDefined() && !d.IsNull()) {
    p.default_weight = number(d, "default_weight");
  }
  YAML::Node weights = root["weights"];
  if (weights.IsDefined() && !weights.IsNull()) {
    if (!weights.IsMap()) fail(origin, weights, "weights", "expected a mapping of question id to weight");
    for (const auto& entry : weights) {
      const std::string id = entry.first.Scalar();
      p.weights.insert_or_assign(id, number(entry.second, "weights." + id));
    }
  }
  return p;
}

WeightProfile read_weights(const std::filesystem::path& path) {
  return parse_weights(detail::read_file(path), path.string());
}

std::string write_weights(const WeightProfile& p) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "mode" << YAML::Value << to_string(p.mode);
  out << YAML::Key << "default_weight" << YAML::Value << p.default_weight.to_string();
  out << YAML::Key << "renormalize_on_omission" << YAML::Value << (p.renormalize_on_omission ? "true" : "false");
  out << YAML::Key << "weights" << YAML::Value << YAML::BeginMap;
  for (const auto& [id, w] : p.weights) out << YAML::Key << id << YAML::Value << w.to_string();
  out << YAML::EndMap << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

Rational score_response(const QuestionSpec& q, const ResponseValue& v) {
  if (auto problem = admissibility_problem(q, v)) throw ValidationError(q.id + ": " + *problem);
  switch (v.kind()) {
    case ResponseValue::Kind::dont_know:
    case ResponseValue::Kind::not_applicable:
      return Rational(0);
    case ResponseValue::Kind::number:
      return v.number();
    case ResponseValue::Kind::label:
      return *q.score_rule.score_of(v.label());
  }
  return Rational(0);
}

ValueReport compute_value(const Catalog& catalog, const ResponseSet& set, const WeightProfile& profile,
                          const ScoreOverrides* overrides) {
  ValidationReport validation = validate(catalog, set);
  if (!validation.valid()) throw InvalidResponsesError(std::move(validation));
  validate_profile(catalog, profile);

  Rational denominator(1);
  if (profile.mode == AggregationMode::normalized) {
    denominator = Rational(0);
    for (const auto& q : catalog.questions()) {
      if (!profile.renormalize_on_omission || set.responses.count(q.id)) denominator += profile.weight_of(q.id);
    }
  }

  ValueReport r;
  r.dataset_id = set.dataset_id;
  r.catalog_version = catalog.version().tag();
  r.profile_fingerprint = profile.fingerprint();
  r.mode = profile.mode;
  r.omitted = set.omitted.size();

  const auto& questions = catalog.questions();
  std::map<std::string, std::size_t> facet_index;
  for (std::size_t i = 0; i < questions.size(); ++i) {
    const QuestionSpec& q = questions[i];
    auto it = set.responses.find(q.id);
    if (it == set.responses.end()) continue;
    const Response& resp = it->second;

    QuestionScore s;
    s.order = i;
    s.question_id = q.id;
    s.facet_id = q.facet_id;
    s.prompt = q.prompt;
    s.response = resp.value;
    s.provenance = resp.provenance;
    if (overrides) {
      if (auto o = overrides->find(q.id); o != overrides->end()) {
        s.value = o->second;
        s.overridden = true;
      }
    }
    if (!s.overridden) s.value = score_response(q, resp.value);
    s.weight = profile.weight_of(q.id);
    if (profile.mode == AggregationMode::normalized) {
      s.weight = denominator.is_zero() ? Rational(0) : s.weight / denominator;
    }
    s.contribution = s.weight * s.value;
    r.total += s.contribution;

    ++r.answered;
    if (resp.value.kind() == ResponseValue::Kind::dont_know) ++r.dont_know;
    if (resp.value.kind() == ResponseValue::Kind::not_applicable) ++r.not_applicable;

    auto [fi, fresh] = facet_index.emplace(q.facet_id, r.facets.size());
    if (fresh) {
      const FacetSpec* f = catalog.facet(q.facet_id);
      r.facets.push_back(FacetSubtotal{q.facet_id, f ? f->title : q.facet_id, Rational(0), 0});
    }
    r.facets[fi->second].subtotal += s.contribution;
    ++r.facets[fi->second].answered;
    r.questions.push_back(std::move(s));
  }
  return r;
}

ComparisonReport compare(std::vector<ValueReport> reports) {
  if (reports.size() < 2) throw ValidationError("comparison needs at least two datasets");
  const std::string& version = reports.front().catalog_version;
  const std::string& fingerprint = reports.front().profile_fingerprint;
  std::set<std::string> ids;
  for (const auto& r : reports) {
    if (r.catalog_version != version) {
      throw ValidationError("cannot compare reports from different catalog versions (" + version + " and " +
                            r.catalog_version + ")");
    }
    if (r.profile_fingerprint != fingerprint) {
      throw ValidationError("cannot compare reports scored with different weight profiles");
    }
    if (!ids.insert(r.dataset_id).second) throw ValidationError("dataset '" + r.dataset_id + "' listed twice");
  }

  std::stable_sort(reports.begin(), reports.end(), [](const ValueReport& a, const ValueReport& b) {
    if (a.total != b.total) return a.total > b.total;
    return a.dataset_id < b.dataset_id;
  });

  ComparisonReport out;
  out.catalog_version = version;
  out.profile_fingerprint = fingerprint;
  for (const auto& r : reports) out.ranking.emplace_back(r.dataset_id, r.total);
  out.winner = out.ranking.front().first;

  std::map<std::size_t, ComparisonRow> rows;
  for (std::size_t d = 0; d < reports.size(); ++d) {
    for (const auto& s : reports[d].questions) {
      ComparisonRow& row = rows[s.order];
      if (row.cells.empty()) {
        row.question_id = s.question_id;
        row.facet_id = s.facet_id;
        row.order = s.order;
        row.cells.resize(reports.size());
      }
      row.cells[d] = ComparisonCell{s.response.to_string(), s.value};
    }
  }
  for (auto& [order, row] : rows) {
    bool differs = false;
    for (std::size_t d = 1; d < row.cells.size() && !differs; ++d) {
      const auto& a = row.cells[0];
      const auto& b = row.cells[d];
      differs = a.has_value() != b.has_value() || (a && b && a->value != b->value);
    }
    if (differs) out.differences.push_back(std::move(row));
  }
  out.reports = std::move(reports);
  return out;
}

DeltaReport what_if(const Catalog& catalog, const ResponseSet& set, const WeightProfile& profile,
                    const std::vector<Change>& changes, const ScoreOverrides* overrides) {
  ScoreOverrides current = overrides ? *overrides : ScoreOverrides{};
  DeltaReport out;
  out.dataset_id = set.dataset_id;
  out.updated = set;
  out.base_total = compute_value(catalog, set, profile, &current).total;
  Rational running = out.base_total;

  for (const auto& change : changes) {
    const QuestionSpec& q = catalog.lookup(change.question_id);
    ResponseValue value = interpret_response(q, change.value);
    if (auto problem = admissibility_problem(q, value)) throw ValidationError(q.id + ": " + *problem);

    ChangeDelta d;
    d.question_id = q.id;
    if (auto it = out.updated.responses.find(q.id); it != out.updated.responses.end()) {
      d.before = it->second.value;
    }
    d.after = value;
    Response r;
    r.question_id = q.id;
    r.value = std::move(value);
    if (auto it = out.updated.responses.find(q.id); it != out.updated.responses.end()) r.note = it->second.note;
    out.updated.set(std::move(r));
    current.erase(q.id);

    d.total_before = running;
    d.total_after = compute_value(catalog, out.updated, profile, &current).total;
    d.delta = d.total_after - d.total_before;
    running = d.total_after;
    out.changes.push_back(std::move(d));
  }
  out.new_total = running;
  return out;
}

ReplayVerdict replay_check(const ReplayFixture& fx) {
  ReplayVerdict v;
  v.dataset_id = fx.dataset_id;
  v.rows = fx.rows.size();
  v.report = compute_value(fx.catalog, fx.responses, WeightProfile::raw_sum(), &fx.expected_scores);
  v.engine_sum = v.report.total;
  v.printed_total = fx.printed_total;
  v.has_printed_total = fx.has_printed_total;
  v.matches_printed = v.engine_sum == v.printed_total;
  v.catalog_total = compute_value(fx.catalog, fx.responses, WeightProfile::raw_sum()).total;
  for (const auto& row : fx.rows) {
    const QuestionSpec& q = fx.catalog.lookup(row.question_id);
    Rational catalog_score = score_response(q, fx.responses.responses.at(row.question_id).value);
    if (catalog_score != row.printed_score) {
      v.discrepancies.push_back(Discrepancy{row.line, row.question_id, row.response, row.printed_score,
                                            catalog_score});
    }
  }
  return v;
}

}  // namespace dataworth
