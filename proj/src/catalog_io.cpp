// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dataworth Authors

// Catalog file format. Emission is deterministic so that
// serialize -> parse -> serialize is byte-identical.

#include <yaml-cpp/yaml.h>

#include "catalog_internal.hpp"
#include "dataworth/catalog.hpp"
#include "dataworth/errors.hpp"
#include "yaml_util.hpp"

namespace dataworth {

namespace {

void emit_question(YAML::Emitter& out, const QuestionSpec& q, bool with_canonical_flag) {
  out << YAML::BeginMap;
  out << YAML::Key << "id" << YAML::Value << q.id;
  out << YAML::Key << "facet" << YAML::Value << q.facet_id;
  out << YAML::Key << "prompt" << YAML::Value << q.prompt;
  out << YAML::Key << "kind" << YAML::Value << to_string(q.kind);
  if (!q.allowed_values.empty()) {
    out << YAML::Key << "values" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (const auto& v : q.allowed_values) out << YAML::DoubleQuoted << v;
    out << YAML::EndSeq;
    out << YAML::Key << "scores" << YAML::Value << YAML::BeginMap;
    for (const auto& [label, score] : q.score_rule.map) {
      out << YAML::Key << YAML::DoubleQuoted << label << YAML::Value << score.to_string();
    }
    out << YAML::EndMap;
  }
  out << YAML::Key << "dont_know_allowed" << YAML::Value << (q.dont_know_allowed ? "true" : "false");
  if (q.exclusivity_group) out << YAML::Key << "exclusivity_group" << YAML::Value << *q.exclusivity_group;
  if (!q.applicability.empty()) out << YAML::Key << "applicability" << YAML::Value << q.applicability;
  if (!q.aliases.empty()) {
    out << YAML::Key << "aliases" << YAML::Value << YAML::BeginSeq;
    for (const auto& a : q.aliases) out << YAML::DoubleQuoted << a;
    out << YAML::EndSeq;
  }
  if (!q.value_aliases.empty()) {
    out << YAML::Key << "value_aliases" << YAML::Value << YAML::BeginMap;
    for (const auto& [alias, label] : q.value_aliases) {
      out << YAML::Key << YAML::DoubleQuoted << alias << YAML::Value << YAML::DoubleQuoted << label;
    }
    out << YAML::EndMap;
  }
  if (!q.value_parser.empty()) out << YAML::Key << "value_parser" << YAML::Value << q.value_parser;
  if (q.low_confidence) out << YAML::Key << "low_confidence" << YAML::Value << "true";
  if (with_canonical_flag) out << YAML::Key << "canonical" << YAML::Value << (q.canonical ? "true" : "false");
  out << YAML::EndMap;
}

void emit_facet(YAML::Emitter& out, const FacetSpec& f, const std::vector<std::string>& question_ids) {
  out << YAML::BeginMap;
  out << YAML::Key << "id" << YAML::Value << f.id;
  out << YAML::Key << "title" << YAML::Value << f.title;
  out << YAML::Key << "description" << YAML::Value << f.description;
  if (!f.canonical) out << YAML::Key << "canonical" << YAML::Value << "false";
  out << YAML::Key << "questions" << YAML::Value << YAML::BeginSeq;
  for (const auto& id : question_ids) out << id;
  out << YAML::EndSeq;
  out << YAML::EndMap;
}

std::string emit_document(const std::string* version, const std::string* checksum,
                          const std::vector<FacetSpec>& facets, const std::vector<QuestionSpec>& questions,
                          bool canonical_only) {
  std::unordered_map<std::string, const QuestionSpec*> by_id;
  for (const auto& q : questions) by_id.emplace(q.id, &q);

  YAML::Emitter out;
  out.SetIndent(2);
  out << YAML::BeginMap;
  if (version) out << YAML::Key << "version" << YAML::Value << YAML::DoubleQuoted << *version;
  if (checksum) out << YAML::Key << "checksum" << YAML::Value << *checksum;
  out << YAML::Key << "facets" << YAML::Value << YAML::BeginSeq;
  for (const auto& f : facets) {
    if (canonical_only && !f.canonical) continue;
    std::vector<std::string> ids;
    for (const auto& id : f.question_ids) {
      auto it = by_id.find(id);
      if (canonical_only && it != by_id.end() && !it->second->canonical) continue;
      ids.push_back(id);
    }
    emit_facet(out, f, ids);
  }
  out << YAML::EndSeq;
  out << YAML::Key << "questions" << YAML::Value << YAML::BeginSeq;
  for (const auto& q : questions) {
    if (canonical_only && !q.canonical) continue;
    emit_question(out, q, !canonical_only);
  }
  out << YAML::EndSeq;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

template <typename Fn>
void for_each_in_seq(const YAML::Node& parent, const char* key, const std::string& origin, Fn&& fn) {
  YAML::Node seq = parent[key];
  if (!seq.IsDefined() || seq.IsNull()) return;
  if (!seq.IsSequence()) detail::fail(origin, seq, key, "expected a list");
  for (std::size_t i = 0; i < seq.size(); ++i) fn(seq[i], std::string(key) + "[" + std::to_string(i) + "]");
}

std::vector<std::string> scalar_list(const YAML::Node& node, const std::string& origin, const std::string& field) {
  std::vector<std::string> out;
  if (!node.IsDefined() || node.IsNull()) return out;
  if (!node.IsSequence()) detail::fail(origin, node, field, "expected a list");
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (!node[i].IsScalar()) detail::fail(origin, node[i], field + "[" + std::to_string(i) + "]", "expected a scalar");
    out.push_back(node[i].Scalar());
  }
  return out;
}

}  // namespace

namespace detail {

std::string canonical_checksum_of(const std::vector<FacetSpec>& facets, const std::vector<QuestionSpec>& questions) {
  return "sha256:" + sha256_hex(emit_document(nullptr, nullptr, facets, questions, true));
}

}  // namespace detail

std::string canonical_checksum(const Catalog& catalog) {
  return detail::canonical_checksum_of(catalog.facets(), catalog.questions());
}

std::string serialize_catalog(const Catalog& catalog) {
  return emit_document(&catalog.version().semver, &catalog.version().checksum, catalog.facets(),
                       catalog.questions(), false);
}

CatalogDocument parse_catalog_document(std::string_view text, const std::string& origin) {
  CatalogDocument doc;
  doc.origin = origin;
  YAML::Node root = detail::load_yaml(text, origin);
  if (!root.IsDefined() || root.IsNull()) return doc;
  if (!root.IsMap()) detail::fail(origin, root, "", "catalog document must be a mapping");

  doc.version = detail::optional_scalar(root, "version", origin, "");
  doc.checksum = detail::optional_scalar(root, "checksum", origin, "");

  for_each_in_seq(root, "facets", origin, [&](const YAML::Node& n, const std::string& field) {
    if (!n.IsMap()) detail::fail(origin, n, field, "expected a mapping");
    FacetSpec f;
    f.id = detail::require_scalar(n, "id", origin, field);
    f.title = detail::optional_scalar(n, "title", origin, field, f.id);
    f.description = detail::optional_scalar(n, "description", origin, field);
    f.canonical = detail::optional_bool(n, "canonical", origin, field, true);
    f.question_ids = scalar_list(n["questions"], origin, field + ".questions");
    doc.facets.push_back(std::move(f));
  });

  for_each_in_seq(root, "questions", origin, [&](const YAML::Node& n, const std::string& field) {
    if (!n.IsMap()) detail::fail(origin, n, field, "expected a mapping");
    QuestionSpec q;
    q.origin = origin;
    q.id = detail::require_scalar(n, "id", origin, field);
    doc.question_lines[q.id] = detail::line_of(n);
    q.facet_id = detail::optional_scalar(n, "facet", origin, field);
    if (q.facet_id.empty()) q.facet_id = q.id.substr(0, q.id.find('.'));
    q.prompt = detail::require_scalar(n, "prompt", origin, field);
    std::string kind = detail::require_scalar(n, "kind", origin, field);
    auto parsed_kind = parse_response_kind(kind);
    if (!parsed_kind) detail::fail(origin, n["kind"], field + ".kind", "unknown kind '" + kind + "'");
    q.kind = *parsed_kind;
    q.allowed_values = scalar_list(n["values"], origin, field + ".values");

    YAML::Node scores = n["scores"];
    if (scores.IsDefined() && !scores.IsNull()) {
      if (!scores.IsMap()) detail::fail(origin, scores, field + ".scores", "expected a mapping label -> score");
      for (auto it = scores.begin(); it != scores.end(); ++it) {
        std::string label = it->first.Scalar();
        if (!it->second.IsScalar()) detail::fail(origin, it->second, field + ".scores." + label, "expected a number");
        Rational score;
        if (!Rational::try_parse(it->second.Scalar(), score)) {
          detail::fail(origin, it->second, field + ".scores." + label, "not a number: '" + it->second.Scalar() + "'");
        }
        q.score_rule.map.emplace_back(std::move(label), score);
      }
    }
    q.dont_know_allowed = detail::optional_bool(n, "dont_know_allowed", origin, field, true);
    if (std::string g = detail::optional_scalar(n, "exclusivity_group", origin, field); !g.empty()) {
      q.exclusivity_group = g;
    }
    q.applicability = detail::optional_scalar(n, "applicability", origin, field);
    q.aliases = scalar_list(n["aliases"], origin, field + ".aliases");
    YAML::Node va = n["value_aliases"];
    if (va.IsDefined() && !va.IsNull()) {
      if (!va.IsMap()) detail::fail(origin, va, field + ".value_aliases", "expected a mapping");
      for (auto it = va.begin(); it != va.end(); ++it) {
        q.value_aliases.emplace_back(it->first.Scalar(), it->second.Scalar());
      }
    }
    q.value_parser = detail::optional_scalar(n, "value_parser", origin, field);
    q.low_confidence = detail::optional_bool(n, "low_confidence", origin, field, false);
    q.canonical = detail::optional_bool(n, "canonical", origin, field, false);
    doc.questions.push_back(std::move(q));
  });

  // Extension files may omit facet membership for questions that join an
  // existing facet; full catalog files list every question under its facet.
  return doc;
}

CatalogDocument read_catalog_document(const std::filesystem::path& path) {
  return parse_catalog_document(detail::read_file(path), path.string());
}

}  // namespace dataworth
