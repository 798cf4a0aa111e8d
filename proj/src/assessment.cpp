// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dataworth Authors

#include "dataworth/assessment.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

#include <yaml-cpp/yaml.h>

#include "yaml_util.hpp"

namespace dataworth {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

struct Problem {
  Violation::Code code;
  std::string message;
};

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

std::optional<Problem> check_value(const QuestionSpec& q, const ResponseValue& v) {
  switch (v.kind()) {
    case ResponseValue::Kind::dont_know:
    case ResponseValue::Kind::not_applicable:
      if (!q.dont_know_allowed) {
        return Problem{Violation::Code::dont_know_not_allowed, v.to_string() + " is not allowed for this question"};
      }
      return std::nullopt;
    case ResponseValue::Kind::number:
      if (!q.accepts_numeric()) {
        return Problem{Violation::Code::inadmissible_value,
                       "'" + v.to_string() + "' is not one of: " + join(q.allowed_values, ", ")};
      }
      if (v.number() < Rational(0) || v.number() > Rational(1)) {
        return Problem{Violation::Code::out_of_range, "value " + v.to_string() + " out of [0,1]"};
      }
      return std::nullopt;
    case ResponseValue::Kind::label:
      if (std::find(q.allowed_values.begin(), q.allowed_values.end(), v.label()) != q.allowed_values.end() &&
          q.score_rule.score_of(v.label())) {
        return std::nullopt;
      }
      if (q.kind == ResponseKind::numeric_unit) {
        return Problem{Violation::Code::inadmissible_value, "'" + v.label() + "' is not a number in [0,1]"};
      }
      return Problem{Violation::Code::inadmissible_value,
                     "'" + v.label() + "' is not one of: " + join(q.allowed_values, ", ")};
  }
  return std::nullopt;
}

bool version_matches(const Catalog& catalog, const std::string& recorded) {
  return recorded.empty() || recorded == catalog.version().semver || recorded == catalog.version().tag();
}

}  // namespace

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::manual: return "manual";
    case Provenance::auto_profiler: return "auto_profiler";
    case Provenance::replay_fixture: return "replay_fixture";
  }
  return "manual";
}

std::optional<Provenance> parse_provenance(std::string_view text) {
  if (text == "manual") return Provenance::manual;
  if (text == "auto_profiler") return Provenance::auto_profiler;
  if (text == "replay_fixture") return Provenance::replay_fixture;
  return std::nullopt;
}

ResponseValue ResponseValue::of_label(std::string label) {
  ResponseValue v;
  v.kind_ = Kind::label;
  v.label_ = std::move(label);
  return v;
}

ResponseValue ResponseValue::of_number(Rational number) {
  ResponseValue v;
  v.kind_ = Kind::number;
  v.number_ = std::move(number);
  return v;
}

ResponseValue ResponseValue::dont_know() { return ResponseValue{}; }

ResponseValue ResponseValue::not_applicable() {
  ResponseValue v;
  v.kind_ = Kind::not_applicable;
  return v;
}

std::string ResponseValue::to_string() const {
  switch (kind_) {
    case Kind::label: return label_;
    case Kind::number: return number_.to_string();
    case Kind::dont_know: return std::string(kDontKnow);
    case Kind::not_applicable: return std::string(kNotApplicable);
  }
  return {};
}

ResponseValue interpret_response(const QuestionSpec& q, std::string_view text) {
  const std::string_view t = trim(text);
  for (const auto& v : q.allowed_values) {
    if (v == t) return ResponseValue::of_label(v);
  }
  const std::string key = normalize_token(t);
  if (key == "dontknow" || key == "dk" || key == "unknown") return ResponseValue::dont_know();
  if (key == "notapplicable" || key == "na") return ResponseValue::not_applicable();
  if (q.accepts_numeric()) {
    Rational n;
    if (Rational::try_parse(t, n)) return ResponseValue::of_number(n);
  }
  if (q.value_parser == "byte_size") {
    if (auto bytes = parse_byte_size(t)) return ResponseValue::of_label(volume_bucket_label(*bytes));
  }
  if (auto label = q.match_label(t)) return ResponseValue::of_label(*label);
  return ResponseValue::of_label(std::string(t));
}

std::optional<std::string> admissibility_problem(const QuestionSpec& q, const ResponseValue& v) {
  if (auto p = check_value(q, v)) return p->message;
  return std::nullopt;
}

void ResponseSet::set(Response response) {
  omitted.erase(response.question_id);
  std::string id = response.question_id;
  responses.insert_or_assign(std::move(id), std::move(response));
}

void ResponseSet::finalize_omitted(const Catalog& catalog) {
  for (const auto& q : catalog.questions()) {
    if (!responses.count(q.id)) omitted.insert(q.id);
  }
}

const char* to_string(Violation::Code code) {
  switch (code) {
    case Violation::Code::unknown_question: return "unknown_question";
    case Violation::Code::inadmissible_value: return "inadmissible_value";
    case Violation::Code::out_of_range: return "out_of_range";
    case Violation::Code::dont_know_not_allowed: return "dont_know_not_allowed";
    case Violation::Code::exclusivity_conflict: return "exclusivity_conflict";
    case Violation::Code::answered_and_omitted: return "answered_and_omitted";
  }
  return "unknown";
}

std::string ValidationReport::summary() const {
  if (violations.empty()) return "valid";
  std::string out = std::to_string(violations.size()) + (violations.size() == 1 ? " violation: " : " violations: ");
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) out += "; ";
    out += violations[i].question_id + ": " + violations[i].message;
  }
  return out;
}

InvalidResponsesError::InvalidResponsesError(ValidationReport report)
    : ValidationError(report.summary()), report_(std::move(report)) {}

ValidationReport validate(const Catalog& catalog, const ResponseSet& set) {
  if (!version_matches(catalog, set.catalog_version)) {
    throw ValidationError("catalog version mismatch: responses were recorded against " + set.catalog_version +
                          ", catalog is " + catalog.version().tag());
  }
  ValidationReport report;
  auto unknown = [&](const std::string& id) {
    std::string msg = "unknown question";
    if (auto s = catalog.suggest(id)) msg += "; did you mean '" + *s + "'?";
    report.violations.push_back({Violation::Code::unknown_question, id, msg});
  };

  std::map<std::string, std::vector<std::string>> groups;
  for (const auto& [id, r] : set.responses) {
    const QuestionSpec* q = catalog.find(id);
    if (!q) {
      unknown(id);
      continue;
    }
    if (auto p = check_value(*q, r.value)) report.violations.push_back({p->code, id, p->message});
    if (set.omitted.count(id)) {
      report.violations.push_back({Violation::Code::answered_and_omitted, id, "both answered and omitted"});
    }
    if (q->exclusivity_group && r.value.kind() == ResponseValue::Kind::label) {
      auto score = q->score_rule.score_of(r.value.label());
      if (score && *score > Rational(0)) groups[*q->exclusivity_group].push_back(id);
    }
  }
  for (const auto& id : set.omitted) {
    if (!catalog.find(id)) unknown(id);
  }
  for (const auto& [group, ids] : groups) {
    if (ids.size() < 2) continue;
    for (const auto& id : ids) {
      report.violations.push_back({Violation::Code::exclusivity_conflict, id,
                                   "exclusivity group '" + group + "' has more than one affirmative answer (" +
                                       join(ids, ", ") + ")"});
    }
  }
  for (const auto& q : catalog.questions()) {
    if (q.canonical && !set.responses.count(q.id)) report.unanswered.push_back(q.id);
  }
  return report;
}

MergeResult merge(const Catalog& catalog, const ResponseSet& base, const ResponseSet& overlay) {
  if (!base.dataset_id.empty() && !overlay.dataset_id.empty() && base.dataset_id != overlay.dataset_id) {
    throw ValidationError("cannot merge responses for different datasets ('" + base.dataset_id + "' and '" +
                          overlay.dataset_id + "')");
  }
  if (!base.catalog_version.empty() && !overlay.catalog_version.empty() &&
      base.catalog_version != overlay.catalog_version) {
    throw ValidationError("cannot merge responses recorded against different catalog versions (" +
                          base.catalog_version + " and " + overlay.catalog_version + ")");
  }
  MergeResult out;
  ResponseSet& m = out.merged;
  m.dataset_id = overlay.dataset_id.empty() ? base.dataset_id : overlay.dataset_id;
  m.catalog_version = overlay.catalog_version.empty() ? base.catalog_version : overlay.catalog_version;
  m.responses = base.responses;
  m.omitted = base.omitted;
  for (const auto& [id, r] : overlay.responses) {
    Response next = r;
    auto prev = base.responses.find(id);
    if (next.note.empty() && prev != base.responses.end()) next.note = prev->second.note;
    m.set(std::move(next));
  }
  for (const auto& id : overlay.omitted) {
    if (!m.responses.count(id)) m.omitted.insert(id);
  }
  out.report = validate(catalog, m);
  return out;
}

// ---------------------------------------------------------------------------
// Answers file

std::string write_answers(const ResponseSet& set) {
  YAML::Emitter out;
  out.SetIndent(2);
  out << YAML::BeginMap;
  out << YAML::Key << "dataset" << YAML::Value << YAML::DoubleQuoted << set.dataset_id;
  out << YAML::Key << "catalog_version" << YAML::Value << YAML::DoubleQuoted << set.catalog_version;
  out << YAML::Key << "answers" << YAML::Value << YAML::BeginMap;
  for (const auto& [id, r] : set.responses) {
    out << YAML::Key << id << YAML::Value;
    const std::string text = r.value.to_string();
    if (r.note.empty() && r.provenance == Provenance::manual) {
      out << YAML::DoubleQuoted << text;
      continue;
    }
    out << YAML::BeginMap;
    out << YAML::Key << "value" << YAML::Value << YAML::DoubleQuoted << text;
    if (!r.note.empty()) out << YAML::Key << "note" << YAML::Value << YAML::DoubleQuoted << r.note;
    out << YAML::Key << "provenance" << YAML::Value << to_string(r.provenance);
    out << YAML::EndMap;
  }
  out << YAML::EndMap;
  out << YAML::Key << "omitted" << YAML::Value << YAML::BeginSeq;
  for (const auto& id : set.omitted) out << id;
  out << YAML::EndSeq;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

ResponseSet parse_answers(const Catalog& catalog, std::string_view text, const std::string& origin) {
  using detail::fail;
  YAML::Node root = detail::load_yaml(text, origin);
  ResponseSet set;
  if (!root.IsDefined() || root.IsNull()) return set;
  if (!root.IsMap()) fail(origin, root, "", "expected a mapping at top level");

  set.dataset_id = detail::optional_scalar(root, "dataset", origin, "");
  set.catalog_version = detail::optional_scalar(root, "catalog_version", origin, "");

  YAML::Node answers = root["answers"];
  if (answers.IsDefined() && !answers.IsNull()) {
    if (!answers.IsMap()) fail(origin, answers, "answers", "expected a mapping of question id to value");
    for (const auto& entry : answers) {
      const std::string id = entry.first.Scalar();
      const std::string field = "answers." + id;
      Response r;
      r.question_id = id;
      std::string value_text;
      const YAML::Node& node = entry.second;
      if (node.IsScalar()) {
        value_text = node.Scalar();
      } else if (node.IsMap()) {
        value_text = detail::require_scalar(node, "value", origin, field);
        r.note = detail::optional_scalar(node, "note", origin, field);
        const std::string prov = detail::optional_scalar(node, "provenance", origin, field, "manual");
        auto p = parse_provenance(prov);
        if (!p) fail(origin, node["provenance"], field + ".provenance", "unknown provenance '" + prov + "'");
        r.provenance = *p;
      } else {
        fail(origin, node, field, "expected a value or a mapping with 'value'");
      }
      if (const QuestionSpec* q = catalog.find(id)) {
        r.value = interpret_response(*q, value_text);
      } else {
        r.value = ResponseValue::of_label(value_text);
      }
      if (set.responses.count(id)) fail(origin, entry.first, field, "question answered twice");
      set.responses.emplace(id, std::move(r));
    }
  }

  YAML::Node omitted = root["omitted"];
  if (omitted.IsDefined() && !omitted.IsNull()) {
    if (!omitted.IsSequence()) fail(origin, omitted, "omitted", "expected a list of question ids");
    for (const auto& item : omitted) {
      if (!item.IsScalar()) fail(origin, item, "omitted", "expected a question id");
      set.omitted.insert(item.Scalar());
    }
  }
  for (const auto& q : catalog.questions()) {
    if (!set.responses.count(q.id)) set.omitted.insert(q.id);
  }
  return set;
}

ResponseSet read_answers(const Catalog& catalog, const std::filesystem::path& path) {
  return parse_answers(catalog, detail::read_file(path), path.string());
}

// ---------------------------------------------------------------------------
// Replay fixtures

ReplayFixture parse_replay_table(const Catalog& catalog, std::string_view text, const std::string& origin) {
  ReplayFixture fx;
  fx.catalog = catalog;
  bool extended = false;
  std::map<std::string, std::size_t> seen;

  auto error = [&](std::size_t line, const std::string& field, const std::string& msg) {
    throw ParseError(ParseError::Location{origin, line, std::nullopt, field}, msg);
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool header_done = false;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    std::string_view line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '#') {
      std::string_view body = trim(line.substr(1));
      std::size_t colon = body.find(':');
      if (colon == std::string_view::npos) continue;
      std::string_view key = trim(body.substr(0, colon));
      std::string_view value = trim(body.substr(colon + 1));
      if (key == "dataset") {
        fx.dataset_id = std::string(value);
      } else if (key == "caption") {
        fx.caption = std::string(value);
      } else if (key == "printed_total") {
        if (!Rational::try_parse(value, fx.printed_total)) error(line_no, "printed_total", "not a number");
        fx.has_printed_total = true;
      }
      continue;
    }

    std::vector<std::string_view> cells = split_tabs(raw);
    if (!header_done) {
      header_done = true;
      if (normalize_token(cells[0]) == "facet") continue;
    }
    if (cells.size() != 4) {
      error(line_no, "", "expected 4 tab-separated cells (facet, question, response, score), got " +
                             std::to_string(cells.size()));
    }
    ReplayRow row;
    row.line = line_no;
    row.facet = std::string(trim(cells[0]));
    row.question = std::string(trim(cells[1]));
    row.response = std::string(trim(cells[2]));
    if (!Rational::try_parse(trim(cells[3]), row.printed_score)) {
      error(line_no, "score", "score '" + std::string(trim(cells[3])) + "' is not a number");
    }

    const QuestionSpec* q = fx.catalog.resolve(row.question);
    if (!q && !extended) {
      CatalogDocument pack = examples_extension_pack();
      bool present = !pack.questions.empty() && fx.catalog.find(pack.questions.front().id);
      if (!present) {
        Catalog next = fx.catalog.extended_with(pack);
        if (next.resolve(row.question)) fx.catalog = std::move(next);
      }
      extended = true;
      q = fx.catalog.resolve(row.question);
    }
    if (!q) {
      std::string msg = "unknown question '" + row.question + "'";
      if (auto s = fx.catalog.suggest(row.question)) msg += "; did you mean '" + *s + "'?";
      error(line_no, "question", msg);
    }
    row.question_id = q->id;
    if (auto [it, fresh] = seen.emplace(q->id, line_no); !fresh) {
      error(line_no, "question", "question '" + q->id + "' already given on line " + std::to_string(it->second));
    }

    Response r;
    r.question_id = q->id;
    r.value = interpret_response(*q, row.response);
    r.provenance = Provenance::replay_fixture;
    if (auto problem = admissibility_problem(*q, r.value)) error(line_no, "response", problem.value());
    if (row.printed_score < Rational(0) || row.printed_score > Rational(1)) {
      error(line_no, "score", "score " + row.printed_score.to_string() + " out of [0,1]");
    }
    fx.responses.set(std::move(r));
    fx.expected_scores.emplace(q->id, row.printed_score);
    fx.rows.push_back(std::move(row));
  }

  if (fx.dataset_id.empty()) fx.dataset_id = std::filesystem::path(origin).stem().string();
  fx.responses.dataset_id = fx.dataset_id;
  fx.responses.catalog_version = fx.catalog.version().tag();
  fx.responses.finalize_omitted(fx.catalog);
  return fx;
}

ReplayFixture from_replay_table(const Catalog& catalog, const std::filesystem::path& path) {
  return parse_replay_table(catalog, detail::read_file(path), path.string());
}

std::string write_replay_table(const ReplayFixture& fx) {
  std::ostringstream out;
  out << "# dataset: " << fx.dataset_id << "\n";
  if (!fx.caption.empty()) out << "# caption: " << fx.caption << "\n";
  if (fx.has_printed_total) out << "# printed_total: " << fx.printed_total.to_string() << "\n";
  out << "facet\tquestion\tresponse\tscore\n";
  for (const auto& row : fx.rows) {
    out << row.facet << '\t' << row.question << '\t' << row.response << '\t' << row.printed_score.to_string()
        << "\n";
  }
  return out.str();
}

}  // namespace dataworth
