// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dataworth Authors

#include "dataworth/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <set>

#include <openssl/evp.h>

#include "catalog_internal.hpp"
#include "dataworth/errors.hpp"
#include "yaml_util.hpp"

namespace dataworth {

const char* to_string(ResponseKind kind) {
  switch (kind) {
    case ResponseKind::binary: return "binary";
    case ResponseKind::categorical: return "categorical";
    case ResponseKind::numeric_unit: return "numeric_unit";
    case ResponseKind::categorical_or_numeric: return "categorical_or_numeric";
  }
  return "binary";
}

std::optional<ResponseKind> parse_response_kind(std::string_view text) {
  if (text == "binary") return ResponseKind::binary;
  if (text == "categorical") return ResponseKind::categorical;
  if (text == "numeric_unit") return ResponseKind::numeric_unit;
  if (text == "categorical_or_numeric") return ResponseKind::categorical_or_numeric;
  return std::nullopt;
}

std::string normalize_token(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (unsigned char c : text) {
    if (std::isalnum(c)) out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

std::string normalize_prompt(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (unsigned char c : text) {
    if (std::isalnum(c)) {
      if (pending_space && !out.empty()) out.push_back(' ');
      pending_space = false;
      out.push_back(static_cast<char>(std::tolower(c)));
    } else if (std::isspace(c) || c == '/' || c == '-') {
      pending_space = true;
    }
  }
  return out;
}

std::optional<Rational> ScoreRule::score_of(std::string_view label) const {
  for (const auto& [l, s] : map) {
    if (l == label) return s;
  }
  return std::nullopt;
}

std::optional<std::string> QuestionSpec::match_label(std::string_view response) const {
  for (const auto& v : allowed_values) {
    if (v == response) return v;
  }
  const std::string key = normalize_token(response);
  if (key.empty()) return std::nullopt;
  if (kind == ResponseKind::binary) {
    if (key == "y" || key == "yes") return std::string("Y");
    if (key == "n" || key == "no") return std::string("N");
  }
  for (const auto& v : allowed_values) {
    if (normalize_token(v) == key) return v;
  }
  for (const auto& [alias, label] : value_aliases) {
    if (normalize_token(alias) == key) return label;
  }
  return std::nullopt;
}

std::string CatalogVersion::tag() const {
  if (extensions.empty()) return semver;
  std::vector<std::string> ids = extensions;
  std::sort(ids.begin(), ids.end());
  std::string joined;
  for (const auto& id : ids) joined += id + "\n";
  return semver + "+ext." + detail::sha256_hex(joined).substr(0, 8);
}

namespace detail {

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::internal, "sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Catalog

struct Catalog::Data {
  std::vector<FacetSpec> facets;
  std::vector<QuestionSpec> questions;
  std::unordered_map<std::string, std::size_t> by_id;
  std::unordered_map<std::string, std::size_t> by_prompt;
  CatalogVersion version;
};

namespace {

ParseError::Location at(const CatalogDocument& doc, const std::string& qid, std::string field) {
  ParseError::Location w{doc.origin, std::nullopt, std::nullopt, std::move(field)};
  if (auto it = doc.question_lines.find(qid); it != doc.question_lines.end()) w.line = it->second;
  return w;
}

std::string definition_site(const QuestionSpec& q, const CatalogDocument* doc) {
  std::string site = q.origin.empty() ? std::string("<unknown>") : q.origin;
  if (doc) {
    if (auto it = doc->question_lines.find(q.id); it != doc->question_lines.end()) {
      site += ":" + std::to_string(it->second);
    }
  }
  return site;
}

/// Checks the per-question invariants and fills derived fields.
void check_question(QuestionSpec& q, const CatalogDocument& doc) {
  const std::string field = "questions[" + q.id + "]";
  if (q.id.empty()) throw ParseError(at(doc, q.id, field + ".id"), "empty question id");
  if (q.id.rfind(q.facet_id + ".", 0) != 0) {
    throw ParseError(at(doc, q.id, field + ".id"), "question id must be prefixed by its facet id '" + q.facet_id + ".'");
  }
  switch (q.kind) {
    case ResponseKind::binary:
      if (q.allowed_values.empty()) q.allowed_values = {"Y", "N"};
      if (q.allowed_values != std::vector<std::string>{"Y", "N"}) {
        throw ParseError(at(doc, q.id, field + ".values"), "binary questions take exactly the values [Y, N]");
      }
      if (q.score_rule.map.empty()) q.score_rule.map = {{"Y", Rational(1)}, {"N", Rational(0)}};
      q.score_rule.numeric_passthrough = false;
      break;
    case ResponseKind::categorical:
      q.score_rule.numeric_passthrough = false;
      break;
    case ResponseKind::numeric_unit:
      if (!q.allowed_values.empty() || !q.score_rule.map.empty()) {
        throw ParseError(at(doc, q.id, field + ".values"), "numeric_unit questions take no labels");
      }
      q.score_rule.numeric_passthrough = true;
      break;
    case ResponseKind::categorical_or_numeric:
      q.score_rule.numeric_passthrough = true;
      break;
  }
  if ((q.kind == ResponseKind::categorical || q.kind == ResponseKind::categorical_or_numeric) &&
      q.allowed_values.empty()) {
    throw ParseError(at(doc, q.id, field + ".values"), "categorical questions need at least one value");
  }
  std::set<std::string> seen;
  for (const auto& v : q.allowed_values) {
    if (v == kDontKnow || v == kNotApplicable) {
      throw ParseError(at(doc, q.id, field + ".values"), "'" + v + "' is reserved and always allowed");
    }
    if (!seen.insert(v).second) throw ParseError(at(doc, q.id, field + ".values"), "duplicate value '" + v + "'");
  }
  // Exactly one score per label, in value order.
  std::vector<std::pair<std::string, Rational>> ordered;
  for (const auto& v : q.allowed_values) {
    auto count = std::count_if(q.score_rule.map.begin(), q.score_rule.map.end(),
                               [&](const auto& e) { return e.first == v; });
    if (count != 1) {
      throw ParseError(at(doc, q.id, field + ".scores"),
                       "value '" + v + "' must have exactly one score (found " + std::to_string(count) + ")");
    }
    ordered.emplace_back(v, *q.score_rule.score_of(v));
  }
  for (const auto& [label, score] : q.score_rule.map) {
    if (!seen.count(label)) {
      throw ParseError(at(doc, q.id, field + ".scores"), "score given for unknown value '" + label + "'");
    }
    if (score < Rational(0) || score > Rational(1)) {
      throw ParseError(at(doc, q.id, field + ".scores." + label), "score " + score.to_string() + " outside [0,1]");
    }
  }
  q.score_rule.map = std::move(ordered);
  q.score_rule.default_binary = q.kind == ResponseKind::binary && *q.score_rule.score_of("Y") == Rational(1) &&
                                *q.score_rule.score_of("N") == Rational(0);
  for (const auto& [alias, label] : q.value_aliases) {
    if (!seen.count(label)) {
      throw ParseError(at(doc, q.id, field + ".value_aliases." + alias), "alias targets unknown value '" + label + "'");
    }
  }
  if (!q.value_parser.empty() && q.value_parser != "byte_size") {
    throw ParseError(at(doc, q.id, field + ".value_parser"), "unknown value parser '" + q.value_parser + "'");
  }
}

void index_prompts(Catalog::Data& d) {
  d.by_id.clear();
  d.by_prompt.clear();
  for (std::size_t i = 0; i < d.questions.size(); ++i) {
    d.by_id.emplace(d.questions[i].id, i);
  }
  for (std::size_t i = 0; i < d.questions.size(); ++i) {
    d.by_prompt.emplace(normalize_prompt(d.questions[i].prompt), i);
  }
  for (std::size_t i = 0; i < d.questions.size(); ++i) {
    for (const auto& alias : d.questions[i].aliases) d.by_prompt.emplace(normalize_prompt(alias), i);
  }
}

/// Reorders questions to facet order.
void order_by_facets(Catalog::Data& d) {
  std::unordered_map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < d.questions.size(); ++i) pos.emplace(d.questions[i].id, i);
  std::vector<QuestionSpec> ordered;
  ordered.reserve(d.questions.size());
  for (const auto& f : d.facets) {
    for (const auto& qid : f.question_ids) ordered.push_back(d.questions[pos.at(qid)]);
  }
  d.questions = std::move(ordered);
}

}  // namespace

Catalog Catalog::from_document(const CatalogDocument& source) {
  CatalogDocument doc = source;
  auto data = std::make_shared<Data>();

  std::unordered_map<std::string, std::size_t> qpos;
  for (std::size_t i = 0; i < doc.questions.size(); ++i) {
    QuestionSpec& q = doc.questions[i];
    if (q.origin.empty()) q.origin = doc.origin;
    if (auto [it, inserted] = qpos.emplace(q.id, i); !inserted) {
      throw DuplicateIdError(q.id, definition_site(doc.questions[it->second], &doc),
                             definition_site(q, &doc));
    }
  }
  std::set<std::string> facet_ids;
  std::unordered_map<std::string, std::string> owner;
  for (const auto& f : doc.facets) {
    if (!facet_ids.insert(f.id).second) throw DuplicateIdError(f.id, doc.origin, doc.origin);
    for (const auto& qid : f.question_ids) {
      auto it = qpos.find(qid);
      if (it == qpos.end()) {
        throw ParseError({doc.origin, std::nullopt, std::nullopt, "facets[" + f.id + "].questions"},
                         "question '" + qid + "' is not defined");
      }
      if (!owner.emplace(qid, f.id).second) {
        throw ParseError(at(doc, qid, "facets[" + f.id + "].questions"),
                         "question '" + qid + "' listed in more than one facet");
      }
      if (doc.questions[it->second].facet_id != f.id) {
        throw ParseError(at(doc, qid, "questions[" + qid + "].facet"),
                         "question '" + qid + "' declares facet '" + doc.questions[it->second].facet_id +
                             "' but is listed under '" + f.id + "'");
      }
    }
  }
  for (auto& q : doc.questions) {
    if (!owner.count(q.id)) {
      throw ParseError(at(doc, q.id, "questions[" + q.id + "].facet"), "question is not listed by any facet");
    }
    check_question(q, doc);
  }

  data->facets = doc.facets;
  data->questions = doc.questions;
  order_by_facets(*data);
  index_prompts(*data);
  data->version.semver = doc.version.empty() ? std::string(kCanonicalVersion) : doc.version;
  for (const auto& q : data->questions) {
    if (!q.canonical) data->version.extensions.push_back(q.id);
  }
  std::string checksum = detail::canonical_checksum_of(data->facets, data->questions);
  if (!doc.checksum.empty() && doc.checksum != checksum) {
    throw ParseError({doc.origin, std::nullopt, std::nullopt, "checksum"},
                     "checksum " + doc.checksum + " does not match canonical content (" + checksum + ")");
  }
  data->version.checksum = std::move(checksum);
  return Catalog(std::move(data));
}

Catalog Catalog::load_canonical() {
  static const Catalog canonical = from_document(detail::builtin_canonical_document());
  return canonical;
}

Catalog Catalog::load_extended(const std::filesystem::path& path) {
  return load_canonical().extended_with(read_catalog_document(path));
}

Catalog Catalog::load_file(const std::filesystem::path& path) {
  return from_document(read_catalog_document(path));
}

Catalog Catalog::extended_with(const CatalogDocument& ext) const {
  CatalogDocument merged;
  merged.origin = ext.origin;
  merged.version = data_->version.semver;
  merged.facets = data_->facets;
  merged.questions = data_->questions;
  merged.question_lines = ext.question_lines;

  for (const auto& f : ext.facets) {
    if (facet(f.id) != nullptr) {
      throw DuplicateIdError(f.id, "catalog facet '" + f.id + "'", ext.origin);
    }
    FacetSpec copy = f;
    copy.canonical = false;
    copy.question_ids.clear();
    merged.facets.push_back(std::move(copy));
  }

  std::set<std::string> ext_ids;
  for (const auto& q : ext.questions) {
    if (const QuestionSpec* existing = find(q.id)) {
      throw DuplicateIdError(q.id, definition_site(*existing, nullptr), definition_site(q, &ext));
    }
    if (!ext_ids.insert(q.id).second) {
      throw DuplicateIdError(q.id, definition_site(q, &ext), definition_site(q, &ext));
    }
    QuestionSpec copy = q;
    copy.canonical = false;
    if (copy.origin.empty()) copy.origin = ext.origin;
    auto fit = std::find_if(merged.facets.begin(), merged.facets.end(),
                            [&](const FacetSpec& f) { return f.id == copy.facet_id; });
    if (fit == merged.facets.end()) {
      throw ParseError(at(ext, q.id, "questions[" + q.id + "].facet"), "unknown facet '" + copy.facet_id + "'");
    }
    fit->question_ids.push_back(copy.id);
    merged.questions.push_back(std::move(copy));
  }
  return from_document(merged);
}

const QuestionSpec* Catalog::find(std::string_view id) const {
  auto it = data_->by_id.find(std::string(id));
  return it == data_->by_id.end() ? nullptr : &data_->questions[it->second];
}

const QuestionSpec& Catalog::lookup(std::string_view id) const {
  if (const QuestionSpec* q = find(id)) return *q;
  throw NotFoundError("question", std::string(id), suggest(id));
}

std::optional<std::string> Catalog::suggest(std::string_view id) const {
  std::optional<std::string> best;
  std::size_t best_distance = 0;
  for (const auto& q : data_->questions) {
    std::size_t d = detail::edit_distance(id, q.id);
    // Prefer a shared suffix: "data_layout.structure" for "structure".
    if (q.id.size() > id.size() && q.id.compare(q.id.size() - id.size(), id.size(), id) == 0) d = 0;
    if (!best || d < best_distance) {
      best = q.id;
      best_distance = d;
    }
  }
  return best;
}

const QuestionSpec* Catalog::resolve(std::string_view id_or_prompt) const {
  if (const QuestionSpec* q = find(id_or_prompt)) return q;
  auto it = data_->by_prompt.find(normalize_prompt(id_or_prompt));
  return it == data_->by_prompt.end() ? nullptr : &data_->questions[it->second];
}

const std::vector<FacetSpec>& Catalog::facets() const { return data_->facets; }

const FacetSpec* Catalog::facet(std::string_view id) const {
  for (const auto& f : data_->facets) {
    if (f.id == id) return &f;
  }
  return nullptr;
}

const std::vector<QuestionSpec>& Catalog::questions() const { return data_->questions; }
const CatalogVersion& Catalog::version() const { return data_->version; }

CatalogDocument examples_extension_pack() { return detail::builtin_examples_extension(); }

// ---------------------------------------------------------------------------
// Sizes

std::string volume_bucket_label(std::uint64_t bytes) {
  constexpr std::uint64_t kMB = 1000ULL * 1000ULL;
  constexpr std::uint64_t kGB = 1000ULL * kMB;
  if (bytes < 500 * kMB) return "under_500MB";
  if (bytes < 10 * kGB) return "500MB_to_10GB";
  if (bytes <= 100 * kGB) return "10GB_to_100GB";
  return "over_100GB";
}

std::optional<std::uint64_t> parse_byte_size(std::string_view text) {
  std::string compact;
  for (unsigned char c : text) {
    if (!std::isspace(c)) compact.push_back(static_cast<char>(c));
  }
  std::size_t split = 0;
  while (split < compact.size() &&
         (std::isdigit(static_cast<unsigned char>(compact[split])) || compact[split] == '.')) {
    ++split;
  }
  if (split == 0) return std::nullopt;
  Rational amount;
  if (!Rational::try_parse(compact.substr(0, split), amount)) return std::nullopt;
  std::string unit = normalize_token(compact.substr(split));
  std::int64_t multiplier = 0;
  if (unit.empty() || unit == "b" || unit == "bytes") multiplier = 1;
  else if (unit == "kb" || unit == "k") multiplier = 1000;
  else if (unit == "mb" || unit == "m") multiplier = 1000LL * 1000;
  else if (unit == "gb" || unit == "g") multiplier = 1000LL * 1000 * 1000;
  else if (unit == "tb" || unit == "t") multiplier = 1000LL * 1000 * 1000 * 1000;
  else return std::nullopt;
  Rational bytes = amount * Rational(multiplier);
  if (bytes.is_negative()) return std::nullopt;
  // Fractional bytes round down.
  auto whole = boost::multiprecision::numerator(bytes.repr()) / boost::multiprecision::denominator(bytes.repr());
  if (whole > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return whole.convert_to<std::uint64_t>();
}

}  // namespace dataworth
