// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dataworth Authors

#include "dataworth/profiler.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <random>
#include <regex>
#include <set>
#include <unordered_set>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <json.hpp>

#include "csv_reader.hpp"
#include "dataworth/errors.hpp"
#include "yaml_util.hpp"

namespace dataworth {

namespace {

using Row = std::vector<std::string>;

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_missing(std::string_view cell) {
  const std::string v = lower(trim(cell));
  return v.empty() || v == "na" || v == "n/a" || v == "null" || v == "nan";
}

const std::regex& integer_re() {
  static const std::regex re(R"([+-]?[0-9]+)");
  return re;
}
const std::regex& number_re() {
  static const std::regex re(R"([+-]?([0-9]+\.?[0-9]*|\.[0-9]+)([eE][+-]?[0-9]+)?)");
  return re;
}
const std::regex& iso_date_re() {
  static const std::regex re(
      R"([0-9]{4}-[0-9]{2}-[0-9]{2}([T ][0-9]{2}:[0-9]{2}(:[0-9]{2}(\.[0-9]+)?)?(Z|[+-][0-9]{2}:?[0-9]{2})?)?)");
  return re;
}
const std::regex& other_date_re() {
  static const std::regex re(R"([0-9]{1,2}/[0-9]{1,2}/[0-9]{4}|[0-9]{4}/[0-9]{2}/[0-9]{2})");
  return re;
}

bool is_nested(std::string_view v) {
  if (v.empty() || (v.front() != '{' && v.front() != '[')) return false;
  return nlohmann::json::accept(v);
}

FieldType cell_type(std::string_view raw) {
  if (is_missing(raw)) return FieldType::empty;
  const std::string v(trim(raw));
  const std::string l = lower(v);
  if (l == "true" || l == "false" || l == "yes" || l == "no") return FieldType::boolean;
  if (std::regex_match(v, integer_re())) return FieldType::integer;
  if (std::regex_match(v, number_re())) return FieldType::number;
  if (std::regex_match(v, iso_date_re()) || std::regex_match(v, other_date_re())) return FieldType::date;
  if (is_nested(v)) return FieldType::nested;
  return FieldType::string;
}

/// Least general type covering both.
FieldType widen(FieldType a, FieldType b) {
  if (a == FieldType::empty) return b;
  if (b == FieldType::empty) return a;
  if (a == b) return a;
  if ((a == FieldType::integer && b == FieldType::number) || (a == FieldType::number && b == FieldType::integer)) {
    return FieldType::number;
  }
  if (a == FieldType::nested || b == FieldType::nested) return FieldType::nested;
  return FieldType::string;
}

std::string normalize_name(std::string_view name) {
  std::string out;
  bool sep = false;
  for (char c : trim(name)) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      if (sep && !out.empty()) out.push_back('_');
      sep = false;
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else {
      sep = true;
    }
  }
  return out;
}

bool identifier_like(std::string_view s) {
  s = trim(s);
  if (s.empty() || s.size() > 64) return false;
  if (!std::isalpha(static_cast<unsigned char>(s.front())) && s.front() != '_') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ' ' || c == '-' || c == '.' || c == '(' ||
           c == ')' || c == '/';
  });
}

std::uint64_t fnv1a(const Row& row) {
  std::uint64_t h = 1469598103934665603ull;
  for (const auto& cell : row) {
    for (unsigned char c : cell) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0x1f;
    h *= 1099511628211ull;
  }
  return h;
}

std::string mask(std::string_view v) {
  std::string out(v.substr(0, std::min<std::size_t>(v.size(), 32)));
  for (std::size_t i = 1; i + 1 < out.size(); ++i) {
    if (std::isalnum(static_cast<unsigned char>(out[i]))) out[i] = '*';
  }
  return out;
}

// ---------------------------------------------------------------------------
// One streaming pass over a table: counts, hashes, bounded sample.

enum class HeaderMode { detect, present };

class TableScanner {
 public:
  TableScanner(const ProfileOptions& options, HeaderMode mode)
      : options_(options), mode_(mode), rng_(options.seed) {}

  void feed(Row row, bool malformed = false) {
    if (!have_first_) {
      have_first_ = true;
      first_ = std::move(row);
      first_malformed_ = malformed;
      width_ = first_.size();
      missing_body_.assign(width_, 0);
      first_hash_ = fnv1a(first_);
      return;
    }
    ++body_rows_;
    if (malformed || row.size() != width_) ++error_rows_;
    for (std::size_t c = 0; c < row.size() && c < width_; ++c) {
      if (is_missing(row[c])) ++missing_body_[c];
    }
    for (std::size_t c = row.size(); c < width_; ++c) ++missing_body_[c];
    if (!hashes_.insert(fnv1a(row)).second) ++duplicate_body_;
    const std::uint64_t index = body_rows_ - 1;
    if (head_.size() < options_.sample_rows) {
      head_.push_back(std::move(row));
    } else if (options_.reservoir_rows > 0) {
      const std::uint64_t seen = index - options_.sample_rows;
      if (reservoir_.size() < options_.reservoir_rows) {
        reservoir_.push_back(std::move(row));
      } else {
        std::uniform_int_distribution<std::uint64_t> pick(0, seen);
        const std::uint64_t j = pick(rng_);
        if (j < reservoir_.size()) reservoir_[j] = std::move(row);
      }
    }
  }

  struct Result {
    bool has_header = false;
    std::vector<FieldInfo> fields;
    std::uint64_t rows = 0;
    std::uint64_t error_rows = 0;
    std::uint64_t duplicate_rows = 0;
    bool sampled = false;
    /// Data rows in file order (leading sample) followed by reservoir rows.
    std::vector<const Row*> sample;
    std::size_t head_count = 0;
  };

  Result finish() {
    Result r;
    if (!have_first_) return r;
    r.has_header = mode_ == HeaderMode::present || detect_header();
    const bool first_is_data = !r.has_header;

    r.rows = body_rows_ + (first_is_data ? 1 : 0);
    r.error_rows = error_rows_ + (first_is_data && first_malformed_ ? 1 : 0);
    r.duplicate_rows = duplicate_body_;
    if (first_is_data && hashes_.count(first_hash_)) ++r.duplicate_rows;
    r.sampled = body_rows_ > options_.sample_rows + options_.reservoir_rows;

    if (first_is_data) r.sample.push_back(&first_);
    for (const auto& row : head_) r.sample.push_back(&row);
    r.head_count = r.sample.size();
    for (const auto& row : reservoir_) r.sample.push_back(&row);

    for (std::size_t c = 0; c < width_; ++c) {
      FieldInfo f;
      f.name = r.has_header ? std::string(trim(first_[c])) : "column_" + std::to_string(c + 1);
      f.missing = missing_body_[c] + (first_is_data && is_missing(first_[c]) ? 1 : 0);
      for (const Row* row : r.sample) {
        if (c < row->size()) f.type = widen(f.type, cell_type((*row)[c]));
      }
      f.completeness = r.rows == 0 ? Rational(1)
                                   : Rational(1) - Rational(static_cast<std::int64_t>(f.missing),
                                                            static_cast<std::int64_t>(r.rows));
      r.fields.push_back(std::move(f));
    }
    return r;
  }

 private:
  /// Header when the first row contrasts with the body: text over typed
  /// columns, or fresh identifier-like labels over text columns.
  bool detect_header() const {
    if (head_.empty()) {
      return !first_.empty() && std::all_of(first_.begin(), first_.end(), [](const std::string& c) {
               return cell_type(c) == FieldType::string && identifier_like(c);
             });
    }
    int score = 0;
    for (std::size_t c = 0; c < width_; ++c) {
      FieldType body = FieldType::empty;
      std::set<std::string> values;
      for (const auto& row : head_) {
        if (c >= row.size()) continue;
        body = widen(body, cell_type(row[c]));
        if (values.size() < 1000) values.insert(std::string(trim(row[c])));
      }
      const std::string& h = first_[c];
      const FieldType ht = cell_type(h);
      if (ht == FieldType::empty) continue;
      if (body == FieldType::integer || body == FieldType::number || body == FieldType::date ||
          body == FieldType::boolean) {
        score += widen(body, ht) == body ? -2 : 2;
      } else if (body == FieldType::string && ht == FieldType::string) {
        if (identifier_like(h) && !values.count(std::string(trim(h)))) score += 1;
      }
    }
    return score > 0;
  }

  const ProfileOptions& options_;
  HeaderMode mode_;
  std::mt19937_64 rng_;
  bool have_first_ = false;
  Row first_;
  bool first_malformed_ = false;
  std::uint64_t first_hash_ = 0;
  std::size_t width_ = 0;
  std::uint64_t body_rows_ = 0;
  std::uint64_t error_rows_ = 0;
  std::uint64_t duplicate_body_ = 0;
  std::vector<std::uint64_t> missing_body_;
  std::unordered_set<std::uint64_t> hashes_;
  std::vector<Row> head_;
  std::vector<Row> reservoir_;
};

// ---------------------------------------------------------------------------
// Readers per format. Each feeds a TableScanner.

struct TableScan {
  TableScanner::Result result;
  bool records_uniform = true;  // json/xml: every record has the same keys
  bool tabular = false;         // a table could be extracted at all
  std::vector<std::string> warnings;
  std::optional<ParseError> error;  // first content error
};

/// Owns the scanner rows so Result pointers stay valid.
struct ScanHolder {
  std::unique_ptr<TableScanner> scanner;
  TableScan scan;
};

void scan_delimited(const std::filesystem::path& path, char delim, const ProfileOptions& options, ScanHolder& h) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  h.scanner = std::make_unique<TableScanner>(options, HeaderMode::detect);
  detail::CsvReader reader(in, delim);
  Row row;
  bool first = true;
  while (reader.next(row)) {
    if (first && !row.empty() && row[0].rfind("\xEF\xBB\xBF", 0) == 0) row[0].erase(0, 3);
    first = false;
    if (row.size() == 1 && row[0].empty() && !reader.malformed()) continue;  // blank line
    if (reader.malformed() && !h.scan.error) {
      h.scan.error = ParseError(ParseError::Location{path.string(), std::nullopt, reader.error_offset(), {}},
                                "malformed quoting in record starting at byte " +
                                    std::to_string(reader.record_offset()));
      h.scan.warnings.push_back(h.scan.error->what());
    }
    h.scanner->feed(row, reader.malformed());
  }
  if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
  h.scan.result = h.scanner->finish();
  h.scan.tabular = true;
}

/// Flattens records (key -> cell) into rows over the union of keys.
void feed_records(const std::vector<std::vector<std::pair<std::string, std::string>>>& records,
                  const ProfileOptions& options, ScanHolder& h) {
  std::vector<std::string> keys;
  std::set<std::string> seen;
  std::optional<std::set<std::string>> first_keys;
  for (const auto& rec : records) {
    std::set<std::string> these;
    for (const auto& [k, v] : rec) {
      these.insert(k);
      if (seen.insert(k).second) keys.push_back(k);
    }
    if (!first_keys) {
      first_keys = these;
    } else if (*first_keys != these) {
      h.scan.records_uniform = false;
    }
  }
  h.scanner = std::make_unique<TableScanner>(options, HeaderMode::present);
  if (records.empty()) {
    h.scan.result = h.scanner->finish();
    return;
  }
  h.scanner->feed(keys);
  for (const auto& rec : records) {
    Row row(keys.size());
    for (const auto& [k, v] : rec) {
      row[static_cast<std::size_t>(std::find(keys.begin(), keys.end(), k) - keys.begin())] = v;
    }
    h.scanner->feed(std::move(row));
  }
  h.scan.result = h.scanner->finish();
  h.scan.tabular = true;
}

std::string json_cell(const nlohmann::json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void scan_json(const std::filesystem::path& path, const ProfileOptions& options, ScanHolder& h) {
  const std::string text = detail::read_file(path);
  std::vector<nlohmann::json> items;
  try {
    nlohmann::json doc = nlohmann::json::parse(text);
    if (doc.is_array()) {
      items.assign(doc.begin(), doc.end());
    } else if (doc.is_object()) {
      const nlohmann::json* inner = nullptr;
      int arrays = 0;
      for (const auto& [k, v] : doc.items()) {
        if (v.is_array() && !v.empty() && v.front().is_object()) {
          inner = &v;
          ++arrays;
        }
      }
      if (arrays == 1) {
        items.assign(inner->begin(), inner->end());
      } else {
        items.push_back(doc);
      }
    }
  } catch (const nlohmann::json::parse_error& whole) {
    // Newline-delimited records.
    std::size_t pos = 0, offset = 0;
    bool ok = true;
    while (pos < text.size()) {
      std::size_t nl = text.find('\n', pos);
      const std::string_view line =
          trim(std::string_view(text).substr(pos, nl == std::string::npos ? std::string::npos : nl - pos));
      offset = pos;
      pos = nl == std::string::npos ? text.size() : nl + 1;
      if (line.empty()) continue;
      try {
        items.push_back(nlohmann::json::parse(line));
      } catch (const nlohmann::json::parse_error& e) {
        ok = false;
        const std::size_t at = items.empty() ? whole.byte : offset + e.byte;
        h.scan.error = ParseError(ParseError::Location{path.string(), std::nullopt, at > 0 ? at - 1 : 0, {}},
                                  "malformed JSON");
        h.scan.warnings.push_back(h.scan.error->what());
        break;
      }
    }
    if (!ok) items.clear();
  }

  std::vector<std::vector<std::pair<std::string, std::string>>> records;
  for (const auto& item : items) {
    if (!item.is_object()) {
      h.scan.records_uniform = false;
      records.clear();
      break;
    }
    std::vector<std::pair<std::string, std::string>> rec;
    for (const auto& [k, v] : item.items()) rec.emplace_back(k, json_cell(v));
    records.push_back(std::move(rec));
  }
  feed_records(records, options, h);
}

bool xml_meta(const std::string& key) { return key.rfind("<xml", 0) == 0; }

void scan_xml(const std::filesystem::path& path, const ProfileOptions& options, ScanHolder& h) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  try {
    pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error& e) {
    h.scan.error =
        ParseError(ParseError::Location{path.string(), static_cast<std::size_t>(e.line()), std::nullopt, {}},
                   e.message());
    h.scan.warnings.push_back(h.scan.error->what());
    h.scanner = std::make_unique<TableScanner>(options, HeaderMode::present);
    return;
  }
  const pt::ptree* root = nullptr;
  for (const auto& [k, v] : tree) {
    if (!xml_meta(k)) root = &v;
  }
  std::vector<std::vector<std::pair<std::string, std::string>>> records;
  if (root) {
    std::map<std::string, int> tags;
    for (const auto& [k, v] : *root) {
      if (!xml_meta(k)) ++tags[k];
    }
    std::string record_tag;
    int best = 0;
    for (const auto& [k, n] : tags) {
      if (n > best) {
        best = n;
        record_tag = k;
      }
    }
    if (best >= 1) {
      for (const auto& [k, v] : *root) {
        if (k != record_tag) continue;
        std::vector<std::pair<std::string, std::string>> rec;
        for (const auto& [ck, cv] : v) {
          if (ck == "<xmlattr>") {
            for (const auto& [ak, av] : cv) rec.emplace_back("@" + ak, av.data());
          } else if (!xml_meta(ck)) {
            rec.emplace_back(ck, cv.empty() ? cv.data() : "{}");
          }
        }
        if (!rec.empty()) records.push_back(std::move(rec));
      }
    }
  }
  feed_records(records, options, h);
}

void scan(const std::filesystem::path& path, DetectedFormat format, const ProfileOptions& options, ScanHolder& h) {
  switch (format) {
    case DetectedFormat::csv: scan_delimited(path, ',', options, h); break;
    case DetectedFormat::tsv: scan_delimited(path, '\t', options, h); break;
    case DetectedFormat::json: scan_json(path, options, h); break;
    case DetectedFormat::xml: scan_xml(path, options, h); break;
    default: h.scanner = std::make_unique<TableScanner>(options, HeaderMode::present); break;
  }
}

// ---------------------------------------------------------------------------
// Derived judgements over the sample.

SensitivityFlags sensitivity_of(const TableScanner::Result& r, const RulePack& pack) {
  SensitivityFlags flags;
  struct Compiled {
    const SensitivityRule* rule;
    std::optional<std::regex> name, value;
  };
  std::vector<Compiled> rules;
  for (const auto& rule : pack.rules) {
    if (!rule.enabled) continue;
    Compiled c{&rule, std::nullopt, std::nullopt};
    const auto flags_re = std::regex::ECMAScript | std::regex::icase;
    if (!rule.name_pattern.empty()) c.name.emplace(rule.name_pattern, flags_re);
    if (!rule.value_pattern.empty()) c.value.emplace(rule.value_pattern, flags_re);
    rules.push_back(std::move(c));
  }
  auto add = [](std::vector<std::string>& list, const std::string& col) {
    if (std::find(list.begin(), list.end(), col) == list.end()) list.push_back(col);
  };
  for (std::size_t c = 0; c < r.fields.size(); ++c) {
    const FieldInfo& field = r.fields[c];
    const std::string name = r.has_header ? normalize_name(field.name) : std::string();
    for (const auto& rule : rules) {
      SensitivityMatch m;
      m.rule_id = rule.rule->id;
      m.category = rule.rule->category;
      m.column = field.name;
      m.confidence = rule.rule->confidence;
      if (rule.name && !name.empty()) m.by_name = std::regex_search(name, *rule.name);
      if (rule.value && field.type == FieldType::string) {
        std::int64_t seen = 0, hits = 0;
        for (const Row* row : r.sample) {
          if (c >= row->size() || is_missing((*row)[c])) continue;
          ++seen;
          const std::string v(trim((*row)[c]));
          if (std::regex_match(v, *rule.value)) {
            if (m.evidence.empty()) m.evidence = mask(v);
            ++hits;
          }
        }
        m.by_value = seen > 0 && Rational(hits, seen) >= rule.rule->value_threshold;
        if (!m.by_value) m.evidence.clear();
      }
      if (!m.by_name && !m.by_value) continue;
      switch (m.category) {
        case SensitivityCategory::pii: add(flags.pii_columns, m.column); break;
        case SensitivityCategory::protected_attribute: add(flags.protected_columns, m.column); break;
        case SensitivityCategory::financial: add(flags.financial_columns, m.column); break;
        case SensitivityCategory::health: add(flags.health_columns, m.column); break;
        case SensitivityCategory::confidential: add(flags.confidential_columns, m.column); break;
      }
      flags.matches.push_back(std::move(m));
    }
  }
  return flags;
}

bool time_series_of(const TableScanner::Result& r) {
  for (std::size_t c = 0; c < r.fields.size(); ++c) {
    if (r.fields[c].type != FieldType::date) continue;
    std::vector<std::string> values;
    for (std::size_t i = 0; i < r.head_count; ++i) {
      const Row& row = *r.sample[i];
      if (c < row.size() && !is_missing(row[c])) values.emplace_back(trim(row[c]));
    }
    if (values.empty() || !std::all_of(values.begin(), values.end(), [](const std::string& v) {
          return std::regex_match(v, iso_date_re());
        })) {
      continue;
    }
    const std::set<std::string> distinct(values.begin(), values.end());
    if (distinct.size() < 3) continue;
    if (std::is_sorted(values.begin(), values.end()) || std::is_sorted(values.rbegin(), values.rend())) return true;
  }
  return false;
}

Granularity granularity_of(const TableScanner::Result& r) {
  if (!r.has_header || r.sample.empty()) return Granularity::unknown;
  static const std::regex id_re(R"((^|_)(id|uuid|guid|key|ssn|email)$)");
  static const std::regex agg_re(
      R"((^|_)(total|totals|count|counts|sum|rate|rates|avg|average|mean|median|percent|percentage|pct|share|number|num|no)(_|$))");
  auto distinct_fraction = [&](std::size_t c) {
    std::set<std::string> values;
    std::size_t n = 0;
    for (const Row* row : r.sample) {
      if (c >= row->size() || is_missing((*row)[c])) continue;
      ++n;
      values.insert(std::string(trim((*row)[c])));
    }
    return n == 0 ? Rational(0) : Rational(static_cast<std::int64_t>(values.size()), static_cast<std::int64_t>(n));
  };
  for (std::size_t c = 0; c < r.fields.size(); ++c) {
    const std::string name = normalize_name(r.fields[c].name);
    if (std::regex_search(name, id_re) && !std::regex_search(name, agg_re) &&
        distinct_fraction(c) >= Rational(19, 20)) {
      return Granularity::individual;
    }
  }
  bool has_measure = false, has_category_key = false;
  for (std::size_t c = 0; c < r.fields.size(); ++c) {
    const std::string name = normalize_name(r.fields[c].name);
    if (std::regex_search(name, agg_re)) has_measure = true;
    if (r.fields[c].type == FieldType::string && distinct_fraction(c) == Rational(1)) has_category_key = true;
  }
  if (has_measure && has_category_key) return Granularity::aggregate;
  return Granularity::unknown;
}

}  // namespace

SchemaInfo infer_schema(const std::filesystem::path& path, DetectedFormat format, const ProfileOptions& options) {
  ScanHolder h;
  scan(path, format, options, h);
  if (h.scan.error) throw *h.scan.error;
  SchemaInfo s;
  if (!h.scan.tabular) return s;
  s.has_schema = h.scan.result.has_header && h.scan.records_uniform;
  s.fields = h.scan.result.fields;
  return s;
}

QualityScan quality_scan(const std::filesystem::path& path, DetectedFormat format, const ProfileOptions& options) {
  ScanHolder h;
  scan(path, format, options, h);
  QualityScan q;
  const auto& r = h.scan.result;
  q.rows = r.rows;
  q.error_rows = r.error_rows;
  q.duplicate_rows = r.duplicate_rows;
  q.duplicate_row_fraction =
      r.rows == 0 ? Rational(0)
                  : Rational(static_cast<std::int64_t>(r.duplicate_rows), static_cast<std::int64_t>(r.rows));
  q.fields = r.fields;
  return q;
}

SensitivityFlags scan_sensitivity(const std::filesystem::path& path, DetectedFormat format, const RulePack& rulepack,
                                  const ProfileOptions& options) {
  ScanHolder h;
  scan(path, format, options, h);
  return sensitivity_of(h.scan.result, rulepack);
}

DatasetProfile profile_file(const std::filesystem::path& path, const ProfileOptions& options) {
  DatasetProfile p;
  p.path = path.string();
  std::error_code ec;
  const auto size = std::filesystem::file_size(path, ec);
  if (ec) throw IoError("cannot stat '" + path.string() + "': " + ec.message());
  p.byte_size = size;
  p.format = detect_format(path);
  p.structure = classify_structure(*p.format);
  if (*p.structure == StructureClass::unstructured) return p;

  ScanHolder h;
  scan(path, *p.format, options, h);
  p.warnings = h.scan.warnings;
  const auto& r = h.scan.result;
  if (!h.scan.tabular) {
    if (!h.scan.error) p.has_schema = false;
    return p;
  }
  p.has_schema = r.has_header && h.scan.records_uniform;
  p.fields = r.fields;
  p.row_count = r.rows;
  p.error_rows = r.error_rows;
  p.sampled = r.sampled;
  p.duplicate_row_fraction =
      r.rows == 0 ? Rational(0)
                  : Rational(static_cast<std::int64_t>(r.duplicate_rows), static_cast<std::int64_t>(r.rows));
  if (r.rows == 0) return p;
  p.sensitivity = sensitivity_of(r, options.rulepack);
  p.time_series = time_series_of(r);
  p.primary_types_only = std::none_of(r.fields.begin(), r.fields.end(),
                                      [](const FieldInfo& f) { return f.type == FieldType::nested; });
  p.instances_similar = r.error_rows == 0 && h.scan.records_uniform;
  p.granularity = granularity_of(r);
  return p;
}

const std::vector<std::string>& auto_answerable_questions() {
  static const std::vector<std::string> ids = {
      "data_layout.structure",        "data_volume.size",          "format.file_format",
      "format.schema",                "composition.primary_types", "composition.instances_similar",
      "granularity.aggregate",        "sensitivity.confidential_free", "sensitivity.pii_free",
      "sensitivity.protective_variables", "quality.fields_complete", "quality.duplicates",
      "statistics.time_series"};
  return ids;
}

ResponseSet auto_fill(const DatasetProfile& p, const Catalog& catalog) {
  ResponseSet s;
  s.dataset_id = p.path.empty() ? std::string() : std::filesystem::path(p.path).stem().string();
  s.catalog_version = catalog.version().tag();
  auto put = [&](const char* id, std::string label, std::string note = {}) {
    if (!catalog.find(id)) return;
    s.set(Response{id, ResponseValue::of_label(std::move(label)), Provenance::auto_profiler, std::move(note)});
  };
  auto yn = [](bool b) { return std::string(b ? "Y" : "N"); };

  if (p.structure) {
    static const char* labels[] = {"Structured", "Semi-structured", "Unstructured"};
    put("data_layout.structure", labels[static_cast<int>(*p.structure)]);
  }
  if (p.byte_size) put("data_volume.size", volume_bucket_label(*p.byte_size), std::to_string(*p.byte_size) + " bytes");
  if (p.format) put("format.file_format", to_string(*p.format));
  if (p.has_schema) put("format.schema", yn(*p.has_schema));
  if (p.primary_types_only) put("composition.primary_types", yn(*p.primary_types_only));
  if (p.instances_similar) put("composition.instances_similar", yn(*p.instances_similar));
  if (p.granularity != Granularity::unknown) put("granularity.aggregate", yn(p.granularity == Granularity::aggregate));
  if (p.sensitivity) {
    const SensitivityFlags& f = *p.sensitivity;
    auto cols = [](const std::vector<std::string>& v) {
      std::string out;
      for (const auto& c : v) out += (out.empty() ? "" : ", ") + c;
      return out;
    };
    put("sensitivity.confidential_free", yn(f.confidential_columns.empty()), cols(f.confidential_columns));
    put("sensitivity.pii_free", yn(f.pii_columns.empty()), cols(f.pii_columns));
    put("sensitivity.protective_variables", yn(!f.protected_columns.empty()), cols(f.protected_columns));
  }
  if (p.row_count && *p.row_count > 0) {
    const bool complete = std::all_of(p.fields.begin(), p.fields.end(),
                                      [](const FieldInfo& f) { return f.completeness == Rational(1); });
    put("quality.fields_complete", yn(complete));
    if (p.duplicate_row_fraction) put("quality.duplicates", yn(!p.duplicate_row_fraction->is_zero()));
  }
  if (p.time_series) put("statistics.time_series", yn(*p.time_series));
  if (!s.responses.empty()) s.finalize_omitted(catalog);
  return s;
}

}  // namespace dataworth
