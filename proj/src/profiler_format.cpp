// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dataworth Authors

#include <algorithm>
#include <cctype>
#include <fstream>

#include "dataworth/errors.hpp"
#include "dataworth/profiler.hpp"

namespace dataworth {

namespace {

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && s.compare(0, prefix.size(), prefix) == 0;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::optional<DetectedFormat> from_extension(std::string_view ext) {
  const std::string e = lower(ext);
  if (e == ".csv") return DetectedFormat::csv;
  if (e == ".tsv" || e == ".tab") return DetectedFormat::tsv;
  if (e == ".json" || e == ".ndjson" || e == ".jsonl") return DetectedFormat::json;
  if (e == ".xml") return DetectedFormat::xml;
  if (e == ".pdf") return DetectedFormat::pdf;
  if (e == ".gif" || e == ".jpg" || e == ".jpeg") return DetectedFormat::gif_jpg;
  return std::nullopt;
}

/// Delimiter count per line outside quotes, for the first complete lines of
/// the sample.
std::vector<std::size_t> delimiter_counts(std::string_view text, char delim) {
  std::vector<std::size_t> counts;
  std::size_t n = 0;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size() && counts.size() < 50; ++i) {
    const char c = text[i];
    if (c == '"') {
      quoted = !quoted;
    } else if (!quoted && c == delim) {
      ++n;
    } else if (!quoted && c == '\n') {
      counts.push_back(n);
      n = 0;
    }
  }
  // A trailing partial line only counts when the sample is the whole file.
  if (n > 0 && counts.empty()) counts.push_back(n);
  return counts;
}

/// Lines with a consistent, nonzero delimiter count.
bool consistent(const std::vector<std::size_t>& counts) {
  if (counts.empty() || counts.front() == 0) return false;
  return std::all_of(counts.begin(), counts.end(), [&](std::size_t c) { return c == counts.front(); });
}

std::optional<DetectedFormat> sniff_text(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  std::string_view body = text.substr(i);
  if (body.empty()) return std::nullopt;
  if (body.front() == '<') {
    if (starts_with(body, "<?xml") || (body.size() > 1 && (std::isalpha(static_cast<unsigned char>(body[1])) ||
                                                            body[1] == '!'))) {
      return DetectedFormat::xml;
    }
  }
  if (body.front() == '{' || body.front() == '[') return DetectedFormat::json;
  const bool tabs = consistent(delimiter_counts(text, '\t'));
  const bool commas = consistent(delimiter_counts(text, ','));
  if (tabs && !commas) return DetectedFormat::tsv;
  if (commas && !tabs) return DetectedFormat::csv;
  if (tabs && commas) {
    // Both consistent: the more frequent delimiter wins.
    return delimiter_counts(text, '\t').front() >= delimiter_counts(text, ',').front() ? DetectedFormat::tsv
                                                                                       : DetectedFormat::csv;
  }
  return std::nullopt;
}

bool compatible(DetectedFormat ext, std::optional<DetectedFormat> sniffed) {
  return !sniffed || *sniffed == ext;
}

}  // namespace

const char* to_string(DetectedFormat f) {
  switch (f) {
    case DetectedFormat::csv: return "csv";
    case DetectedFormat::tsv: return "tsv";
    case DetectedFormat::json: return "json";
    case DetectedFormat::xml: return "xml";
    case DetectedFormat::pdf: return "pdf";
    case DetectedFormat::gif_jpg: return "gif_jpg";
    case DetectedFormat::other: return "other";
  }
  return "other";
}

std::optional<DetectedFormat> parse_detected_format(std::string_view text) {
  for (auto f : {DetectedFormat::csv, DetectedFormat::tsv, DetectedFormat::json, DetectedFormat::xml,
                 DetectedFormat::pdf, DetectedFormat::gif_jpg, DetectedFormat::other}) {
    if (text == to_string(f)) return f;
  }
  return std::nullopt;
}

const char* to_string(StructureClass s) {
  switch (s) {
    case StructureClass::structured: return "structured";
    case StructureClass::semi_structured: return "semi_structured";
    case StructureClass::unstructured: return "unstructured";
  }
  return "unstructured";
}

const char* to_string(Granularity g) {
  switch (g) {
    case Granularity::aggregate: return "aggregate";
    case Granularity::individual: return "individual";
    case Granularity::unknown: return "unknown";
  }
  return "unknown";
}

const char* to_string(FieldType t) {
  switch (t) {
    case FieldType::empty: return "empty";
    case FieldType::boolean: return "boolean";
    case FieldType::integer: return "integer";
    case FieldType::number: return "number";
    case FieldType::date: return "date";
    case FieldType::string: return "string";
    case FieldType::nested: return "nested";
  }
  return "string";
}

DetectedFormat detect_format(std::string_view head, std::string_view extension) {
  if (starts_with(head, "%PDF-")) return DetectedFormat::pdf;
  if (starts_with(head, "GIF87a") || starts_with(head, "GIF89a")) return DetectedFormat::gif_jpg;
  if (starts_with(head, "\xFF\xD8\xFF")) return DetectedFormat::gif_jpg;
  if (starts_with(head, "\x89PNG") || starts_with(head, "PK\x03\x04")) return DetectedFormat::other;
  if (head.find('\0') != std::string_view::npos) return DetectedFormat::other;

  std::string_view text = head;
  if (starts_with(text, "\xEF\xBB\xBF")) text.remove_prefix(3);
  const auto sniffed = sniff_text(text);
  const auto by_ext = from_extension(extension);
  if (by_ext && *by_ext != DetectedFormat::pdf && *by_ext != DetectedFormat::gif_jpg &&
      compatible(*by_ext, sniffed)) {
    return *by_ext;
  }
  if (sniffed) return *sniffed;
  return DetectedFormat::other;
}

DetectedFormat detect_format(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::string head(8192, '\0');
  in.read(head.data(), static_cast<std::streamsize>(head.size()));
  if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
  head.resize(static_cast<std::size_t>(in.gcount()));
  return detect_format(head, path.extension().string());
}

StructureClass classify_structure(DetectedFormat format) {
  switch (format) {
    case DetectedFormat::csv:
    case DetectedFormat::tsv: return StructureClass::structured;
    case DetectedFormat::json:
    case DetectedFormat::xml: return StructureClass::semi_structured;
    default: return StructureClass::unstructured;
  }
}

Rational size_bucket(std::uint64_t bytes) {
  const QuestionSpec& q = Catalog::load_canonical().lookup("data_volume.size");
  return *q.score_rule.score_of(volume_bucket_label(bytes));
}

std::optional<std::string> DatasetProfile::size_bucket_label() const {
  if (!byte_size) return std::nullopt;
  return volume_bucket_label(*byte_size);
}

std::optional<Rational> DatasetProfile::size_bucket_score() const {
  if (!byte_size) return std::nullopt;
  return size_bucket(*byte_size);
}

}  // namespace dataworth
