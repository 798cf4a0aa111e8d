// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dataworth Authors

#include "dataworth/corpus.hpp"

#include <algorithm>
#include <future>
#include <set>

#include <yaml-cpp/yaml.h>

#include "catalog_internal.hpp"
#include "dataworth/errors.hpp"
#include "yaml_util.hpp"

namespace dataworth {

namespace {

std::string canonical_value(std::string v) {
  const std::string t = normalize_token(v);
  if (t == "yes" || t == "true" || t == "y") return "Y";
  if (t == "no" || t == "false" || t == "n") return "N";
  return v;
}

std::vector<YAML::Node> load_all(std::string_view text, const std::string& origin) {
  try {
    return YAML::LoadAll(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ParseError(
        ParseError::Location{origin, static_cast<std::size_t>(e.mark.line) + 1, std::nullopt, {}}, e.msg);
  }
}

struct FileResult {
  std::vector<DatasetDescriptor> descriptors;
  std::optional<IngestError> error;
};

FileResult read_one(const std::filesystem::path& path) {
  FileResult r;
  try {
    r.descriptors = parse_descriptors(detail::read_file(path), path.string());
  } catch (const Error& e) {
    r.error = IngestError{path.string(), e.what()};
  }
  return r;
}

}  // namespace

const std::vector<std::string>& standard_dimensions() {
  static const std::vector<std::string> dims = {"pii",    "format", "protected_attributes", "size",
                                                "schema", "level",  "layout",               "aggregation_type",
                                                "update_frequency", "data_type", "arrival_frequency"};
  return dims;
}

bool is_standard_dimension(std::string_view dimension) {
  const auto& d = standard_dimensions();
  return std::find(d.begin(), d.end(), dimension) != d.end();
}

std::vector<std::string> Corpus::dimensions() const {
  std::set<std::string> seen;
  for (const auto& d : descriptors) {
    for (const auto& [k, v] : d.values) seen.insert(k);
  }
  std::vector<std::string> out;
  for (const auto& s : standard_dimensions()) {
    if (seen.count(s)) out.push_back(s);
  }
  for (const auto& s : seen) {
    if (!is_standard_dimension(s)) out.push_back(s);
  }
  return out;
}

std::vector<std::string> Corpus::extension_dimensions() const {
  std::vector<std::string> out;
  for (const auto& d : dimensions()) {
    if (!is_standard_dimension(d)) out.push_back(d);
  }
  return out;
}

std::vector<DatasetDescriptor> parse_descriptors(std::string_view text, const std::string& origin) {
  using detail::fail;
  std::vector<DatasetDescriptor> out;
  const auto docs = load_all(text, origin);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const YAML::Node& n = docs[i];
    if (!n.IsDefined() || n.IsNull()) continue;
    const std::string doc = docs.size() > 1 ? "document " + std::to_string(i + 1) : std::string();
    if (!n.IsMap()) fail(origin, n, doc, "expected a mapping with 'id' and 'values'");
    DatasetDescriptor d;
    d.id = detail::require_scalar(n, "id", origin, doc);
    if (d.id.empty()) fail(origin, n, doc.empty() ? "id" : doc + ".id", "empty id");
    d.source = detail::optional_scalar(n, "source", origin, doc);
    d.origin = docs.size() > 1 ? origin + "#" + std::to_string(i + 1) : origin;
    const YAML::Node values = n["values"];
    if (!values.IsDefined() || values.IsNull()) fail(origin, n, doc.empty() ? "values" : doc + ".values", "missing");
    if (!values.IsMap()) fail(origin, values, "values", "expected a mapping");
    for (const auto& kv : values) {
      const std::string key = kv.first.as<std::string>();
      if (!kv.second.IsScalar()) fail(origin, kv.second, "values." + key, "expected a scalar");
      d.values[key] = canonical_value(kv.second.Scalar());
    }
    out.push_back(std::move(d));
  }
  return out;
}

std::string write_descriptor(const DatasetDescriptor& d) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "id" << YAML::Value << d.id;
  if (!d.source.empty()) out << YAML::Key << "source" << YAML::Value << d.source;
  out << YAML::Key << "values" << YAML::Value << YAML::BeginMap;
  for (const auto& [k, v] : d.values) out << YAML::Key << k << YAML::Value << YAML::DoubleQuoted << v;
  out << YAML::EndMap << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

Corpus ingest(const std::vector<std::filesystem::path>& paths, unsigned threads) {
  std::vector<FileResult> results(paths.size());
  threads = std::max(1u, threads);
  if (threads == 1 || paths.size() < 2) {
    for (std::size_t i = 0; i < paths.size(); ++i) results[i] = read_one(paths[i]);
  } else {
    for (std::size_t start = 0; start < paths.size(); start += threads) {
      std::vector<std::future<FileResult>> batch;
      for (std::size_t i = start; i < std::min(paths.size(), start + threads); ++i) {
        batch.push_back(std::async(std::launch::async, read_one, paths[i]));
      }
      for (std::size_t k = 0; k < batch.size(); ++k) results[start + k] = batch[k].get();
    }
  }

  Corpus c;
  std::map<std::string, std::string> first_origin;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].error) {
      c.errors.push_back(*results[i].error);
      continue;
    }
    for (auto& d : results[i].descriptors) {
      auto [it, fresh] = first_origin.emplace(d.id, d.origin);
      if (!fresh) {
        c.errors.push_back(IngestError{paths[i].string(), "duplicate descriptor id '" + d.id + "' (first in " +
                                                              it->second + ", again in " + d.origin + ")"});
        continue;
      }
      c.descriptors.push_back(std::move(d));
    }
  }
  return c;
}

DatasetDescriptor descriptor_from_profile(const DatasetProfile& p, std::string id) {
  DatasetDescriptor d;
  d.id = id.empty() ? std::filesystem::path(p.path).filename().string() : std::move(id);
  d.source = "profiled";
  d.origin = p.path;
  auto yn = [](bool b) { return std::string(b ? "Y" : "N"); };
  if (p.format) d.values["format"] = to_string(*p.format);
  if (p.byte_size) d.values["size"] = volume_bucket_label(*p.byte_size);
  if (p.has_schema) d.values["schema"] = yn(*p.has_schema);
  if (p.structure) {
    static const char* labels[] = {"Structured", "Semi-structured", "Unstructured"};
    d.values["layout"] = labels[static_cast<int>(*p.structure)];
  }
  if (p.granularity != Granularity::unknown) {
    d.values["level"] = p.granularity == Granularity::individual ? "Individual" : "Aggregate";
  }
  if (p.sensitivity) {
    d.values["pii"] = yn(!p.sensitivity->pii_columns.empty());
    d.values["protected_attributes"] = yn(!p.sensitivity->protected_columns.empty());
  }
  if (p.primary_types_only) d.values["aggregation_type"] = *p.primary_types_only ? "Primary" : "Composite";
  return d;
}

const DistributionRow* DistributionTable::row(std::string_view dimension) const {
  for (const auto& r : rows) {
    if (r.dimension == dimension) return &r;
  }
  return nullptr;
}

DistributionRow distribution(const Corpus& corpus, const std::string& dimension) {
  DistributionRow row;
  row.dimension = dimension;
  for (const auto& d : corpus.descriptors) {
    auto it = d.values.find(dimension);
    if (it == d.values.end()) {
      ++row.missing;
    } else {
      ++row.counts[it->second];
      ++row.observed;
    }
  }
  if (row.observed == 0) {
    std::optional<std::string> suggestion;
    std::size_t best = 3;
    for (const auto& dim : corpus.dimensions()) {
      const std::size_t dist = detail::edit_distance(dimension, dim);
      if (dist < best) {
        best = dist;
        suggestion = dim;
      }
    }
    throw NotFoundError("dimension", dimension, suggestion);
  }
  return row;
}

DistributionTable tabulate(const Corpus& corpus) {
  DistributionTable t;
  t.total = corpus.size();
  for (const auto& dim : corpus.dimensions()) t.rows.push_back(distribution(corpus, dim));
  return t;
}

const char* to_string(PriorProvenance p) {
  return p == PriorProvenance::manual_override ? "manual_override" : "frequency_derived";
}

const DimensionPrior* RankPrior::find(std::string_view dimension) const {
  for (const auto& d : dimensions) {
    if (d.dimension == dimension) return &d;
  }
  return nullptr;
}

DimensionPrior derive_rank_prior(const DistributionRow& row, const PriorOverrides& overrides) {
  if (row.counts.empty()) throw ValidationError("dimension '" + row.dimension + "' has no observed values");
  // std::map iteration is label order, so a stable sort keeps it for ties.
  std::vector<std::pair<std::string, std::uint64_t>> by_count(row.counts.begin(), row.counts.end());
  std::stable_sort(by_count.begin(), by_count.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  DimensionPrior prior;
  prior.dimension = row.dimension;
  auto it = overrides.find(row.dimension);
  if (it == overrides.end()) {
    for (const auto& [v, n] : by_count) prior.order.push_back(v);
    return prior;
  }
  prior.provenance = PriorProvenance::manual_override;
  std::set<std::string> listed;
  for (const auto& v : it->second) {
    if (!row.counts.count(v)) {
      throw ValidationError("override for '" + row.dimension + "' lists '" + v + "', which was not observed");
    }
    if (!listed.insert(v).second) {
      throw ValidationError("override for '" + row.dimension + "' lists '" + v + "' twice");
    }
    prior.order.push_back(v);
  }
  for (const auto& [v, n] : by_count) {
    if (!listed.count(v)) prior.order.push_back(v);
  }
  return prior;
}

RankPrior derive_rank_prior(const DistributionTable& table, const PriorOverrides& overrides) {
  for (const auto& [dim, values] : overrides) {
    if (!table.row(dim)) throw NotFoundError("dimension", dim, std::nullopt);
  }
  RankPrior p;
  for (const auto& row : table.rows) p.dimensions.push_back(derive_rank_prior(row, overrides));
  return p;
}

ScoreRule prior_to_scores(const DimensionPrior& prior) {
  ScoreRule rule;
  const auto k = static_cast<std::int64_t>(prior.order.size());
  for (std::int64_t i = 0; i < k; ++i) {
    rule.map.emplace_back(prior.order[static_cast<std::size_t>(i)],
                          k == 1 ? Rational(1) : Rational(k - 1 - i, k - 1));
  }
  return rule;
}

PriorOverrides parse_prior_overrides(std::string_view text, const std::string& origin) {
  using detail::fail;
  const YAML::Node root = detail::load_yaml(text, origin);
  PriorOverrides out;
  if (!root.IsDefined() || root.IsNull()) return out;
  if (!root.IsMap()) fail(origin, root, "", "expected a mapping of dimension -> value list");
  for (const auto& kv : root) {
    const std::string dim = kv.first.as<std::string>();
    if (!kv.second.IsSequence()) fail(origin, kv.second, dim, "expected a list of values");
    std::vector<std::string> order;
    for (const auto& v : kv.second) {
      if (!v.IsScalar()) fail(origin, v, dim, "expected scalar values");
      order.push_back(canonical_value(v.Scalar()));
    }
    out[dim] = std::move(order);
  }
  return out;
}

PriorOverrides read_prior_overrides(const std::filesystem::path& path) {
  return parse_prior_overrides(detail::read_file(path), path.string());
}

}  // namespace dataworth
