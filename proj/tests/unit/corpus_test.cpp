// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dataworth Authors

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <string>
#include <vector>

#include "dataworth/corpus.hpp"
#include "dataworth/errors.hpp"
#include "unit/test_support.hpp"

namespace dataworth {
namespace {

using testing_support::fixture;
using testing_support::TempDir;

std::vector<std::filesystem::path> good_files() {
  return {fixture("corpus/titanic.yaml"), fixture("corpus/census_summary.yaml"), fixture("corpus/scans.yaml")};
}

/// Corpus with `n[value]` descriptors per value of one dimension.
Corpus synthetic(const std::string& dimension, const std::map<std::string, int>& n) {
  Corpus c;
  int k = 0;
  for (const auto& [value, count] : n) {
    for (int i = 0; i < count; ++i) {
      DatasetDescriptor d;
      d.id = dimension + "-" + std::to_string(k++);
      d.values[dimension] = value;
      c.descriptors.push_back(d);
    }
  }
  return c;
}

TEST(Ingest, ThreeFiles) {
  const Corpus c = ingest(good_files());
  EXPECT_EQ(c.size(), 3u);
  EXPECT_TRUE(c.errors.empty());
  EXPECT_EQ(c.descriptors[0].id, "titanic");
  EXPECT_EQ(c.descriptors[1].values.at("pii"), "N");
  EXPECT_EQ(c.descriptors[1].values.at("schema"), "Y");
}

TEST(Ingest, UnknownDimensionKeptAsExtension) {
  const Corpus c = ingest(good_files());
  EXPECT_EQ(c.extension_dimensions(), (std::vector<std::string>{"task"}));
  EXPECT_EQ(c.dimensions(),
            (std::vector<std::string>{"pii", "format", "schema", "level", "layout", "data_type", "task"}));
}

TEST(Ingest, DuplicateIdNamesBothFiles) {
  auto files = good_files();
  files.push_back(fixture("corpus/duplicate.yaml"));
  const Corpus c = ingest(files);
  EXPECT_EQ(c.size(), 3u);
  ASSERT_EQ(c.errors.size(), 1u);
  EXPECT_NE(c.errors[0].message.find("titanic.yaml"), std::string::npos);
  EXPECT_NE(c.errors[0].message.find("duplicate.yaml"), std::string::npos);
}

TEST(Ingest, MalformedFilesSkippedAndReported) {
  auto files = good_files();
  files.push_back(fixture("corpus/broken.yaml"));
  files.push_back(fixture("corpus/no_values.yaml"));
  files.push_back(fixture("corpus/does_not_exist.yaml"));
  const Corpus c = ingest(files);
  EXPECT_EQ(c.size(), 3u);
  ASSERT_EQ(c.errors.size(), 3u);
  EXPECT_NE(c.errors[0].path.find("broken.yaml"), std::string::npos);
  EXPECT_NE(c.errors[1].message.find("values"), std::string::npos);
}

TEST(Ingest, MultiDocumentDump) {
  const Corpus c = ingest({fixture("corpus/dump.yaml")});
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.descriptors[1].id, "a2");
  EXPECT_NE(c.descriptors[1].origin.find("#2"), std::string::npos);
}

TEST(Ingest, ParallelMatchesSerial) {
  auto files = good_files();
  files.push_back(fixture("corpus/dump.yaml"));
  files.push_back(fixture("corpus/duplicate.yaml"));
  const Corpus a = ingest(files, 1);
  const Corpus b = ingest(files, 4);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.descriptors[i].id, b.descriptors[i].id);
    EXPECT_EQ(a.descriptors[i].values, b.descriptors[i].values);
  }
  EXPECT_EQ(a.errors.size(), b.errors.size());
}

TEST(Descriptor, RoundTrip) {
  DatasetDescriptor d;
  d.id = "x";
  d.source = "profiled";
  d.values = {{"pii", "N"}, {"size", "under_500MB"}, {"format", "csv"}};
  const auto back = parse_descriptors(write_descriptor(d), "mem");
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].id, d.id);
  EXPECT_EQ(back[0].source, d.source);
  EXPECT_EQ(back[0].values, d.values);
}

TEST(Descriptor, FromProfile) {
  const auto d = descriptor_from_profile(profile_file(fixture("profiler/employees.csv")));
  EXPECT_EQ(d.id, "employees.csv");
  EXPECT_EQ(d.values.at("pii"), "Y");
  EXPECT_EQ(d.values.at("format"), "csv");
  EXPECT_EQ(d.values.at("schema"), "Y");
  EXPECT_EQ(d.values.at("level"), "Individual");
  EXPECT_EQ(d.values.at("layout"), "Structured");
}

TEST(Distribution, ConstructedPii) {
  const Corpus c = synthetic("pii", {{"N", 7}, {"Y", 3}});
  const auto row = distribution(c, "pii");
  EXPECT_EQ(row.counts, (std::map<std::string, std::uint64_t>{{"N", 7}, {"Y", 3}}));
  EXPECT_EQ(row.observed, 10u);
  EXPECT_EQ(row.missing, 0u);
}

TEST(Distribution, SingleDescriptorAndUniformFormat) {
  EXPECT_EQ(distribution(synthetic("format", {{"csv", 1}}), "format").counts.at("csv"), 1u);
  const auto row = distribution(synthetic("format", {{"csv", 12}}), "format");
  EXPECT_EQ(row.counts.size(), 1u);
  EXPECT_EQ(row.counts.at("csv"), 12u);
}

TEST(Distribution, MissingTrackedSeparately) {
  const Corpus c = ingest(good_files());
  const auto row = distribution(c, "level");
  EXPECT_EQ(row.observed, 2u);
  EXPECT_EQ(row.missing, 1u);
}

TEST(Distribution, UnknownDimensionSuggests) {
  const Corpus c = ingest(good_files());
  try {
    distribution(c, "shema");
    FAIL();
  } catch (const NotFoundError& e) {
    EXPECT_EQ(e.suggestion(), "schema");
  }
}

// Oracle: recount by walking the descriptor files' values directly.
TEST(Distribution, AgreesWithRecountOracle) {
  std::mt19937 rng(3);
  const std::vector<std::string> values = {"csv", "json", "tsv", "pdf", "xml"};
  TempDir dir;
  std::vector<std::filesystem::path> files;
  std::map<std::string, std::uint64_t> expected;
  for (int i = 0; i < 60; ++i) {
    const std::string v = values[rng() % values.size()];
    const bool has = rng() % 5 != 0;
    std::string text = "id: d" + std::to_string(i) + "\nvalues:\n  other: x\n";
    if (has) {
      text += "  format: " + v + "\n";
      ++expected[v];
    }
    files.push_back(dir.write("d" + std::to_string(i) + ".yaml", text));
  }
  const Corpus c = ingest(files, 3);
  const auto t = tabulate(c);
  EXPECT_EQ(t.total, 60u);
  ASSERT_NE(t.row("format"), nullptr);
  EXPECT_EQ(t.row("format")->counts, expected);
  std::uint64_t sum = 0;
  for (const auto& [k, n] : expected) sum += n;
  EXPECT_EQ(t.row("format")->observed + t.row("format")->missing, 60u);
  EXPECT_EQ(t.row("format")->observed, sum);
}

TEST(Distribution, TabulateIsOrderIndependent) {
  auto files = good_files();
  files.push_back(fixture("corpus/dump.yaml"));
  const auto a = tabulate(ingest(files));
  std::reverse(files.begin(), files.end());
  const auto b = tabulate(ingest(files));
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].dimension, b.rows[i].dimension);
    EXPECT_EQ(a.rows[i].counts, b.rows[i].counts);
  }
}

TEST(RankPrior, ByFrequency) {
  EXPECT_EQ(derive_rank_prior(distribution(synthetic("pii", {{"N", 7}, {"Y", 3}}), "pii")).order,
            (std::vector<std::string>{"N", "Y"}));
  EXPECT_EQ(derive_rank_prior(distribution(synthetic("schema", {{"Y", 8}, {"N", 2}}), "schema")).order,
            (std::vector<std::string>{"Y", "N"}));
}

TEST(RankPrior, TiesKeepLabelOrder) {
  const auto p = derive_rank_prior(distribution(synthetic("f", {{"b", 2}, {"a", 2}, {"c", 5}}), "f"));
  EXPECT_EQ(p.order, (std::vector<std::string>{"c", "a", "b"}));
  EXPECT_EQ(p.provenance, PriorProvenance::frequency_derived);
}

TEST(RankPrior, SizeOverride) {
  const Corpus c = synthetic("size", {{"under_500MB", 40}, {"500MB_to_10GB", 9}, {"10GB_to_100GB", 3}});
  PriorOverrides o{{"size", {"10GB_to_100GB", "500MB_to_10GB", "under_500MB"}}};
  const auto p = derive_rank_prior(distribution(c, "size"), o);
  EXPECT_EQ(p.provenance, PriorProvenance::manual_override);
  EXPECT_EQ(p.order, o["size"]);
}

TEST(RankPrior, PartialOverrideAppendsRest) {
  const Corpus c = synthetic("f", {{"a", 5}, {"b", 3}, {"c", 1}});
  const auto p = derive_rank_prior(distribution(c, "f"), {{"f", {"c"}}});
  EXPECT_EQ(p.order, (std::vector<std::string>{"c", "a", "b"}));
}

TEST(RankPrior, OverrideErrors) {
  const auto row = distribution(synthetic("pii", {{"N", 1}, {"Y", 1}}), "pii");
  EXPECT_THROW(derive_rank_prior(row, {{"pii", {"Maybe"}}}), ValidationError);
  EXPECT_THROW(derive_rank_prior(row, {{"pii", {"N", "N"}}}), ValidationError);
  EXPECT_THROW(derive_rank_prior(DistributionRow{}), ValidationError);
  EXPECT_THROW(derive_rank_prior(tabulate(synthetic("pii", {{"N", 1}})), {{"nope", {"x"}}}), NotFoundError);
}

TEST(RankPrior, OverridesFile) {
  const auto o = parse_prior_overrides("size: [10GB_to_100GB, under_500MB]\npii: [no, yes]\n", "mem");
  EXPECT_EQ(o.at("pii"), (std::vector<std::string>{"N", "Y"}));
  EXPECT_THROW(parse_prior_overrides("size: big\n", "mem"), ParseError);
}

TEST(PriorToScores, EvenSpacing) {
  const auto r = prior_to_scores(DimensionPrior{"size", {"Large", "Medium", "Small"}, {}});
  ASSERT_EQ(r.map.size(), 3u);
  EXPECT_EQ(r.score_of("Large"), Rational(1));
  EXPECT_EQ(r.score_of("Medium"), Rational(1, 2));
  EXPECT_EQ(r.score_of("Small"), Rational(0));
  const auto two = prior_to_scores(DimensionPrior{"pii", {"N", "Y"}, {}});
  EXPECT_EQ(two.score_of("N"), Rational(1));
  EXPECT_EQ(two.score_of("Y"), Rational(0));
  EXPECT_EQ(prior_to_scores(DimensionPrior{"x", {"A"}, {}}).score_of("A"), Rational(1));
}

TEST(PriorToScores, Properties) {
  for (std::int64_t k = 2; k <= 12; ++k) {
    DimensionPrior p{"d", {}, {}};
    for (std::int64_t i = 0; i < k; ++i) p.order.push_back("v" + std::to_string(i));
    const auto r = prior_to_scores(p);
    EXPECT_EQ(r.map.front().second, Rational(1));
    EXPECT_EQ(r.map.back().second, Rational(0));
    for (std::size_t i = 1; i < r.map.size(); ++i) {
      EXPECT_LT(r.map[i].second, r.map[i - 1].second);
      EXPECT_EQ(r.map[i - 1].second - r.map[i].second, Rational(1, k - 1));
    }
  }
}

}  // namespace
}  // namespace dataworth
