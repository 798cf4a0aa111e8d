// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dataworth Authors

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dataworth/errors.hpp"
#include "dataworth/profiler.hpp"
#include "unit/test_support.hpp"

namespace dataworth {
namespace {

using testing_support::fixture;
using testing_support::TempDir;

struct Label {
  std::string file, format, structure, has_schema, granularity, time_series, has_duplicates;
  std::uint64_t error_rows = 0;
};

std::vector<Label> labels() {
  std::vector<Label> out;
  std::istringstream in(testing_support::slurp(fixture("profiler/labels.tsv")));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream cells(line);
    Label l;
    std::string err;
    std::getline(cells, l.file, '\t');
    std::getline(cells, l.format, '\t');
    std::getline(cells, l.structure, '\t');
    std::getline(cells, l.has_schema, '\t');
    std::getline(cells, l.granularity, '\t');
    std::getline(cells, l.time_series, '\t');
    std::getline(cells, l.has_duplicates, '\t');
    std::getline(cells, err, '\t');
    l.error_rows = std::stoull(err);
    out.push_back(l);
  }
  return out;
}

std::string yn(const std::optional<bool>& b) { return b ? (*b ? "Y" : "N") : "-"; }

TEST(ProfilerCorpus, LabelsCoverTheDirectory) {
  std::size_t files = 0;
  for (const auto& e : std::filesystem::directory_iterator(fixture("profiler"))) {
    if (e.path().filename() != "labels.tsv") ++files;
  }
  EXPECT_EQ(labels().size(), files);
  EXPECT_GE(files, 20u);
}

class ProfilerFixture : public ::testing::TestWithParam<Label> {};

TEST_P(ProfilerFixture, MatchesLabel) {
  const Label& l = GetParam();
  const auto p = profile_file(fixture("profiler/" + l.file));
  ASSERT_TRUE(p.format);
  EXPECT_EQ(to_string(*p.format), l.format);
  EXPECT_EQ(to_string(*p.structure), l.structure);
  EXPECT_EQ(yn(p.has_schema), l.has_schema);
  EXPECT_EQ(to_string(p.granularity), l.granularity);
  EXPECT_EQ(yn(p.time_series), l.time_series);
  const std::optional<bool> dups =
      p.duplicate_row_fraction ? std::optional<bool>(!p.duplicate_row_fraction->is_zero()) : std::nullopt;
  EXPECT_EQ(yn(dups), l.has_duplicates);
  EXPECT_EQ(p.error_rows, l.error_rows);
}

INSTANTIATE_TEST_SUITE_P(Corpus, ProfilerFixture, ::testing::ValuesIn(labels()),
                         [](const ::testing::TestParamInfo<Label>& info) {
                           std::string name = info.param.file;
                           std::replace_if(name.begin(), name.end(), [](char c) { return !std::isalnum(c); }, '_');
                           return name;
                         });

TEST(DetectFormat, MagicBytesBeatExtension) {
  EXPECT_EQ(detect_format("%PDF-1.7\n", ".csv"), DetectedFormat::pdf);
  EXPECT_EQ(detect_format("GIF87a....", ".json"), DetectedFormat::gif_jpg);
  EXPECT_EQ(detect_format("\xFF\xD8\xFF\xE0", ".txt"), DetectedFormat::gif_jpg);
  EXPECT_EQ(detect_format("PK\x03\x04 rest", ".csv"), DetectedFormat::other);
}

TEST(DetectFormat, ImageExtensionWithoutMagicIsNotTrusted) {
  EXPECT_EQ(detect_format("just some words\n", ".pdf"), DetectedFormat::other);
  EXPECT_EQ(detect_format("a,b\n1,2\n", ".jpg"), DetectedFormat::csv);
}

TEST(DetectFormat, ExtensionUsedWhenContentIsSilent) {
  EXPECT_EQ(detect_format("single", ".csv"), DetectedFormat::csv);
  EXPECT_EQ(detect_format("", ".json"), DetectedFormat::json);
  EXPECT_EQ(detect_format("", ".bin"), DetectedFormat::other);
}

TEST(DetectFormat, ContentBeatsDisagreeingExtension) {
  EXPECT_EQ(detect_format("x\ty\n1\t2\n", ".csv"), DetectedFormat::tsv);
  EXPECT_EQ(detect_format("<root/>", ".json"), DetectedFormat::xml);
  EXPECT_EQ(detect_format("{\"a\":1}", ".xml"), DetectedFormat::json);
}

TEST(DetectFormat, QuotedDelimitersDoNotCount) {
  EXPECT_EQ(detect_format("a,b\n\"x\ty\",2\n\"p\tq\",3\n", ""), DetectedFormat::csv);
}

TEST(ClassifyStructure, ByFormat) {
  EXPECT_EQ(classify_structure(DetectedFormat::csv), StructureClass::structured);
  EXPECT_EQ(classify_structure(DetectedFormat::tsv), StructureClass::structured);
  EXPECT_EQ(classify_structure(DetectedFormat::json), StructureClass::semi_structured);
  EXPECT_EQ(classify_structure(DetectedFormat::xml), StructureClass::semi_structured);
  EXPECT_EQ(classify_structure(DetectedFormat::pdf), StructureClass::unstructured);
  EXPECT_EQ(classify_structure(DetectedFormat::gif_jpg), StructureClass::unstructured);
  EXPECT_EQ(classify_structure(DetectedFormat::other), StructureClass::unstructured);
}

TEST(ParseDetectedFormat, RoundTrips) {
  for (auto f : {DetectedFormat::csv, DetectedFormat::tsv, DetectedFormat::json, DetectedFormat::xml,
                 DetectedFormat::pdf, DetectedFormat::gif_jpg, DetectedFormat::other}) {
    EXPECT_EQ(parse_detected_format(to_string(f)), f);
  }
  EXPECT_FALSE(parse_detected_format("xlsx"));
}

// Oracle: the bucket boundaries written out by hand in decimal units.
Rational bucket_oracle(std::uint64_t bytes) {
  const std::uint64_t mb = 1000000, gb = 1000000000;
  if (bytes < 500 * mb) return Rational(1, 2);
  if (bytes < 10 * gb) return Rational(3, 4);
  if (bytes <= 100 * gb) return Rational(1);
  return Rational(1, 2);
}

TEST(SizeBucket, Boundaries) {
  const std::uint64_t mb = 1000000, gb = 1000000000;
  EXPECT_EQ(size_bucket(0), Rational(1, 2));
  EXPECT_EQ(size_bucket(500 * mb - 1), Rational(1, 2));
  EXPECT_EQ(size_bucket(500 * mb), Rational(3, 4));
  EXPECT_EQ(size_bucket(10 * gb - 1), Rational(3, 4));
  EXPECT_EQ(size_bucket(10 * gb), Rational(1));
  EXPECT_EQ(size_bucket(100 * gb), Rational(1));
  EXPECT_EQ(size_bucket(100 * gb + 1), Rational(1, 2));
}

TEST(SizeBucket, StepFunctionProperty) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::uint64_t> any(0, 400ULL * 1000000000ULL);
  std::uniform_int_distribution<int> jitter(-3, 3);
  const std::uint64_t edges[] = {500000000ULL, 10000000000ULL, 100000000000ULL};
  for (int i = 0; i < 1000; ++i) {
    std::uint64_t b = any(rng);
    if (i % 4 == 0) b = edges[i % 3] + static_cast<std::uint64_t>(jitter(rng) + 3) - 3;
    ASSERT_EQ(size_bucket(b), bucket_oracle(b)) << b;
    // Piecewise constant: a value only changes across an edge.
    if (b > 0 && std::none_of(std::begin(edges), std::end(edges), [&](std::uint64_t e) {
          return b == e || b == e + 1;
        })) {
      EXPECT_EQ(size_bucket(b), size_bucket(b - 1)) << b;
    }
  }
}

TEST(InferSchema, HeaderAndTypes) {
  const auto s = infer_schema(fixture("profiler/employees.csv"), DetectedFormat::csv);
  EXPECT_TRUE(s.has_schema);
  ASSERT_EQ(s.fields.size(), 6u);
  EXPECT_EQ(s.fields[0].name, "employee_id");
  EXPECT_EQ(s.fields[0].type, FieldType::integer);
  EXPECT_EQ(s.fields[1].type, FieldType::string);
  EXPECT_EQ(s.fields[4].type, FieldType::integer);
  EXPECT_EQ(s.fields[5].type, FieldType::date);
}

TEST(InferSchema, NoHeaderGetsPositionalNames) {
  const auto s = infer_schema(fixture("profiler/no_header.csv"), DetectedFormat::csv);
  EXPECT_FALSE(s.has_schema);
  ASSERT_EQ(s.fields.size(), 3u);
  EXPECT_EQ(s.fields[0].name, "column_1");
  EXPECT_EQ(s.fields[2].type, FieldType::number);
}

TEST(InferSchema, NestedJsonValues) {
  const auto s = infer_schema(fixture("profiler/events.ndjson"), DetectedFormat::json);
  auto payload = std::find_if(s.fields.begin(), s.fields.end(), [](const FieldInfo& f) { return f.name == "payload"; });
  ASSERT_NE(payload, s.fields.end());
  EXPECT_EQ(payload->type, FieldType::nested);
  EXPECT_FALSE(profile_file(fixture("profiler/events.ndjson")).primary_types_only.value());
  EXPECT_TRUE(profile_file(fixture("profiler/records.json")).primary_types_only.value());
}

TEST(InferSchema, XmlAttributesAndChildren) {
  const auto s = infer_schema(fixture("profiler/catalog.xml"), DetectedFormat::xml);
  std::vector<std::string> names;
  for (const auto& f : s.fields) names.push_back(f.name);
  EXPECT_EQ(names, (std::vector<std::string>{"@isbn", "title", "pages"}));
}

TEST(InferSchema, UnterminatedQuoteReportsByteOffset) {
  try {
    infer_schema(fixture("profiler/broken_quote.csv"), DetectedFormat::csv);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    ASSERT_TRUE(e.where().byte_offset);
    EXPECT_EQ(*e.where().byte_offset, 22u);
  }
}

TEST(InferSchema, MalformedJsonReportsByteOffset) {
  TempDir dir;
  const auto p = dir.write("bad.json", "[{\"a\": 1}, {\"a\": ]");
  try {
    infer_schema(p, DetectedFormat::json);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    ASSERT_TRUE(e.where().byte_offset);
    EXPECT_EQ(*e.where().byte_offset, 17u);
  }
  const auto prof = profile_file(p);
  EXPECT_EQ(prof.warnings.size(), 1u);
  EXPECT_FALSE(prof.row_count);
}

TEST(InferSchema, MalformedXmlReportsLine) {
  TempDir dir;
  const auto p = dir.write("bad.xml", "<root>\n<a>1</a>\n<a x=>2</a>\n</root>\n");
  try {
    infer_schema(p, DetectedFormat::xml);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    ASSERT_TRUE(e.where().line);
    EXPECT_EQ(*e.where().line, 3u);
  }
}

TEST(QualityScan, CompletenessAndDuplicates) {
  const auto q = quality_scan(fixture("profiler/missing.csv"), DetectedFormat::csv);
  EXPECT_EQ(q.rows, 4u);
  ASSERT_EQ(q.fields.size(), 3u);
  EXPECT_EQ(q.fields[0].completeness, Rational(1));
  EXPECT_EQ(q.fields[1].completeness, Rational(3, 4));
  EXPECT_EQ(q.fields[2].completeness, Rational(1, 2));

  const auto d = quality_scan(fixture("profiler/duplicates.csv"), DetectedFormat::csv);
  EXPECT_EQ(d.duplicate_rows, 2u);
  EXPECT_EQ(d.duplicate_row_fraction, Rational(1, 3));
}

TEST(QualityScan, QuotedFieldsParse) {
  const auto q = quality_scan(fixture("profiler/quoted.csv"), DetectedFormat::csv);
  EXPECT_EQ(q.rows, 3u);
  EXPECT_EQ(q.error_rows, 0u);
}

// Oracle: duplicates counted with a plain std::set over whole lines.
TEST(QualityScan, DuplicateFractionAgreesWithSetOracle) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    TempDir dir;
    std::string text = "k,v\n";
    std::set<std::string> seen;
    std::int64_t rows = 0, dups = 0;
    const int n = 20 + static_cast<int>(rng() % 200);
    for (int i = 0; i < n; ++i) {
      const std::string line = "k" + std::to_string(rng() % 40) + "," + std::to_string(rng() % 3);
      text += line + "\n";
      ++rows;
      if (!seen.insert(line).second) ++dups;
    }
    const auto q = quality_scan(dir.write("t.csv", text), DetectedFormat::csv);
    EXPECT_EQ(q.rows, static_cast<std::uint64_t>(rows));
    EXPECT_EQ(q.duplicate_row_fraction, Rational(dups, rows));
  }
}

TEST(Sampling, LargeFileIsSampledButCountsAreExact) {
  TempDir dir;
  std::string text = "id,amount\n";
  for (int i = 0; i < 5000; ++i) text += std::to_string(i) + "," + std::to_string(i % 7) + "\n";
  ProfileOptions opts;
  opts.sample_rows = 100;
  opts.reservoir_rows = 50;
  const auto p = profile_file(dir.write("big.csv", text), opts);
  EXPECT_TRUE(p.sampled);
  EXPECT_EQ(p.row_count, 5000u);
  EXPECT_EQ(p.granularity, Granularity::individual);
  const auto again = profile_file(dir.path() / "big.csv", opts);
  EXPECT_EQ(again.fields[1].type, p.fields[1].type);
}

TEST(Sampling, EmptyAndHeaderOnly) {
  TempDir dir;
  const auto empty = profile_file(dir.write("e.csv", ""));
  EXPECT_EQ(empty.row_count, 0u);
  EXPECT_FALSE(empty.sensitivity);
  const auto header = profile_file(dir.write("h.csv", "name,email\n"));
  EXPECT_EQ(header.has_schema, true);
  EXPECT_EQ(header.row_count, 0u);
}

TEST(Sensitivity, NameAndValueRules) {
  const auto f = scan_sensitivity(fixture("profiler/employees.csv"), DetectedFormat::csv, RulePack::builtin());
  EXPECT_EQ(f.pii_columns, (std::vector<std::string>{"first_name", "email"}));
  EXPECT_EQ(f.protected_columns, (std::vector<std::string>{"gender"}));
  EXPECT_EQ(f.financial_columns, (std::vector<std::string>{"salary"}));
  auto email = std::find_if(f.matches.begin(), f.matches.end(), [](const SensitivityMatch& m) {
    return m.rule_id == "pii.email";
  });
  ASSERT_NE(email, f.matches.end());
  EXPECT_TRUE(email->by_name);
  EXPECT_TRUE(email->by_value);
  EXPECT_EQ(email->evidence.find("example"), std::string::npos);
}

TEST(Sensitivity, ValueOnlyMatchOnUnhelpfulName) {
  TempDir dir;
  const auto p = dir.write("c.csv", "col_a,col_b\nx1,someone@example.org\nx2,other@example.org\nx3,n/a\n");
  const auto f = scan_sensitivity(p, DetectedFormat::csv, RulePack::builtin());
  EXPECT_EQ(f.pii_columns, (std::vector<std::string>{"col_b"}));
}

TEST(Sensitivity, HealthColumns) {
  const auto f = scan_sensitivity(fixture("profiler/patients.csv"), DetectedFormat::csv, RulePack::builtin());
  EXPECT_EQ(f.health_columns, (std::vector<std::string>{"patient_id", "diagnosis", "blood_pressure"}));
  EXPECT_EQ(f.pii_columns, (std::vector<std::string>{"phone"}));
}

TEST(Sensitivity, DisabledRuleIsSkipped) {
  RulePack pack = RulePack::builtin();
  pack.set_enabled("protected.gender", false);
  const auto f = scan_sensitivity(fixture("profiler/employees.csv"), DetectedFormat::csv, pack);
  EXPECT_TRUE(f.protected_columns.empty());
  EXPECT_THROW(pack.set_enabled("no.such.rule", true), NotFoundError);
}

TEST(RulePackFile, RoundTrip) {
  const RulePack a = RulePack::builtin();
  const RulePack b = parse_rulepack(write_rulepack(a), "mem");
  ASSERT_EQ(a.rules.size(), b.rules.size());
  for (std::size_t i = 0; i < a.rules.size(); ++i) {
    EXPECT_EQ(a.rules[i].id, b.rules[i].id);
    EXPECT_EQ(a.rules[i].name_pattern, b.rules[i].name_pattern);
    EXPECT_EQ(a.rules[i].value_pattern, b.rules[i].value_pattern);
    EXPECT_EQ(a.rules[i].confidence, b.rules[i].confidence);
    EXPECT_EQ(a.rules[i].category, b.rules[i].category);
  }
}

TEST(RulePackFile, CustomRuleApplies) {
  const RulePack pack = parse_rulepack(R"(rules:
  - id: local.badge
    category: confidential
    name_pattern: "badge"
)",
                                       "mem");
  TempDir dir;
  const auto f = scan_sensitivity(dir.write("b.csv", "badge_no,x\n1,2\n"), DetectedFormat::csv, pack);
  EXPECT_EQ(f.confidential_columns, (std::vector<std::string>{"badge_no"}));
}

TEST(RulePackFile, Rejections) {
  EXPECT_THROW(parse_rulepack("rules:\n  - id: a\n    category: weird\n    name_pattern: x\n", "m"), ParseError);
  EXPECT_THROW(parse_rulepack("rules:\n  - id: a\n    category: pii\n", "m"), ParseError);
  EXPECT_THROW(parse_rulepack("rules:\n  - id: a\n    category: pii\n    name_pattern: \"(\"\n", "m"), ParseError);
  EXPECT_THROW(parse_rulepack("rules:\n  - id: a\n    category: pii\n    name_pattern: x\n    confidence: 2\n", "m"),
               ParseError);
  EXPECT_THROW(parse_rulepack("rules:\n  - {id: a, category: pii, name_pattern: x}\n  - {id: a, category: pii, "
                              "name_pattern: y}\n",
                              "m"),
               ParseError);
}

TEST(AutoFill, AnswersOnlyFromEvidence) {
  const Catalog& c = Catalog::load_canonical();
  const auto p = profile_file(fixture("profiler/employees.csv"));
  const ResponseSet s = auto_fill(p, c);
  const auto& allowed = auto_answerable_questions();
  for (const auto& [id, r] : s.responses) {
    EXPECT_NE(std::find(allowed.begin(), allowed.end(), id), allowed.end()) << id;
    EXPECT_EQ(r.provenance, Provenance::auto_profiler);
  }
  EXPECT_EQ(s.responses.at("format.file_format").value, ResponseValue::of_label("csv"));
  EXPECT_EQ(s.responses.at("data_layout.structure").value, ResponseValue::of_label("Structured"));
  EXPECT_EQ(s.responses.at("data_volume.size").value, ResponseValue::of_label("under_500MB"));
  EXPECT_EQ(s.responses.at("sensitivity.pii_free").value, ResponseValue::of_label("N"));
  EXPECT_EQ(s.responses.at("sensitivity.protective_variables").value, ResponseValue::of_label("Y"));
  EXPECT_EQ(s.responses.at("granularity.aggregate").value, ResponseValue::of_label("N"));
  EXPECT_EQ(s.responses.size() + s.omitted.size(), c.questions().size());
  EXPECT_TRUE(validate(c, s).valid());
}

TEST(AutoFill, UnstructuredHasFewAnswers) {
  const Catalog& c = Catalog::load_canonical();
  const ResponseSet s = auto_fill(profile_file(fixture("profiler/report.pdf")), c);
  EXPECT_EQ(s.responses.size(), 3u);
  EXPECT_EQ(s.responses.at("format.file_format").value, ResponseValue::of_label("pdf"));
}

TEST(AutoFill, DefaultProfileAnswersNothing) {
  const ResponseSet s = auto_fill(DatasetProfile{}, Catalog::load_canonical());
  EXPECT_TRUE(s.responses.empty());
}

TEST(AutoFill, EveryCorpusFileYieldsValidResponses) {
  const Catalog& c = Catalog::load_canonical();
  for (const auto& l : labels()) {
    const ResponseSet s = auto_fill(profile_file(fixture("profiler/" + l.file)), c);
    EXPECT_TRUE(validate(c, s).valid()) << l.file << ": " << validate(c, s).summary();
  }
}

}  // namespace
}  // namespace dataworth
