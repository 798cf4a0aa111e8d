// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dataworth Authors

#include <gtest/gtest.h>

#include <random>
#include <string>

#include "dataworth/assessment.hpp"
#include "dataworth/errors.hpp"
#include "unit/test_support.hpp"

namespace dataworth {
namespace {

using testing_support::fixture;
using testing_support::TempDir;

Response answer(const std::string& id, ResponseValue v, std::string note = {}) {
  return Response{id, std::move(v), Provenance::manual, std::move(note)};
}

bool has_code(const ValidationReport& r, Violation::Code code, const std::string& id) {
  for (const auto& v : r.violations) {
    if (v.code == code && v.question_id == id) return true;
  }
  return false;
}

TEST(Interpret, MapsFreeFormResponses) {
  const Catalog c = Catalog::load_canonical();
  EXPECT_EQ(interpret_response(c.lookup("format.schema"), "yes"), ResponseValue::of_label("Y"));
  EXPECT_EQ(interpret_response(c.lookup("format.file_format"), "CSV"), ResponseValue::of_label("csv"));
  EXPECT_EQ(interpret_response(c.lookup("format.file_format"), "txt"), ResponseValue::of_label("other"));
  EXPECT_EQ(interpret_response(c.lookup("velocity.generation_rate"), "NS"),
            ResponseValue::of_label("Not significant"));
  EXPECT_EQ(interpret_response(c.lookup("data_volume.size"), ".5 GB"), ResponseValue::of_label("500MB_to_10GB"));
  EXPECT_EQ(interpret_response(c.lookup("data_volume.size"), ".35 GB"), ResponseValue::of_label("under_500MB"));
  EXPECT_EQ(interpret_response(c.lookup("quality.precision"), "0.85"),
            ResponseValue::of_number(Rational::parse("0.85")));
  EXPECT_EQ(interpret_response(c.lookup("quality.precision"), "High"), ResponseValue::of_label("High"));
  EXPECT_EQ(interpret_response(c.lookup("quality.precision"), "NA"), ResponseValue::not_applicable());
  EXPECT_EQ(interpret_response(c.lookup("format.schema"), "DontKnow"), ResponseValue::dont_know());
  EXPECT_EQ(interpret_response(c.lookup("format.schema"), "maybe"), ResponseValue::of_label("maybe"));
}

TEST(Validate, AcceptsAdmissibleAnswers) {
  const Catalog c = Catalog::load_canonical();
  ResponseSet s;
  s.dataset_id = "d";
  s.set(answer("data_layout.structure", ResponseValue::of_label("Structured")));
  s.set(answer("quality.precision", ResponseValue::of_number(Rational::parse("0.85"))));
  s.set(answer("format.schema", ResponseValue::dont_know()));
  s.finalize_omitted(c);
  const ValidationReport r = validate(c, s);
  EXPECT_TRUE(r.valid()) << r.summary();
  EXPECT_EQ(r.unanswered.size(), 71u);
}

TEST(Validate, FlagsOutOfRangeNumbers) {
  const Catalog c = Catalog::load_canonical();
  ResponseSet s;
  s.set(answer("quality.precision", ResponseValue::of_number(Rational::parse("1.3"))));
  const ValidationReport r = validate(c, s);
  ASSERT_FALSE(r.valid());
  EXPECT_TRUE(has_code(r, Violation::Code::out_of_range, "quality.precision"));
  EXPECT_NE(r.violations.front().message.find("out of [0,1]"), std::string::npos);
}

TEST(Validate, FlagsUnknownIdsWithSuggestion) {
  const Catalog c = Catalog::load_canonical();
  ResponseSet s;
  s.set(answer("format.schemaa", ResponseValue::of_label("Y")));
  const ValidationReport r = validate(c, s);
  ASSERT_TRUE(has_code(r, Violation::Code::unknown_question, "format.schemaa"));
  EXPECT_NE(r.violations.front().message.find("format.schema"), std::string::npos);
}

TEST(Validate, FlagsInadmissibleLabelsAndDoubleBooking) {
  const Catalog c = Catalog::load_canonical();
  ResponseSet s;
  s.set(answer("data_layout.structure", ResponseValue::of_label("Tabular")));
  s.set(answer("format.schema", ResponseValue::of_number(Rational(1))));
  s.set(answer("format.standard", ResponseValue::of_label("Y")));
  s.omitted.insert("format.standard");
  const ValidationReport r = validate(c, s);
  EXPECT_TRUE(has_code(r, Violation::Code::inadmissible_value, "data_layout.structure"));
  EXPECT_TRUE(has_code(r, Violation::Code::inadmissible_value, "format.schema"));
  EXPECT_TRUE(has_code(r, Violation::Code::answered_and_omitted, "format.standard"));
}

TEST(Validate, VersionMismatchIsAnError) {
  const Catalog c = Catalog::load_canonical();
  ResponseSet s;
  s.catalog_version = "0.9.0";
  EXPECT_THROW((void)validate(c, s), ValidationError);
  s.catalog_version = "1.0.0";
  EXPECT_NO_THROW((void)validate(c, s));
}

TEST(Validate, ExclusivityGroupsAllowOneAffirmative) {
  CatalogDocument ext;
  ext.origin = "groups";
  for (const char* name : {"a", "b"}) {
    QuestionSpec q;
    q.id = std::string("format.excl_") + name;
    q.facet_id = "format";
    q.prompt = std::string("Exclusive ") + name;
    q.allowed_values = {"Y", "N"};
    q.score_rule.map = {{"Y", Rational(1)}, {"N", Rational(0)}};
    q.score_rule.default_binary = true;
    q.exclusivity_group = "excl";
    ext.questions.push_back(q);
  }
  const Catalog c = Catalog::load_canonical().extended_with(ext);
  ResponseSet s;
  s.set(answer("format.excl_a", ResponseValue::of_label("Y")));
  s.set(answer("format.excl_b", ResponseValue::of_label("N")));
  EXPECT_TRUE(validate(c, s).valid());
  s.set(answer("format.excl_b", ResponseValue::of_label("Y")));
  EXPECT_TRUE(has_code(validate(c, s), Violation::Code::exclusivity_conflict, "format.excl_b"));
}

TEST(Finalize, EmptySetOmitsEverything) {
  const Catalog c = Catalog::load_canonical();
  ResponseSet s;
  s.finalize_omitted(c);
  EXPECT_EQ(s.omitted.size(), 74u);
  EXPECT_TRUE(validate(c, s).valid());
}

TEST(Merge, OverlayWinsAndNotesSurvive) {
  const Catalog c = Catalog::load_canonical();
  ResponseSet base;
  base.dataset_id = "d";
  base.set(Response{"format.schema", ResponseValue::of_label("N"), Provenance::auto_profiler, "header row found"});
  base.set(answer("data_layout.structure", ResponseValue::of_label("Structured")));
  ResponseSet overlay;
  overlay.dataset_id = "d";
  overlay.set(answer("format.schema", ResponseValue::of_label("Y")));
  const MergeResult m = merge(c, base, overlay);
  EXPECT_TRUE(m.report.valid());
  const Response& r = m.merged.responses.at("format.schema");
  EXPECT_EQ(r.value, ResponseValue::of_label("Y"));
  EXPECT_EQ(r.provenance, Provenance::manual);
  EXPECT_EQ(r.note, "header row found");
  EXPECT_EQ(m.merged.responses.size(), 2u);
}

TEST(Merge, EmptyOverlayIsIdentity) {
  const Catalog c = Catalog::load_canonical();
  ResponseSet base;
  base.dataset_id = "d";
  base.set(Response{"format.schema", ResponseValue::of_label("Y"), Provenance::auto_profiler, ""});
  base.finalize_omitted(c);
  ResponseSet overlay;
  overlay.dataset_id = "d";
  EXPECT_EQ(merge(c, base, overlay).merged, base);
}

TEST(Merge, RejectsDifferentDatasets) {
  const Catalog c = Catalog::load_canonical();
  ResponseSet a, b;
  a.dataset_id = "a";
  b.dataset_id = "b";
  EXPECT_THROW((void)merge(c, a, b), ValidationError);
}

TEST(Merge, IsIdempotentOnRandomSets) {
  const Catalog c = Catalog::load_canonical();
  const auto& qs = c.questions();
  std::mt19937 rng(20261014);
  auto random_set = [&] {
    ResponseSet s;
    s.dataset_id = "d";
    for (const auto& q : qs) {
      switch (rng() % 4) {
        case 0: break;
        case 1: s.set(answer(q.id, ResponseValue::dont_know())); break;
        default:
          if (q.accepts_numeric() && rng() % 2) {
            s.set(answer(q.id, ResponseValue::of_number(Rational(static_cast<std::int64_t>(rng() % 5), 4))));
          } else if (!q.allowed_values.empty()) {
            s.set(answer(q.id, ResponseValue::of_label(q.allowed_values[rng() % q.allowed_values.size()]),
                         rng() % 3 ? "" : "note"));
          }
      }
    }
    return s;
  };
  for (int i = 0; i < 1000; ++i) {
    const ResponseSet a = random_set();
    const ResponseSet b = random_set();
    const ResponseSet once = merge(c, a, b).merged;
    EXPECT_EQ(merge(c, once, b).merged, once);
  }
}

TEST(AnswersFile, RoundTrips) {
  const Catalog c = Catalog::load_canonical();
  ResponseSet s;
  s.dataset_id = "india_prisons";
  s.catalog_version = "1.0.0";
  s.set(answer("data_layout.structure", ResponseValue::of_label("Structured")));
  s.set(Response{"quality.precision", ResponseValue::of_number(Rational(1, 3)), Provenance::manual,
                 "estimated from a validation sample"});
  s.set(Response{"format.schema", ResponseValue::of_label("Y"), Provenance::auto_profiler, ""});
  s.set(answer("quality.recall", ResponseValue::not_applicable()));
  s.finalize_omitted(c);
  const std::string text = write_answers(s);
  const ResponseSet back = parse_answers(c, text, "answers.yaml");
  EXPECT_EQ(back, s);
  EXPECT_EQ(write_answers(back), text);
}

TEST(AnswersFile, AcceptsShorthandAndReportsErrors) {
  const Catalog c = Catalog::load_canonical();
  const ResponseSet s = parse_answers(c, R"(dataset: demo
answers:
  data_volume.size: 0.5 GB
  format.file_format: CSV
  quality.precision: {value: 0.9, note: from QA}
)", "inline");
  EXPECT_EQ(s.responses.at("data_volume.size").value, ResponseValue::of_label("500MB_to_10GB"));
  EXPECT_EQ(s.responses.at("format.file_format").value, ResponseValue::of_label("csv"));
  EXPECT_EQ(s.responses.at("quality.precision").note, "from QA");
  EXPECT_EQ(s.omitted.size(), 71u);

  try {
    (void)parse_answers(c, "answers:\n  format.schema: {value: Y, provenance: guess}\n", "bad.yaml");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.where().line, 2u);
  }
  EXPECT_THROW((void)parse_answers(c, "answers: [unclosed\n", "broken.yaml"), ParseError);
  EXPECT_TRUE(parse_answers(c, "", "empty").responses.empty());
}

TEST(Replay, LoadsIndiaPrisons) {
  const ReplayFixture fx = from_replay_table(Catalog::load_canonical(), fixture("replay/india_prisons.tsv"));
  EXPECT_EQ(fx.dataset_id, "india_prisons");
  EXPECT_EQ(fx.rows.size(), 66u);
  EXPECT_EQ(fx.responses.responses.size(), 66u);
  EXPECT_TRUE(fx.has_printed_total);
  EXPECT_EQ(fx.printed_total, Rational::parse("44.25"));
  EXPECT_TRUE(fx.catalog.has_extensions());
  for (const auto& [id, r] : fx.responses.responses) EXPECT_EQ(r.provenance, Provenance::replay_fixture);
  EXPECT_EQ(fx.responses.responses.at("data_volume.size").value, ResponseValue::of_label("500MB_to_10GB"));
  EXPECT_TRUE(validate(fx.catalog, fx.responses).valid());
}

TEST(Replay, RoundTripsRowCount) {
  const Catalog c = Catalog::load_canonical();
  for (const char* name : {"india_prisons", "us_prisons", "resumes_public", "resumes_enterprise"}) {
    const ReplayFixture fx = from_replay_table(c, fixture(std::string("replay/") + name + ".tsv"));
    const std::string text = write_replay_table(fx);
    const ReplayFixture back = parse_replay_table(c, text, name);
    EXPECT_EQ(back.rows.size(), fx.rows.size()) << name;
    EXPECT_EQ(back.expected_scores, fx.expected_scores) << name;
    EXPECT_EQ(write_replay_table(back), text) << name;
  }
}

TEST(Replay, EmptyFileYieldsEmptySet) {
  const ReplayFixture fx = parse_replay_table(Catalog::load_canonical(), "", "empty.tsv");
  EXPECT_TRUE(fx.rows.empty());
  EXPECT_TRUE(fx.responses.responses.empty());
  EXPECT_EQ(fx.printed_total, Rational(0));
  EXPECT_EQ(fx.dataset_id, "empty");
}

TEST(Replay, RejectsMalformedRows) {
  const Catalog c = Catalog::load_canonical();
  auto line_of = [&](const std::string& text) -> std::optional<std::size_t> {
    try {
      (void)parse_replay_table(c, text, "bad.tsv");
    } catch (const ParseError& e) {
      return e.where().line;
    }
    return std::nullopt;
  };
  const std::string header = "facet\tquestion\tresponse\tscore\n";
  EXPECT_EQ(line_of(header + "Layout\tWhat is the data layout?\tStructured\n"), 2u);
  EXPECT_EQ(line_of(header + "Layout\tWhat is the data layout?\tStructured\tone\n"), 2u);
  EXPECT_EQ(line_of(header + "Layout\tWhat is the colour?\tBlue\t1\n"), 2u);
  EXPECT_EQ(line_of(header + "Layout\tWhat is the data layout?\tTabular\t1\n"), 2u);
  EXPECT_EQ(line_of(header + "Layout\tWhat is the data layout?\tStructured\t1\n" +
                    "Layout\tdata_layout.structure\tStructured\t1\n"),
            3u);
}

}  // namespace
}  // namespace dataworth
