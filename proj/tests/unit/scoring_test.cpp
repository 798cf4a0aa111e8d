// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dataworth Authors

#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "dataworth/scoring.hpp"
#include "oracle/desk_oracle.hpp"
#include "unit/test_support.hpp"

namespace dataworth {
namespace {

using testing_support::fixture;

Response manual(const std::string& id, ResponseValue v) { return Response{id, std::move(v), Provenance::manual, ""}; }

/// Random valid response set over every catalog question, some omitted.
ResponseSet random_set(const Catalog& c, std::mt19937& rng, const std::string& dataset = "d") {
  ResponseSet s;
  s.dataset_id = dataset;
  for (const auto& q : c.questions()) {
    const unsigned pick = rng() % 10;
    if (pick == 0) continue;
    if (pick == 1) {
      s.set(manual(q.id, ResponseValue::dont_know()));
    } else if (pick == 2) {
      s.set(manual(q.id, ResponseValue::not_applicable()));
    } else if (q.accepts_numeric() && pick < 6) {
      s.set(manual(q.id, ResponseValue::of_number(Rational(static_cast<std::int64_t>(rng() % 101), 100))));
    } else if (!q.allowed_values.empty()) {
      s.set(manual(q.id, ResponseValue::of_label(q.allowed_values[rng() % q.allowed_values.size()])));
    }
  }
  s.finalize_omitted(c);
  return s;
}

WeightProfile random_profile(const Catalog& c, std::mt19937& rng, AggregationMode mode) {
  WeightProfile p;
  p.mode = mode;
  for (const auto& q : c.questions()) {
    if (rng() % 3 == 0) p.weights[q.id] = Rational(static_cast<std::int64_t>(rng() % 8), 4);
  }
  p.default_weight = Rational(1);
  return p;
}

TEST(ScoreResponse, FollowsScoreRules) {
  const Catalog c = Catalog::load_canonical();
  EXPECT_EQ(score_response(c.lookup("data_usage.ease"), ResponseValue::of_label("Moderate")), Rational::parse("0.6"));
  EXPECT_EQ(score_response(c.lookup("quality.precision"), ResponseValue::of_number(Rational::parse("0.85"))),
            Rational::parse("0.85"));
  EXPECT_EQ(score_response(c.lookup("quality.precision"), ResponseValue::of_label("Medium")), Rational(1, 2));
  for (const auto& q : c.questions()) {
    if (q.kind != ResponseKind::binary) continue;
    EXPECT_EQ(score_response(q, ResponseValue::dont_know()), Rational(0)) << q.id;
    EXPECT_EQ(score_response(q, ResponseValue::not_applicable()), Rational(0)) << q.id;
  }
  const QuestionSpec& freq = c.lookup("data_age.update_frequency");
  EXPECT_EQ(score_response(freq, ResponseValue::not_applicable()), Rational(0));
  EXPECT_EQ(score_response(freq, ResponseValue::dont_know()), Rational(0));
  EXPECT_THROW((void)score_response(freq, ResponseValue::of_label("Hourly")), ValidationError);
  EXPECT_THROW((void)score_response(c.lookup("quality.precision"), ResponseValue::of_number(Rational(2))),
               ValidationError);
}

TEST(ComputeValue, EmptySetScoresZero) {
  const Catalog c = Catalog::load_canonical();
  ResponseSet s;
  s.finalize_omitted(c);
  EXPECT_EQ(compute_value(c, s, WeightProfile::raw_sum()).total, Rational(0));
  EXPECT_EQ(compute_value(c, s, WeightProfile::normalized_equal()).total, Rational(0));
  WeightProfile no_renorm = WeightProfile::normalized_equal();
  no_renorm.renormalize_on_omission = false;
  EXPECT_EQ(compute_value(c, s, no_renorm).total, Rational(0));
}

TEST(ComputeValue, NormalizedAllOnesIsOne) {
  const Catalog c = Catalog::load_canonical();
  ResponseSet s;
  for (const auto& q : c.questions()) {
    for (const auto& [label, score] : q.score_rule.map) {
      if (score == Rational(1)) {
        s.set(manual(q.id, ResponseValue::of_label(label)));
        break;
      }
    }
    if (!s.responses.count(q.id) && q.accepts_numeric()) s.set(manual(q.id, ResponseValue::of_number(Rational(1))));
  }
  s.finalize_omitted(c);
  const ValueReport r = compute_value(c, s, WeightProfile::normalized_equal());
  EXPECT_EQ(r.total, Rational(1));
  EXPECT_EQ(r.answered, 73u);  // source_count tops out at 0.5
  EXPECT_EQ(compute_value(c, s, WeightProfile::raw_sum()).total, Rational(73));
}

TEST(ComputeValue, ResolvedNormalizedWeightsSumToOne) {
  const Catalog c = Catalog::load_canonical();
  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    WeightProfile p = random_profile(c, rng, AggregationMode::normalized);
    Rational sum;
    for (const auto& [id, w] : resolve_weights(c, p)) sum += w;
    EXPECT_EQ(sum, Rational(1));
  }
}

TEST(ComputeValue, ReportsCountsAndSubtotals) {
  const Catalog c = Catalog::load_canonical();
  ResponseSet s;
  s.dataset_id = "demo";
  s.set(manual("data_layout.structure", ResponseValue::of_label("Semi-structured")));
  s.set(manual("format.schema", ResponseValue::of_label("Y")));
  s.set(manual("format.standard", ResponseValue::dont_know()));
  s.set(manual("quality.precision", ResponseValue::not_applicable()));
  s.finalize_omitted(c);
  const ValueReport r = compute_value(c, s, WeightProfile::raw_sum());
  EXPECT_EQ(r.total, Rational(3, 2));
  EXPECT_EQ(r.answered, 4u);
  EXPECT_EQ(r.omitted, 70u);
  EXPECT_EQ(r.dont_know, 1u);
  EXPECT_EQ(r.not_applicable, 1u);
  ASSERT_EQ(r.facets.size(), 3u);
  EXPECT_EQ(r.facets[0].facet_id, "data_layout");
  EXPECT_EQ(r.facets[1].subtotal, Rational(1));
  Rational sum;
  for (const auto& q : r.questions) sum += q.contribution;
  EXPECT_EQ(sum, r.total);

  const ValueReport n = compute_value(c, s, WeightProfile::normalized_equal());
  EXPECT_EQ(n.total, Rational(3, 8));
  WeightProfile whole = WeightProfile::normalized_equal();
  whole.renormalize_on_omission = false;
  EXPECT_EQ(compute_value(c, s, whole).total, Rational(3, 148));
}

TEST(ComputeValue, RejectsInvalidInput) {
  const Catalog c = Catalog::load_canonical();
  ResponseSet s;
  s.set(manual("quality.precision", ResponseValue::of_number(Rational::parse("1.3"))));
  EXPECT_THROW((void)compute_value(c, s, WeightProfile::raw_sum()), InvalidResponsesError);
  ResponseSet ok;
  WeightProfile bad;
  bad.weights["no.such"] = Rational(1);
  EXPECT_THROW((void)compute_value(c, ok, bad), NotFoundError);
  WeightProfile negative;
  negative.weights["format.schema"] = Rational(-1);
  EXPECT_THROW((void)compute_value(c, ok, negative), ValidationError);
}

TEST(Properties, NormalizedTotalIsBounded) {
  const Catalog c = Catalog::load_canonical();
  std::mt19937 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const ResponseSet s = random_set(c, rng);
    WeightProfile p = random_profile(c, rng, AggregationMode::normalized);
    p.renormalize_on_omission = rng() % 2;
    const ValueReport r = compute_value(c, s, p);
    EXPECT_GE(r.total, Rational(0));
    EXPECT_LE(r.total, Rational(1));
    const ValueReport raw = compute_value(c, s, WeightProfile::raw_sum());
    EXPECT_GE(raw.total, Rational(0));
    EXPECT_LE(raw.total, Rational(static_cast<std::int64_t>(raw.answered)));
  }
}

TEST(Properties, RaisingOneScoreNeverLowersTotal) {
  const Catalog c = Catalog::load_canonical();
  std::mt19937 rng(2);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    ResponseSet s = random_set(c, rng);
    const WeightProfile p = random_profile(c, rng, rng() % 2 ? AggregationMode::raw_sum : AggregationMode::normalized);
    const QuestionSpec& q = c.questions()[rng() % c.questions().size()];
    if (!s.responses.count(q.id)) continue;
    const Rational before_v = score_response(q, s.responses.at(q.id).value);
    std::optional<ResponseValue> better;
    for (const auto& [label, score] : q.score_rule.map) {
      if (score > before_v) better = ResponseValue::of_label(label);
    }
    if (!better) continue;
    const Rational before = compute_value(c, s, p).total;
    s.set(manual(q.id, *better));
    EXPECT_GE(compute_value(c, s, p).total, before) << q.id;
    ++checked;
  }
  EXPECT_GT(checked, 200);
}

TEST(Properties, RawSumIsLinearOverDisjointHalves) {
  const Catalog c = Catalog::load_canonical();
  std::mt19937 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const ResponseSet whole = random_set(c, rng);
    ResponseSet left, right;
    for (const auto& [id, r] : whole.responses) (rng() % 2 ? left : right).set(r);
    const WeightProfile p = random_profile(c, rng, AggregationMode::raw_sum);
    const Rational sum = compute_value(c, left, p).total + compute_value(c, right, p).total;
    const ResponseSet merged = merge(c, left, right).merged;
    EXPECT_EQ(compute_value(c, merged, p).total, sum);
    EXPECT_EQ(compute_value(c, whole, p).total, sum);
  }
}

TEST(Properties, ScalingWeightsPreservesRanking) {
  const Catalog c = Catalog::load_canonical();
  std::mt19937 rng(4);
  for (int i = 0; i < 1000; ++i) {
    const WeightProfile p = random_profile(c, rng, AggregationMode::raw_sum);
    WeightProfile scaled = p;
    const Rational k(static_cast<std::int64_t>(1 + rng() % 9), static_cast<std::int64_t>(1 + rng() % 4));
    scaled.default_weight = p.default_weight * k;
    for (auto& [id, w] : scaled.weights) w = w * k;
    std::vector<ValueReport> a, b;
    for (int d = 0; d < 3; ++d) {
      const ResponseSet s = random_set(c, rng, "ds" + std::to_string(d));
      a.push_back(compute_value(c, s, p));
      b.push_back(compute_value(c, s, scaled));
      EXPECT_EQ(b.back().total, a.back().total * k);
    }
    const ComparisonReport ra = compare(a), rb = compare(b);
    ASSERT_EQ(ra.ranking.size(), rb.ranking.size());
    for (std::size_t j = 0; j < ra.ranking.size(); ++j) EXPECT_EQ(ra.ranking[j].first, rb.ranking[j].first);
  }
}

TEST(Properties, WhatIfDeltasAreExact) {
  const Catalog c = Catalog::load_canonical();
  std::mt19937 rng(5);
  for (int i = 0; i < 1000; ++i) {
    const ResponseSet s = random_set(c, rng);
    const WeightProfile p =
        random_profile(c, rng, rng() % 2 ? AggregationMode::raw_sum : AggregationMode::normalized);
    std::vector<Change> changes;
    const int n = 1 + static_cast<int>(rng() % 5);
    for (int k = 0; k < n; ++k) {
      const QuestionSpec& q = c.questions()[rng() % c.questions().size()];
      const std::string v = q.allowed_values.empty() ? "0.5" : q.allowed_values[rng() % q.allowed_values.size()];
      changes.push_back({q.id, v});
    }
    const DeltaReport d = what_if(c, s, p, changes);
    Rational sum;
    for (const auto& ch : d.changes) sum += ch.delta;
    const Rational fresh = compute_value(c, d.updated, p).total;
    EXPECT_EQ(fresh, d.new_total);
    EXPECT_EQ(d.base_total + sum, fresh);
    EXPECT_EQ(d.base_total, compute_value(c, s, p).total);
  }
}

TEST(WhatIf, FlipsMoveTotalByOne) {
  const Catalog c = Catalog::load_canonical();
  ResponseSet s;
  s.set(manual("transformation.anonymized", ResponseValue::of_label("N")));
  s.set(manual("sensitivity.medical", ResponseValue::of_label("N")));
  const WeightProfile raw = WeightProfile::raw_sum();
  EXPECT_EQ(what_if(c, s, raw, {{"transformation.anonymized", "Y"}}).changes.at(0).delta, Rational(1));
  EXPECT_EQ(what_if(c, s, raw, {{"sensitivity.medical", "Y"}}).changes.at(0).delta, Rational(-1));
  const DeltaReport none = what_if(c, s, raw, {});
  EXPECT_EQ(none.new_total, none.base_total);
  EXPECT_TRUE(none.changes.empty());
  EXPECT_THROW((void)what_if(c, s, raw, {{"sensitivity.medical", "Perhaps"}}), ValidationError);
  EXPECT_THROW((void)what_if(c, s, raw, {{"sensitivity.medicl", "Y"}}), NotFoundError);
  EXPECT_EQ(s.responses.at("sensitivity.medical").value, ResponseValue::of_label("N"));
}

TEST(Compare, OrdersByTotalThenId) {
  ValueReport a, b, c;
  a.dataset_id = "A";
  b.dataset_id = "B";
  c.dataset_id = "C";
  a.total = b.total = Rational(10);
  c.total = Rational(11);
  const ComparisonReport r = compare({b, a, c});
  ASSERT_EQ(r.ranking.size(), 3u);
  EXPECT_EQ(r.ranking[0].first, "C");
  EXPECT_EQ(r.ranking[1].first, "A");
  EXPECT_EQ(r.ranking[2].first, "B");
  EXPECT_EQ(r.winner, "C");
  EXPECT_THROW((void)compare({a}), ValidationError);
  ValueReport other = b;
  other.catalog_version = "2.0.0";
  EXPECT_THROW((void)compare({a, other}), ValidationError);
  other = b;
  other.profile_fingerprint = "different";
  EXPECT_THROW((void)compare({a, other}), ValidationError);
}

struct ReplayCase {
  const char* file;
  const char* printed;
};

class ReplayOracle : public ::testing::TestWithParam<ReplayCase> {};

TEST_P(ReplayOracle, EngineSumEqualsDeskSum) {
  const auto path = fixture(std::string("replay/") + GetParam().file);
  const oracle::DeskSum desk = oracle::desk_sum(path.string());
  const ReplayVerdict v = replay_check(from_replay_table(Catalog::load_canonical(), path));
  EXPECT_EQ(v.engine_sum.repr(), desk.total);
  EXPECT_EQ(static_cast<int>(v.rows), desk.rows);
  EXPECT_EQ(desk.printed_total, GetParam().printed);
  EXPECT_EQ(v.printed_total, Rational::parse(GetParam().printed));
  for (const auto& d : v.discrepancies) EXPECT_NE(d.printed, d.catalog_score);
}

INSTANTIATE_TEST_SUITE_P(WorkedTables, ReplayOracle,
                         ::testing::Values(ReplayCase{"india_prisons.tsv", "44.25"},
                                           ReplayCase{"us_prisons.tsv", "49.25"},
                                           ReplayCase{"resumes_public.tsv", "37"},
                                           ReplayCase{"resumes_enterprise.tsv", "45"}));

TEST(Replay, SingleRowFixture) {
  const ReplayFixture fx = parse_replay_table(Catalog::load_canonical(),
                                              "facet\tquestion\tresponse\tscore\n"
                                              "Data Layout\tWhat is the data layout?\tStructured\t1\n",
                                              "single.tsv");
  const ReplayVerdict v = replay_check(fx);
  EXPECT_EQ(v.engine_sum, Rational(1));
  EXPECT_TRUE(v.discrepancies.empty());
  EXPECT_FALSE(v.has_printed_total);
}

TEST(Replay, DiscrepanciesListCatalogDisagreements) {
  const ReplayVerdict v =
      replay_check(from_replay_table(Catalog::load_canonical(), fixture("replay/india_prisons.tsv")));
  bool saw_error_free = false;
  for (const auto& d : v.discrepancies) {
    if (d.question_id == "quality.error_free") {
      saw_error_free = true;
      EXPECT_EQ(d.printed, Rational(1));
      EXPECT_EQ(d.catalog_score, Rational(0));
    }
  }
  EXPECT_TRUE(saw_error_free);
  Rational drift;
  for (const auto& d : v.discrepancies) drift += d.printed - d.catalog_score;
  EXPECT_EQ(v.engine_sum - v.catalog_total, drift);
}

TEST(Replay, CompareWorkedPairs) {
  const Catalog c = Catalog::load_canonical();
  auto report = [&](const char* name) {
    return replay_check(from_replay_table(c, fixture(std::string("replay/") + name + ".tsv"))).report;
  };
  EXPECT_EQ(compare({report("india_prisons"), report("us_prisons")}).winner, "us_prisons");
  EXPECT_EQ(compare({report("resumes_public"), report("resumes_enterprise")}).winner, "resumes_enterprise");
}

TEST(WeightsFile, RoundTrips) {
  WeightProfile p = WeightProfile::normalized_equal();
  p.renormalize_on_omission = false;
  p.weights["format.schema"] = Rational(3);
  p.weights["quality.precision"] = Rational(1, 3);
  const WeightProfile back = parse_weights(write_weights(p), "weights.yaml");
  EXPECT_EQ(back.mode, p.mode);
  EXPECT_EQ(back.weights, p.weights);
  EXPECT_EQ(back.fingerprint(), p.fingerprint());
  EXPECT_THROW((void)parse_weights("mode: fancy\n", "w.yaml"), ParseError);
  EXPECT_THROW((void)parse_weights("weights: {format.schema: heavy}\n", "w.yaml"), ParseError);
}

}  // namespace
}  // namespace dataworth
