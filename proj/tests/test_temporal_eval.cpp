// Copyright 2026 The DMC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <numeric>

#include "dmc/error.hpp"
#include "dmc/report.hpp"
#include "dmc/temporal.hpp"
#include "support.hpp"

using namespace dmc;
using testing::Ann;
using testing::Seg;

namespace {

bool HasTiedIou(const std::vector<TimedSegment>& p, const std::vector<TimedSegment>& r) {
  std::vector<testing::Rational> seen;
  for (const auto& a : p) {
    for (const auto& b : r) {
      const auto q = testing::IouRational(a, b);
      if (q.num == 0) continue;
      for (const auto& o : seen) {
        if (q.num * o.den == o.num * q.den) return true;
      }
      seen.push_back(q);
    }
  }
  return false;
}

}  // namespace

TEST_CASE("segment iou examples") {
  CHECK(SegmentIou(Seg(0, 200), Seg(0, 200)) == 1.0);
  CHECK(SegmentIou(Seg(0, 200), Seg(100, 300)) == doctest::Approx(1.0 / 3));
  CHECK(SegmentIou(Seg(0, 100), Seg(200, 300)) == 0.0);
  CHECK(SegmentIou(Seg(0, 100), Seg(100, 300)) == 0.0);
}

TEST_CASE("greedy match example") {
  const auto preds = Ann({Seg(0, 1000), Seg(0, 500)});
  const auto refs = Ann({Seg(0, 500), Seg(0, 1000)});
  const auto m = GreedyMatch(preds, refs);
  REQUIRE(m.pairs.size() == 2);
  // Equal IoU: the smaller ref index goes first.
  CHECK(m.pairs[0].pred == 1);
  CHECK(m.pairs[0].ref == 0);
  CHECK(m.pairs[1].pred == 0);
  CHECK(m.pairs[1].ref == 1);
  CHECK(m.pairs[0].iou == 1.0);
  CHECK(m.unmatched_preds.empty());
}

TEST_CASE("greedy match on disjoint sets") {
  const auto m = GreedyMatch(Ann({Seg(0, 100)}), Ann({Seg(200, 300), Seg(400, 500)}));
  CHECK(m.pairs.empty());
  CHECK(m.unmatched_preds == std::vector<std::size_t>{0});
  CHECK(m.unmatched_refs == std::vector<std::size_t>{0, 1});
}

TEST_CASE("greedy match equals the brute-force replay") {
  Rng rng(41);
  for (int trial = 0; trial < 3000; ++trial) {
    const auto p = testing::RandomIntervals(rng, static_cast<std::size_t>(rng.UniformInt(0, 6)), 40);
    const auto r = testing::RandomIntervals(rng, static_cast<std::size_t>(rng.UniformInt(0, 6)), 40);
    const auto m = GreedyMatch(Ann(p), Ann(r));
    const auto oracle = testing::BruteGreedy(p, r);
    REQUIRE(m.pairs.size() == oracle.size());
    for (std::size_t k = 0; k < oracle.size(); ++k) {
      REQUIRE(m.pairs[k].pred == oracle[k].first);
      REQUIRE(m.pairs[k].ref == oracle[k].second);
    }
    REQUIRE(m.unmatched_preds.size() + m.pairs.size() == p.size());
    REQUIRE(m.unmatched_refs.size() + m.pairs.size() == r.size());
  }
}

TEST_CASE("greedy is usually optimal") {
  // Predictions scattered around a partition-like reference timeline.
  Rng rng(7);
  int optimal = 0;
  const int trials = 2000;
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<TimedSegment> r, p;
    std::int64_t cursor = 0;
    const auto nr = rng.UniformInt(1, 6);
    for (std::int64_t i = 0; i < nr; ++i) {
      const auto len = rng.UniformInt(50, 400);
      cursor += rng.UniformInt(0, 50);
      r.push_back(Seg(cursor, cursor + len));
      cursor += len;
    }
    const auto np = rng.UniformInt(1, 6);
    for (std::int64_t i = 0; i < np; ++i) {
      if (rng.Uniform01() < 0.8) {
        const auto& near = r[static_cast<std::size_t>(rng.UniformInt(0, nr - 1))];
        const auto start = std::max<std::int64_t>(0, near.start.centiseconds() + rng.UniformInt(-60, 60));
        auto end = near.end.centiseconds() + rng.UniformInt(-60, 60);
        if (end <= start) end = start + 10;
        p.push_back(Seg(start, end));
      } else {
        const auto start = rng.UniformInt(0, cursor);
        p.push_back(Seg(start, start + rng.UniformInt(20, 400)));
      }
    }
    const auto m = GreedyMatch(Ann(p), Ann(r));
    double sum = 0.0;
    for (const auto& x : m.pairs) sum += x.iou;
    if (sum >= testing::OptimalIouSum(p, r) - 1e-12) ++optimal;
  }
  MESSAGE("greedy optimal on " << optimal << " of " << trials);
  CHECK(optimal >= trials * 95 / 100);
}

TEST_CASE("tiou and f1 examples") {
  const auto refs = Ann({Seg(0, 200), Seg(200, 400)});
  const auto perfect = TiouF1(GreedyMatch(refs, refs), 2, 2);
  CHECK(perfect.tiou_pct == 100.0);
  CHECK(perfect.f1_pct == 100.0);

  const auto preds = Ann({Seg(0, 100)});
  const auto r = TiouF1(GreedyMatch(preds, refs), 1, 2);
  CHECK(r.tiou_pct == doctest::Approx(50.0));
  REQUIRE(r.f1_per_threshold.size() == 4);
  CHECK(r.f1_per_threshold[0] == doctest::Approx(2.0 / 3));
  CHECK(r.f1_per_threshold[1] == doctest::Approx(2.0 / 3));
  CHECK(r.f1_per_threshold[2] == 0.0);
  CHECK(r.f1_pct == doctest::Approx(100.0 / 3));

  const auto none = TiouF1(GreedyMatch(Ann({Seg(500, 600)}), refs), 1, 2);
  CHECK(none.tiou_pct == 0.0);
  CHECK(none.f1_pct == 0.0);
  const auto empty = TiouF1(MatchResult{}, 0, 2);
  CHECK(empty.degenerate);
  CHECK(empty.f1_pct == 0.0);
}

TEST_CASE("tiou and f1 are permutation invariant and monotone") {
  Rng rng(43);
  for (int trial = 0; trial < 300; ++trial) {
    auto p = testing::RandomIntervals(rng, 5, 500000);
    auto r = testing::RandomIntervals(rng, 5, 500000);
    if (HasTiedIou(p, r)) continue;
    const auto base = TiouF1(GreedyMatch(Ann(p), Ann(r)), p.size(), r.size());
    std::vector<std::size_t> order(5);
    std::iota(order.begin(), order.end(), 0);
    rng.Shuffle(std::span<std::size_t>(order));
    std::vector<TimedSegment> p2, r2;
    for (auto k : order) {
      p2.push_back(p[k]);
      r2.push_back(r[k]);
    }
    const auto perm = TiouF1(GreedyMatch(Ann(p2), Ann(r2)), 5, 5);
    CHECK(perm.tiou_pct == doctest::Approx(base.tiou_pct));
    CHECK(perm.f1_pct == doctest::Approx(base.f1_pct));

    p.push_back(Seg(590000, 590010));
    const auto more = TiouF1(GreedyMatch(Ann(p), Ann(r)), p.size(), r.size());
    CHECK(more.tiou_pct == doctest::Approx(base.tiou_pct));
    CHECK(more.f1_pct <= base.f1_pct + 1e-12);
  }
}

TEST_CASE("thresholded caption eval") {
  const auto refs = Ann({Seg(0, 200, "a person walks"), Seg(200, 400, "a person runs")});
  CaptionScorerSet set{{CaptionMetric::kBleu1, CaptionMetric::kRougeL}, nullptr, true};
  const auto self = ThresholdedCaptionEval(refs, refs, set);
  CHECK(self.at(CaptionMetric::kBleu1) == 100.0);
  CHECK(self.at(CaptionMetric::kRougeL) == 100.0);

  // IoU 0.5 survives 0.3 and 0.5 only.
  const auto preds = Ann({Seg(0, 100, "a person walks")});
  const auto r = ThresholdedCaptionEval(preds, refs, set);
  CHECK(r.at(CaptionMetric::kBleu1) == doctest::Approx(50.0));

  const auto none = ThresholdedCaptionEval(Ann({}, 400), refs, set);
  CHECK(none.at(CaptionMetric::kBleu1) == 0.0);
}

TEST_CASE("aggregate frame labels") {
  const std::vector<std::string> labels = {"walk", "walk", "walk", "jump", "jump"};
  const auto a = AggregateFrameLabels(labels, 20.0, "f");
  REQUIRE(a.size() == 2);
  CHECK(a.segments[0].start.centiseconds() == 0);
  CHECK(a.segments[0].end.centiseconds() == 15);
  CHECK(a.segments[0].caption == "walk");
  CHECK(a.segments[1].end.centiseconds() == 25);
  CHECK(a.duration.centiseconds() == 25);

  CHECK(AggregateFrameLabels(std::vector<std::string>(7, "x"), 20.0).size() == 1);
  CHECK(AggregateFrameLabels(std::vector<std::string>{"A", "B", "A"}, 20.0).size() == 3);
  CHECK_THROWS_AS(AggregateFrameLabels(std::vector<std::string>{}, 20.0), ValidationError);
  CHECK_THROWS_AS(AggregateFrameLabels(labels, 0.0), ValidationError);
}

TEST_CASE("aggregated span equals frames over fps") {
  Rng rng(44);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> labels;
    const auto n = rng.UniformInt(1, 200);
    for (std::int64_t i = 0; i < n; ++i) labels.push_back(rng.Uniform01() < 0.2 ? "b" : "a");
    const auto a = AggregateFrameLabels(labels, 20.0);
    CHECK(a.segments.back().end.centiseconds() == n * 5);
    CHECK(a.segments.front().start.centiseconds() == 0);
    CHECK(ValidateAnnotation(a, true).empty());
  }
}

// ---------------------------------------------------------------------------
// Report assembly

TEST_CASE("self evaluation is perfect") {
  Rng rng(45);
  std::vector<DenseAnnotation> refs;
  for (int i = 0; i < 30; ++i) refs.push_back(testing::RandomAnnotation(rng, "seq" + std::to_string(i)));
  const auto rep = Evaluate(refs, refs, EvalConfig{});
  CHECK(rep.corpus.tiou_pct == 100.0);
  CHECK(rep.corpus.f1_pct == 100.0);
  CHECK(rep.corpus.caption.at(CaptionMetric::kBleu1) == 100.0);
  CHECK(rep.corpus.caption.at(CaptionMetric::kRougeL) == 100.0);
  CHECK(rep.corpus.soda.f1 == doctest::Approx(rep.corpus.caption.at(CaptionMetric::kMeteor)));
  CHECK(rep.warnings.empty());
}

TEST_CASE("missing predictions score zero with a warning") {
  const auto refs = std::vector{Ann({Seg(0, 100, "walk")}, 100, "a"), Ann({Seg(0, 100, "run")}, 100, "b")};
  const auto preds = std::vector{refs[0]};
  const auto rep = Evaluate(preds, refs, EvalConfig{});
  CHECK(rep.corpus.tiou_pct == doctest::Approx(50.0));
  CHECK(rep.warnings.size() == 1);
  CHECK_FALSE(rep.sequences[1].has_prediction);
}

TEST_CASE("empty prediction set gives an all-zero report") {
  const auto refs = std::vector{Ann({Seg(0, 100, "walk")}, 100, "a"), Ann({Seg(0, 100, "run")}, 100, "b")};
  const auto rep = Evaluate({}, refs, EvalConfig{});
  CHECK(rep.corpus.tiou_pct == 0.0);
  CHECK(rep.corpus.soda.f1 == 0.0);
  CHECK(rep.warnings.size() == 2);
}

TEST_CASE("evaluation input errors") {
  const auto a = Ann({Seg(0, 100, "walk")}, 100, "a");
  CHECK_THROWS_AS(Evaluate({a}, {a, a}, EvalConfig{}), ValidationError);
  CHECK_THROWS_AS(Evaluate({Ann({Seg(0, 100, "walk")}, 100, "zzz")}, {a}, EvalConfig{}), ValidationError);
  EvalConfig bad;
  bad.iou_thresholds = {0.5, 0.3};
  CHECK_THROWS_AS(bad.Validate(), ValidationError);
  CHECK_THROWS_AS(EvalConfig::FromJson({{"unknown", 1}}), ValidationError);
}

TEST_CASE("config json round trip and report echo") {
  EvalConfig c;
  c.iou_thresholds = {0.5};
  c.metrics = {CaptionMetric::kMeteor};
  c.soda_iou_weighted = false;
  const auto back = EvalConfig::FromJson(c.ToJson());
  CHECK(back.iou_thresholds == c.iou_thresholds);
  CHECK(back.metrics == c.metrics);
  CHECK(back.soda_iou_weighted == false);
  const auto a = Ann({Seg(0, 100, "walk")}, 100, "a");
  const auto j = Evaluate({a}, {a}, c).ToJson();
  CHECK(j["config"] == c.ToJson());
  CHECK(j["schema_version"] == kReportSchemaVersion);
}

TEST_CASE("report does not depend on thread count") {
  Rng rng(46);
  std::vector<DenseAnnotation> refs, preds;
  for (int i = 0; i < 40; ++i) {
    refs.push_back(testing::RandomAnnotation(rng, "s" + std::to_string(i)));
    preds.push_back(testing::RandomAnnotation(rng, "s" + std::to_string(i)));
  }
  EvalConfig one, many;
  many.threads = 8;
  CHECK(Evaluate(preds, refs, one).ToJson().dump() == Evaluate(preds, refs, many).ToJson().dump());
}

TEST_CASE("external scores feed soda_external") {
  const auto ref = Ann({Seg(0, 100, "walk"), Seg(100, 200, "run")}, 200, "q");
  const auto pred = Ann({Seg(0, 100, "walk")}, 200, "q");
  const auto table = ExternalScoreTable::FromText(
      R"({"ref_ids":["q#0","q#1"],"pred_ids":["q#0"],"scores":[[0.5],[0.9]]})");
  const auto rep = Evaluate({pred}, {ref}, EvalConfig{}, &table);
  REQUIRE(rep.corpus.soda_external.has_value());
  CHECK(rep.corpus.soda_external->precision == doctest::Approx(90.0));
  CHECK(rep.corpus.soda_external->recall == doctest::Approx(45.0));
}
