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

#include <cmath>
#include <cstring>
#include <limits>

#include "dmc/annotation.hpp"
#include "dmc/annotation_json.hpp"
#include "dmc/error.hpp"
#include "dmc/motion.hpp"
#include "dmc/timestamp.hpp"
#include "support.hpp"

using namespace dmc;
using dmc::testing::Ann;
using dmc::testing::Seg;

TEST_CASE("timestamp parse examples") {
  CHECK(ParseTimestamp("00:05:09").centiseconds() == 509);
  CHECK(ParseTimestamp("00:05:09").seconds() == doctest::Approx(5.09));
  CHECK(ParseTimestamp("00:00:00").centiseconds() == 0);
  CHECK(ParseTimestamp("01:02:50").centiseconds() == 6250);
  CHECK(ParseTimestamp("99:59:99").centiseconds() == 599999);
}

TEST_CASE("timestamp format examples") {
  CHECK(FormatTimestamp(Timestamp(0)) == "00:00:00");
  CHECK(FormatTimestamp(Timestamp(509)) == "00:05:09");
  CHECK(FormatTimestamp(Timestamp(6250)) == "01:02:50");
  CHECK_THROWS_AS(FormatTimestamp(Timestamp(600000)), RangeError);
}

TEST_CASE("timestamp errors name the field") {
  auto field_of = [](const char* text) {
    try {
      ParseTimestamp(text);
    } catch (const ParseError& e) {
      return e.field();
    }
    return std::string("none");
  };
  CHECK(field_of("00:60:00") == "seconds");
  CHECK(field_of("00:00:1x") == "centiseconds");
  CHECK(field_of("a0:00:00") == "minutes");
  CHECK(field_of("00:00") != "none");
  CHECK(field_of("00:00:00:00") != "none");
  CHECK(field_of("0:00:00") != "none");
  CHECK(field_of("") != "none");
  CHECK_THROWS_AS(Timestamp(-1), RangeError);
}

TEST_CASE("timestamp round trip over a stride of the range") {
  for (std::int64_t cs = 0; cs < Timestamp::kFormatLimit; cs += 997) {
    const Timestamp t(cs);
    REQUIRE(ParseTimestamp(FormatTimestamp(t)) == t);
  }
}

TEST_CASE("motion round trip of zeros is bitwise") {
  testing::TempDir dir("motion");
  const auto m = MotionSequence::Zeros("z", 2, 22);
  SaveMotion(m, dir / "z.dmc");
  const auto back = LoadMotion(dir / "z.dmc");
  CHECK(back == m);
  CHECK(back.frame_rate_hz() == 20.0);
  CHECK(back.duration_s() == doctest::Approx(0.1));
}

TEST_CASE("motion round trip of random data") {
  Rng rng(5);
  std::vector<float> v(100 * 22 * 3);
  for (auto& x : v) x = static_cast<float>(rng.Uniform(-2.0, 2.0));
  const MotionSequence m("random", 100, 22, 29.97, v);
  const auto bytes = EncodeMotion(m);
  CHECK(bytes.size() == 18 + 6 + v.size() * 4);
  const auto back = DecodeMotion(bytes);
  CHECK(back == m);
  CHECK(std::memcmp(back.positions().data(), v.data(), v.size() * 4) == 0);
}

TEST_CASE("motion decode errors are distinct") {
  const auto m = MotionSequence::Zeros("ten", 10, 2);
  auto bytes = EncodeMotion(m);
  auto kind_of = [](std::vector<unsigned char> b) {
    try {
      DecodeMotion(b);
    } catch (const MotionFormatError& e) {
      return static_cast<int>(e.kind());
    }
    return -1;
  };
  using K = MotionFormatError::Kind;
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  CHECK(kind_of(bad_magic) == static_cast<int>(K::kBadMagic));
  // Header says 10 frames, payload holds 9.
  auto short_payload = bytes;
  short_payload.resize(bytes.size() - 2 * 3 * 4);
  CHECK(kind_of(short_payload) == static_cast<int>(K::kTruncated));
  auto extra = bytes;
  extra.push_back(0);
  CHECK(kind_of(extra) == static_cast<int>(K::kSizeMismatch));
  auto nan = bytes;
  const float q = std::numeric_limits<float>::quiet_NaN();
  std::memcpy(nan.data() + bytes.size() - 4, &q, 4);
  CHECK(kind_of(nan) == static_cast<int>(K::kNonFinite));
  CHECK(kind_of(bytes) == -1);
}

TEST_CASE("motion constructor validates") {
  CHECK_THROWS_AS(MotionSequence("a", 0, 1, 20.0, {}), ValidationError);
  CHECK_THROWS_AS(MotionSequence("a", 1, 1, 20.0, {0, 0}), ValidationError);
  CHECK_THROWS_AS(MotionSequence("a", 1, 1, 0.0, {0, 0, 0}), ValidationError);
  CHECK_THROWS_AS(MotionSequence("a", 1, 1, 20.0, {0, INFINITY, 0}), ValidationError);
}

TEST_CASE("load of missing motion file is an io error") {
  CHECK_THROWS_AS(LoadMotion("/nonexistent/x.dmc"), IoError);
}

TEST_CASE("annotation validation examples") {
  CHECK(ValidateAnnotation(Ann({Seg(0, 200), Seg(200, 400)}, 400), true).empty());

  const auto over = ValidateAnnotation(Ann({Seg(0, 500)}, 400), true);
  REQUIRE(over.size() == 1);
  CHECK(over[0].segment_index == 0);
  CHECK(over[0].rule == ViolationRule::kEndExceedsDuration);

  const auto a = Ann({Seg(0, 300), Seg(200, 400)}, 400);
  const auto strict = ValidateAnnotation(a, true);
  REQUIRE(strict.size() == 1);
  CHECK(strict[0].rule == ViolationRule::kOverlap);
  CHECK(strict[0].segment_index == 1);
  CHECK(ValidateAnnotation(a, false).empty());
}

TEST_CASE("annotation validation other rules") {
  auto rules = [](const DenseAnnotation& a) {
    std::vector<ViolationRule> r;
    for (const auto& v : ValidateAnnotation(a, true)) r.push_back(v.rule);
    return r;
  };
  CHECK(rules(Ann({Seg(0, 100, "")}, 100)) == std::vector{ViolationRule::kEmptyCaption});
  CHECK(rules(Ann({Seg(100, 100)}, 200)) == std::vector{ViolationRule::kNonPositiveLength});
  const auto unsorted = rules(Ann({Seg(100, 200), Seg(0, 50)}, 200));
  CHECK(std::find(unsorted.begin(), unsorted.end(), ViolationRule::kUnsorted) != unsorted.end());
}

TEST_CASE("annotation json lines round trip") {
  Rng rng(3);
  std::vector<DenseAnnotation> all;
  for (int i = 0; i < 20; ++i) all.push_back(testing::RandomAnnotation(rng, "seq" + std::to_string(i)));
  const auto text = DumpAnnotationLines(all);
  CHECK(ParseAnnotationLines(text) == all);
  CHECK(ParseAnnotationLines(text + "\n\n") == all);
}

TEST_CASE("annotation json errors carry line numbers") {
  const std::string text =
      "{\"id\":\"a\",\"duration_cs\":100,\"segments\":[]}\n"
      "{\"id\":\"b\",\"duration_cs\":\"x\",\"segments\":[]}\n";
  try {
    ParseAnnotationLines(text);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(ParseAnnotationLines("{not json\n"), ParseError);
  CHECK_THROWS_AS(ReadAnnotationFile("/nonexistent/file.jsonl"), IoError);
}

TEST_CASE("atomic entries check duration consistency") {
  AtomicEntry a;
  a.id = "a";
  a.caption = "walk";
  a.motion = MotionSequence::Zeros("a", 40, 2);
  a.gt_duration_s = 2.0;
  CHECK_NOTHROW(ValidateAtomic(a));
  a.gt_duration_s = 2.2;
  CHECK_THROWS_AS(ValidateAtomic(a), ValidationError);
  a.gt_duration_s = 2.0;
  a.alignment_score = 1.5;
  CHECK_THROWS_AS(ValidateAtomic(a), ValidationError);
}
