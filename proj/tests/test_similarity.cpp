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

#include "dmc/error.hpp"
#include "dmc/similarity.hpp"
#include "support.hpp"

using namespace dmc;

namespace {

std::vector<double> Basis(std::size_t dim, std::size_t k) {
  std::vector<double> v(dim, 0.0);
  v[k] = 1.0;
  return v;
}

EmbeddingTable Table(const std::vector<std::pair<std::string, std::vector<double>>>& rows) {
  EmbeddingTable t;
  for (const auto& [id, v] : rows) t.Add(id, v);
  return t;
}

/// Applies a seeded random rotation (product of Givens rotations).
std::vector<double> Rotate(std::vector<double> v, std::uint64_t seed) {
  Rng rng(seed);
  for (int r = 0; r < 40; ++r) {
    const auto i = static_cast<std::size_t>(rng.UniformInt(0, v.size() - 1));
    auto j = static_cast<std::size_t>(rng.UniformInt(0, v.size() - 1));
    if (i == j) j = (j + 1) % v.size();
    const double th = rng.Uniform(0.0, 6.283185307179586);
    const double a = v[i], b = v[j];
    v[i] = std::cos(th) * a - std::sin(th) * b;
    v[j] = std::sin(th) * a + std::cos(th) * b;
  }
  return v;
}

}  // namespace

TEST_CASE("cosine examples") {
  const std::vector<double> e0 = {1, 0}, e1 = {0, 1}, neg = {-1, 0};
  CHECK(Cosine(e0, e0) == 1.0);
  CHECK(Cosine(e0, e1) == 0.0);
  CHECK(Cosine(e0, neg) == -1.0);
  const std::vector<double> u = {1, 2, 3}, v = {-2, 0.5, 4}, u3 = {3, 6, 9};
  CHECK(Cosine(u, v) == doctest::Approx(Cosine(v, u)));
  CHECK(Cosine(u3, v) == doctest::Approx(Cosine(u, v)));
  const std::vector<double> zero = {0, 0};
  CHECK_THROWS_AS(Cosine(zero, e0), ValidationError);
  CHECK_THROWS_AS(Cosine(u, e0), ValidationError);
}

TEST_CASE("tmr similarity") {
  const auto m = Table({{"a", {1, 0}}, {"b", {0, 1}}, {"c", {1, 1}}});
  CHECK(TmrSimilarity(m, m) == doctest::Approx(1.0));
  const auto t = Table({{"a", {1, 0}}, {"b", {0, 1}}, {"c", {1, -1}}});
  CHECK(TmrSimilarity(m, t) == doctest::Approx(2.0 / 3));
  const auto other = Table({{"x", {1, 0}}});
  try {
    TmrSimilarity(m, other);
    FAIL("expected an id mismatch");
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("x") != std::string::npos);
    CHECK(msg.find("a") != std::string::npos);
  }
  CHECK_THROWS_AS(TmrSimilarity(EmbeddingTable{}, EmbeddingTable{}), ValidationError);
}

TEST_CASE("embedding table validation and loading") {
  EmbeddingTable t;
  t.Add("a", {1, 2});
  CHECK_THROWS_AS(t.Add("a", {1, 2}), ValidationError);
  CHECK_THROWS_AS(t.Add("b", {1, 2, 3}), ValidationError);
  CHECK_THROWS_AS(t.Add("c", {NAN, 1}), ValidationError);
  const auto loaded = EmbeddingTable::FromText("{\"id\":\"a\",\"vector\":[1,2]}\n\n{\"id\":\"b\",\"vector\":[3,4.5]}\n");
  CHECK(loaded.size() == 2);
  CHECK(loaded.dim() == 2);
  CHECK(loaded.Get("b")[1] == 4.5);
  CHECK_THROWS_AS(EmbeddingTable::FromText("{\"id\":1}\n"), ParseError);
  CHECK_THROWS_AS(EmbeddingTable::FromText("nope\n"), ParseError);
}

TEST_CASE("car identity structure gives recall one") {
  EmbeddingTable m, t;
  for (std::size_t i = 0; i < 64; ++i) {
    m.Add("id" + std::to_string(i), Basis(64, i));
    t.Add("id" + std::to_string(i), Basis(64, i));
  }
  const auto r = CarRetrieval(m, t, {}, 32, 1);
  CHECK(r.recall_at_1 == 1.0);
  CHECK(r.batches == 2);
  CHECK(r.queries == 64);
  CHECK_THROWS_AS(CarRetrieval(m, t, {}, 65, 1), ValidationError);
}

TEST_CASE("car one query ranked second") {
  EmbeddingTable m, t;
  for (std::size_t i = 0; i < 32; ++i) {
    m.Add("id" + std::to_string(i), Basis(32, i));
    std::vector<double> q = Basis(32, i);
    if (i == 5) q[6] = 2.0;  // closer to motion 6 than to its own
    t.Add("id" + std::to_string(i), q);
  }
  const auto r = CarRetrieval(m, t, {}, 32, 7);
  CHECK(r.recall_at_1 == doctest::Approx(31.0 / 32));
}

TEST_CASE("car is seeded and orthonormal invariant") {
  Rng rng(51);
  EmbeddingTable m, t, s, mr, tr, sr;
  for (std::size_t i = 0; i < 100; ++i) {
    std::vector<double> a(8), b(8), c(8);
    for (auto& x : a) x = rng.Uniform(-1, 1);
    for (std::size_t k = 0; k < 8; ++k) b[k] = a[k] + rng.Uniform(-0.8, 0.8);
    for (auto& x : c) x = rng.Uniform(-1, 1);
    const auto id = "m" + std::to_string(i);
    m.Add(id, a);
    t.Add(id, b);
    s.Add(id, c);
    mr.Add(id, Rotate(a, 99));
    tr.Add(id, Rotate(b, 99));
    sr.Add(id, Rotate(c, 99));
  }
  const std::vector<EmbeddingTable> sh = {s}, shr = {sr};
  const auto r1 = CarRetrieval(m, t, sh, 32, 3);
  const auto r2 = CarRetrieval(m, t, sh, 32, 3);
  CHECK(r1.ToJson() == r2.ToJson());
  CHECK(r1.dropped == 4);
  CHECK(r1.recall_at_1 >= 0.0);
  CHECK(r1.recall_at_1 <= 1.0);
  REQUIRE(r1.shuffled_recall_at_1.size() == 1);
  CHECK(r1.shuffled_recall_at_1[0] < r1.recall_at_1);
  const auto rot = CarRetrieval(mr, tr, shr, 32, 3);
  CHECK(rot.recall_at_1 == r1.recall_at_1);
  CHECK(rot.shuffled_recall_at_1[0] == r1.shuffled_recall_at_1[0]);
  CHECK(TmrSimilarity(mr, tr) == doctest::Approx(TmrSimilarity(m, t)));
}
