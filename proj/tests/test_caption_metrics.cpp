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
#include <functional>
#include <map>

#include "dmc/caption_metrics.hpp"
#include "dmc/error.hpp"
#include "dmc/text.hpp"
#include "support.hpp"

using namespace dmc;

namespace {

TokenSequence T(std::initializer_list<const char*> words) {
  return TokenSequence(std::vector<std::string>(words.begin(), words.end()));
}

TokenSequence Words(const std::string& s) { return Tokenize(s); }

// Plain re-derivations used as oracles.

std::map<std::vector<std::string>, int> Grams(const TokenSequence& t, std::size_t n) {
  std::map<std::vector<std::string>, int> m;
  for (std::size_t i = 0; i + n <= t.tokens().size(); ++i) {
    ++m[std::vector<std::string>(t.tokens().begin() + i, t.tokens().begin() + i + n)];
  }
  return m;
}

double OracleBleu(const TokenSequence& c, const std::vector<TokenSequence>& refs, std::size_t n) {
  if (c.tokens().empty()) return 0.0;
  double log_sum = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const auto cg = Grams(c, k);
    int match = 0, total = 0;
    for (const auto& [g, cnt] : cg) {
      int mx = 0;
      for (const auto& r : refs) {
        const auto rg = Grams(r, k);
        const auto it = rg.find(g);
        if (it != rg.end()) mx = std::max(mx, it->second);
      }
      match += std::min(cnt, mx);
      total += cnt;
    }
    if (total == 0 || match == 0) return 0.0;
    log_sum += std::log(static_cast<double>(match) / total);
  }
  const double clen = static_cast<double>(c.tokens().size());
  double best = 1e18, rlen = 0;
  for (const auto& r : refs) {
    const double d = std::abs(static_cast<double>(r.tokens().size()) - clen);
    if (d < best || (d == best && r.tokens().size() < rlen)) {
      best = d;
      rlen = static_cast<double>(r.tokens().size());
    }
  }
  const double bp = clen >= rlen ? 1.0 : std::exp(1.0 - rlen / clen);
  return bp * std::exp(log_sum / static_cast<double>(n));
}

double OracleCider(const TokenSequence& c, const std::vector<TokenSequence>& refs,
                   const std::vector<std::vector<TokenSequence>>& corpus) {
  const double docs = static_cast<double>(corpus.size());
  double total = 0.0;
  for (std::size_t n = 1; n <= 4; ++n) {
    std::map<std::vector<std::string>, int> df;
    for (const auto& doc : corpus) {
      std::map<std::vector<std::string>, int> seen;
      for (const auto& r : doc) {
        for (const auto& [g, cnt] : Grams(r, n)) seen[g] = 1;
      }
      for (const auto& [g, one] : seen) df[g] += one;
    }
    auto vec = [&](const TokenSequence& t) {
      std::map<std::vector<std::string>, double> v;
      for (const auto& [g, cnt] : Grams(t, n)) {
        const double d = df.count(g) ? df[g] : 0.0;
        v[g] = cnt * (std::log(docs) - std::log(std::max(1.0, d)));
      }
      return v;
    };
    auto norm = [](const std::map<std::vector<std::string>, double>& v) {
      double s = 0;
      for (const auto& [g, x] : v) s += x * x;
      return std::sqrt(s);
    };
    const auto vc = vec(c);
    double sum_n = 0.0;
    for (const auto& r : refs) {
      const auto vr = vec(r);
      double dot = 0.0;
      for (const auto& [g, x] : vc) {
        const auto it = vr.find(g);
        if (it != vr.end()) dot += std::min(x, it->second) * it->second;
      }
      const double nc = norm(vc), nr = norm(vr);
      double sim = 0.0;
      if (nc != 0.0 && nr != 0.0) sim = dot / (nc * nr);
      const double delta = static_cast<double>(c.tokens().size()) - static_cast<double>(r.tokens().size());
      sim *= std::exp(-delta * delta / (2.0 * 36.0));
      sum_n += sim;
    }
    total += sum_n / static_cast<double>(refs.size());
  }
  return total / 4.0 * 10.0;
}

// Over single-letter words (no stemming collapse) every maximum matching is
// enumerated and the fewest chunks kept.
std::pair<std::size_t, std::size_t> OracleMeteorAlignment(const TokenSequence& c,
                                                          const TokenSequence& r) {
  std::size_t best_m = 0, best_ch = 0;
  std::vector<int> map(c.tokens().size(), -1);
  std::vector<bool> used(r.tokens().size(), false);
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == c.tokens().size()) {
      std::size_t m = 0, ch = 0;
      int prev = -2;
      bool prev_matched = false;
      for (std::size_t k = 0; k < map.size(); ++k) {
        if (map[k] < 0) {
          prev_matched = false;
          continue;
        }
        ++m;
        if (!(prev_matched && map[k] == prev + 1)) ++ch;
        prev = map[k];
        prev_matched = true;
      }
      if (m > best_m || (m == best_m && m > 0 && ch < best_ch)) {
        best_m = m;
        best_ch = ch;
      }
      return;
    }
    go(i + 1);
    for (std::size_t j = 0; j < r.tokens().size(); ++j) {
      if (used[j] || r.tokens()[j] != c.tokens()[i]) continue;
      used[j] = true;
      map[i] = static_cast<int>(j);
      go(i + 1);
      map[i] = -1;
      used[j] = false;
    }
  };
  go(0);
  return {best_m, best_ch};
}

TokenSequence RandomLetters(Rng& rng, int max_len, int alphabet) {
  std::vector<std::string> t;
  const auto n = rng.UniformInt(1, max_len);
  for (std::int64_t i = 0; i < n; ++i) {
    t.push_back(std::string(1, static_cast<char>('a' + rng.UniformInt(0, alphabet - 1))));
  }
  return TokenSequence(std::move(t));
}

}  // namespace

TEST_CASE("tokenize") {
  CHECK(Tokenize("A person walks.").tokens() == std::vector<std::string>{"a", "person", "walks"});
  CHECK(Tokenize("doing a left foot squat").tokens().size() == 5);
  CHECK(Tokenize("").tokens().empty());
  CHECK(Tokenize("  ,.!  ").tokens().empty());
  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    const std::string s = testing::RandomCaption(rng) + ", AND " + testing::RandomCaption(rng) + "!?";
    const auto t = Tokenize(s);
    CHECK(Tokenize(t.Join()).tokens() == t.tokens());
    for (const auto& w : t.tokens()) CHECK(!w.empty());
  }
}

TEST_CASE("bleu fixtures") {
  const std::vector<TokenSequence> cat = {T({"the", "cat"})};
  CHECK(BleuN(T({"the", "the", "the"}), cat, 1) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  const std::vector<TokenSequence> abcd = {T({"a", "b", "c", "d"})};
  CHECK(BleuN(T({"a"}), abcd, 1) == doctest::Approx(std::exp(-3.0)).epsilon(1e-12));
  const auto s = Words("a person walks forward and turns left");
  CHECK(BleuN(s, std::vector{s}, 1) == 1.0);
  CHECK(BleuN(s, std::vector{s}, 4) == doctest::Approx(1.0));
  CHECK(BleuN(TokenSequence{}, std::vector{s}, 4) == 0.0);
}

TEST_CASE("bleu smoothing only rescues missing orders") {
  const std::vector<TokenSequence> ref = {T({"a", "b", "c", "d"})};
  const auto cand = T({"a", "c", "b", "d"});
  CHECK(BleuN(cand, ref, 4, false) == 0.0);
  const double smoothed = BleuN(cand, ref, 4, true);
  // p1 = 1, p2..p4 have no matches: 1/(3+1), 1/(2+1), 1/(1+1).
  CHECK(smoothed == doctest::Approx(std::pow(1.0 * 0.25 * (1.0 / 3) * 0.5, 0.25)));
  CHECK(BleuN(T({"x"}), ref, 1, true) == 0.0);
}

TEST_CASE("bleu matches the oracle") {
  Rng rng(21);
  for (int trial = 0; trial < 500; ++trial) {
    const auto c = Words(testing::RandomCaption(rng, 1, 12));
    std::vector<TokenSequence> refs;
    for (int r = 0, n = static_cast<int>(rng.UniformInt(1, 3)); r < n; ++r) {
      refs.push_back(Words(testing::RandomCaption(rng, 1, 12)));
    }
    for (std::size_t n = 1; n <= 4; ++n) {
      REQUIRE(BleuN(c, refs, n) == doctest::Approx(OracleBleu(c, refs, n)).epsilon(1e-12));
    }
  }
}

TEST_CASE("bleu clipping caps repeated tokens") {
  const std::vector<TokenSequence> ref = {T({"the", "cat", "sat"})};
  // Same length as the reference, so only clipping matters: 3 of 4 unigrams.
  CHECK(BleuN(T({"the", "cat", "cat", "sat"}), ref, 1) == doctest::Approx(0.75));
  CHECK(BleuN(T({"the", "cat", "cat", "sat"}), ref, 1) < BleuN(T({"the", "cat", "sat"}), ref, 1));
}

TEST_CASE("corpus bleu accumulator") {
  BleuAccumulator acc;
  const std::vector<TokenSequence> r1 = {T({"the", "cat"})};
  acc.Add(T({"the", "the", "the"}), r1);
  CHECK(acc.Score(1) == doctest::Approx(1.0 / 3));
  const std::vector<TokenSequence> r2 = {T({"a", "b"})};
  acc.Add(T({"a", "b"}), r2);
  // (1 + 2) / (3 + 2) clipped unigrams, c = 5 > r = 4.
  CHECK(acc.Score(1) == doctest::Approx(0.6));
  CHECK(acc.pairs() == 2);
}

TEST_CASE("rouge-l fixtures") {
  const auto ref = T({"police", "killed", "the", "gunman"});
  const auto cand = T({"police", "kill", "the", "gunman"});
  CHECK(LongestCommonSubsequence(cand, ref) == 3);
  CHECK(RougeL(cand, std::vector{ref}) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(RougeL(ref, std::vector{ref}) == 1.0);
  CHECK(RougeL(T({"x", "y"}), std::vector{ref}) == 0.0);
  CHECK(RougeL(TokenSequence{}, std::vector{ref}) == 0.0);
  // Max over references.
  CHECK(RougeL(cand, std::vector{T({"z"}), ref}) == doctest::Approx(0.75));
}

TEST_CASE("rouge-l uses beta 1.2") {
  const auto ref = T({"a", "b", "c", "d"});
  const auto cand = T({"a", "b"});
  const double p = 1.0, r = 0.5, b2 = 1.44;
  CHECK(RougeL(cand, std::vector{ref}) == doctest::Approx((1 + b2) * r * p / (r + b2 * p)));
}

TEST_CASE("cider fixtures") {
  const auto a = Words("a person walks forward slowly");
  const auto b = Words("someone jumps high twice");
  const std::vector<std::vector<TokenSequence>> corpus = {{a}, {b}};
  const auto stats = BuildCorpusStats(corpus);
  CHECK(stats.document_count() == 2);
  CHECK(Cider(a, std::vector{a}, stats) == doctest::Approx(10.0).epsilon(1e-9));
  CHECK(Cider(b, std::vector{a}, stats) == 0.0);

  const std::vector<std::vector<TokenSequence>> one = {{a}};
  CHECK(Cider(a, std::vector{a}, BuildCorpusStats(one)) == 0.0);
  CHECK_THROWS_AS(Cider(a, std::vector{a}, CorpusStats{}), ValidationError);
}

TEST_CASE("cider matches the oracle") {
  Rng rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::vector<TokenSequence>> corpus;
    for (int d = 0, n = static_cast<int>(rng.UniformInt(1, 6)); d < n; ++d) {
      std::vector<TokenSequence> doc;
      for (int r = 0, m = static_cast<int>(rng.UniformInt(1, 3)); r < m; ++r) {
        doc.push_back(Words(testing::RandomCaption(rng, 1, 9)));
      }
      corpus.push_back(doc);
    }
    const auto stats = BuildCorpusStats(corpus);
    const auto& refs = corpus[static_cast<std::size_t>(rng.UniformInt(0, corpus.size() - 1))];
    const auto c = Words(testing::RandomCaption(rng, 1, 9));
    REQUIRE(Cider(c, refs, stats) == doctest::Approx(OracleCider(c, refs, corpus)).epsilon(1e-9));
  }
}

TEST_CASE("corpus stats document frequency") {
  const std::vector<std::vector<TokenSequence>> corpus = {{T({"a", "b"}), T({"a"})},
                                                          {T({"a", "c"})}};
  const auto stats = BuildCorpusStats(corpus);
  CHECK(stats.DocumentFrequency(1, "a") == 2);
  CHECK(stats.DocumentFrequency(1, "b") == 1);
  CHECK(stats.DocumentFrequency(2, "a b") == 1);
  CHECK(stats.DocumentFrequency(1, "zzz") == 0);
}

TEST_CASE("cider symmetric for identical pair") {
  const auto a = Words("a person waves");
  const auto b = Words("a person waves");
  const std::vector<std::vector<TokenSequence>> corpus = {{a}, {Words("jump jump")}};
  const auto stats = BuildCorpusStats(corpus);
  CHECK(Cider(a, std::vector{b}, stats) == Cider(b, std::vector{a}, stats));
}

TEST_CASE("meteor fixtures") {
  const auto ten = Words("a person walks forward then turns left and sits down");
  REQUIRE(ten.tokens().size() == 10);
  CHECK(MeteorLite(ten, std::vector{ten}) == doctest::Approx(0.9995).epsilon(1e-12));
  CHECK(MeteorLite(T({"walk"}), std::vector{T({"walk"})}) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(MeteorLite(T({"x"}), std::vector{T({"y"})}) == 0.0);
}

TEST_CASE("meteor stem matching") {
  const auto al = AlignForMeteor(Words("he walked quickly"), Words("he walks quickly"));
  CHECK(al.matches == 3);
  CHECK(al.exact_matches == 2);
  CHECK(al.chunks == 1);
}

TEST_CASE("meteor alignment matches exhaustive search") {
  Rng rng(23);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto c = RandomLetters(rng, 7, 3);
    const auto r = RandomLetters(rng, 7, 3);
    const auto al = AlignForMeteor(c, r);
    const auto [m, ch] = OracleMeteorAlignment(c, r);
    REQUIRE(al.matches == m);
    REQUIRE(al.chunks == ch);
  }
}

TEST_CASE("metrics are invariant to reference order") {
  Rng rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = Words(testing::RandomCaption(rng));
    std::vector<TokenSequence> refs = {Words(testing::RandomCaption(rng)),
                                       Words(testing::RandomCaption(rng)),
                                       Words(testing::RandomCaption(rng))};
    std::vector<TokenSequence> rev(refs.rbegin(), refs.rend());
    CHECK(BleuN(c, refs, 4, true) == BleuN(c, rev, 4, true));
    CHECK(RougeL(c, refs) == RougeL(c, rev));
    CHECK(MeteorLite(c, refs) == MeteorLite(c, rev));
  }
}

TEST_CASE("metric ranges") {
  Rng rng(25);
  std::vector<std::vector<TokenSequence>> corpus;
  for (int i = 0; i < 10; ++i) corpus.push_back({Words(testing::RandomCaption(rng))});
  const auto stats = BuildCorpusStats(corpus);
  for (int trial = 0; trial < 300; ++trial) {
    const auto c = Words(testing::RandomCaption(rng));
    const auto& r = corpus[static_cast<std::size_t>(trial % 10)];
    for (double v : {BleuN(c, r, 1), BleuN(c, r, 4, true), RougeL(c, r), MeteorLite(c, r)}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
    const double ci = Cider(c, r, stats);
    CHECK(ci >= 0.0);
    CHECK(ci <= 10.0 + 1e-9);
  }
}

TEST_CASE("porter stemmer samples") {
  CHECK(PorterStem("caresses") == "caress");
  CHECK(PorterStem("ponies") == "poni");
  CHECK(PorterStem("walking") == "walk");
  CHECK(PorterStem("hopping") == "hop");
  CHECK(PorterStem("relational") == "relat");
  CHECK(PorterStem("generalization") == "gener");
  CHECK(PorterStem("a") == "a");
}

TEST_CASE("pair scorer names") {
  for (auto m : kAllCaptionMetrics) CHECK(ParseCaptionMetric(CaptionMetricName(m)) == m);
  CHECK_THROWS_AS(ParseCaptionMetric("bertscore"), ValidationError);
  CHECK_THROWS_AS(MakePairScorer(CaptionMetric::kCider), ValidationError);
}
