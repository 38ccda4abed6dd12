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

#include "dmc/verbs.hpp"

#include <sstream>

#include "dmc/error.hpp"
#include "dmc/file_util.hpp"

namespace dmc {

LexiconTagger::LexiconTagger() {
  for (std::string_view w : DefaultMotionVerbs()) lexicon_.emplace(w);
}

LexiconTagger::LexiconTagger(std::set<std::string, std::less<>> lexicon)
    : lexicon_(std::move(lexicon)) {}

LexiconTagger LexiconTagger::FromFile(const std::filesystem::path& path) {
  std::istringstream in(ReadTextFile(path));
  std::set<std::string, std::less<>> words;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    for (const auto& t : Tokenize(line)) words.insert(t);
  }
  if (words.empty()) throw ValidationError("verb lexicon " + path.string() + " is empty");
  return LexiconTagger(std::move(words));
}

bool LexiconTagger::IsVerb(std::string_view t) const {
  if (Contains(t)) return true;
  const std::size_t n = t.size();
  auto stem = [&](std::size_t drop) { return std::string(t.substr(0, n - drop)); };
  auto doubled = [&](std::size_t suffix) {
    return n >= suffix + 3 && t[n - suffix - 1] == t[n - suffix - 2] &&
           Contains(t.substr(0, n - suffix - 1));
  };
  if (n > 3 && t.ends_with("ies") && Contains(stem(3) + "y")) return true;
  if (n > 2 && t.ends_with("es") && Contains(t.substr(0, n - 2))) return true;
  if (n > 1 && t.ends_with('s') && !t.ends_with("ss") && Contains(t.substr(0, n - 1))) return true;
  if (n > 3 && t.ends_with("ied") && Contains(stem(3) + "y")) return true;
  if (n > 2 && t.ends_with("ed")) {
    if (Contains(t.substr(0, n - 2)) || Contains(t.substr(0, n - 1)) || doubled(2)) return true;
  }
  if (n > 4 && t.ends_with("ying") && Contains(stem(4) + "ie")) return true;
  if (n > 3 && t.ends_with("ing")) {
    if (Contains(t.substr(0, n - 3)) || Contains(stem(3) + "e") || doubled(3)) return true;
  }
  return false;
}

std::size_t LexiconTagger::CountVerbs(const TokenSequence& tokens) const {
  std::size_t count = 0;
  for (const auto& t : tokens) {
    if (IsVerb(t)) ++count;
  }
  return count;
}

const char* ComplexityName(Complexity c) { return c == Complexity::kSimple ? "simple" : "complex"; }

VerbPartition PartitionByVerbs(std::string_view caption, const VerbTagger& tagger) {
  VerbPartition p;
  p.verb_count = tagger.CountVerbs(Tokenize(caption));
  p.label = p.verb_count <= 1 ? Complexity::kSimple : Complexity::kComplex;
  return p;
}

}  // namespace dmc
