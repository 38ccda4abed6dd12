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

#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dmc/text.hpp"

namespace dmc {

/// Counts verbs in a tokenized caption.
class VerbTagger {
 public:
  virtual ~VerbTagger() = default;
  virtual std::size_t CountVerbs(const TokenSequence& tokens) const = 0;
};

/// Lexicon lookup with -s/-es/-ies, -ed/-ied and -ing folding (including
/// doubled final consonants and dropped final e).
class LexiconTagger : public VerbTagger {
 public:
  /// The bundled motion-verb lexicon.
  LexiconTagger();
  explicit LexiconTagger(std::set<std::string, std::less<>> lexicon);

  /// One lowercase word per line; '#' starts a comment.
  static LexiconTagger FromFile(const std::filesystem::path& path);

  std::size_t CountVerbs(const TokenSequence& tokens) const override;
  bool IsVerb(std::string_view token) const;
  std::size_t lexicon_size() const { return lexicon_.size(); }

 private:
  bool Contains(std::string_view word) const { return lexicon_.find(word) != lexicon_.end(); }

  std::set<std::string, std::less<>> lexicon_;
};

/// Words of the bundled lexicon, base forms and irregular inflections.
std::vector<std::string_view> DefaultMotionVerbs();

enum class Complexity { kSimple, kComplex };
const char* ComplexityName(Complexity c);

struct VerbPartition {
  std::size_t verb_count = 0;
  Complexity label = Complexity::kSimple;
};

/// At most one verb is simple, two or more is complex.
VerbPartition PartitionByVerbs(std::string_view caption, const VerbTagger& tagger);

}  // namespace dmc
