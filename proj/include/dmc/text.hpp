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
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace dmc {

/// Lowercased word tokens; never contains an empty token.
class TokenSequence {
 public:
  TokenSequence() = default;
  /// Throws ValidationError if any token is empty.
  explicit TokenSequence(std::vector<std::string> tokens);

  const std::vector<std::string>& tokens() const { return tokens_; }
  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }
  const std::string& operator[](std::size_t i) const { return tokens_[i]; }
  auto begin() const { return tokens_.begin(); }
  auto end() const { return tokens_.end(); }

  /// Tokens joined by single spaces.
  std::string Join() const;

  friend bool operator==(const TokenSequence&, const TokenSequence&) = default;

 private:
  std::vector<std::string> tokens_;
};

/// ASCII letters are lowercased; any byte that is not an ASCII letter or
/// digit and not part of a multi-byte UTF-8 sequence ends the current token.
TokenSequence Tokenize(std::string_view text);

/// Counts of all n-grams of order `n`, keyed by the space-joined n-gram.
std::map<std::string, int> CountNgrams(const TokenSequence& tokens, std::size_t n);

/// Porter (1980) suffix-stripping stemmer for lowercase English words.
std::string PorterStem(std::string_view word);

}  // namespace dmc
