// Copyright 2026 The prosodic Authors.
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

#include <random>

#include "doctest.h"
#include "oracle.h"
#include "prosodic/parser.h"

namespace prosodic {
namespace {

std::set<std::string> ChartParses(const std::vector<std::string> &word,
                                  const Grammar &g) {
  std::set<std::string> out;
  for (const auto &t : ParseAll(word, g).trees) out.insert(ToBracketed(t));
  return out;
}

TEST_CASE("oracle agrees on hand-checked words") {
  Grammar g = Compile(oracle::kToyGrammar);
  // "ta": t.a with a filled onset and empty coda, or two syllables.
  auto ta = oracle::Enumerate({"t", "a"});
  CHECK(ta.count("Word(Syl(Onset(X:t) / Rime(Nucleus(X:a) \\ Coda(X:\xE2\x88\x85))))"));
  CHECK(ta == ChartParses({"t", "a"}, g));
  CHECK(oracle::Enumerate({"a", "a", "a"}) == ChartParses({"a", "a", "a"}, g));
}

TEST_CASE("chart parser matches brute force on random words") {
  Grammar g = Compile(oracle::kToyGrammar);
  std::mt19937 rng(2026);
  const auto &alphabet = oracle::Alphabet();
  size_t nonempty = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> word;
    int n = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) word.push_back(alphabet[rng() % alphabet.size()]);
    auto expected = oracle::Enumerate(word);
    auto actual = ChartParses(word, g);
    CHECK(actual == expected);
    nonempty += !expected.empty();
  }
  CHECK(nonempty > 100);
}

}  // namespace
}  // namespace prosodic
