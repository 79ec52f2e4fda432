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

#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "prosodic/parser.h"
#include "test_util.h"

namespace prosodic {
namespace {

std::string Syllabify(const std::string &word, const Grammar &g) {
  return Transcription(ParseWord(word, g), g.roles);
}

std::set<std::string> Bracketed(const std::vector<ProsodicTree> &trees) {
  std::set<std::string> out;
  for (const auto &t : trees) out.insert(ToBracketed(t));
  return out;
}

TEST_CASE("berber words syllabify as cited") {
  Pack p = testing::Load("berber");
  CHECK(Syllabify("txznt", p.grammar) == "t@x.z@nt");
  CHECK(Syllabify("bdu", p.grammar) == "b@.du");
  CHECK(Syllabify("atta", p.grammar) == "at.ta");
  CHECK(Syllabify("ttggwa", p.grammar) == "@t.t@gg.wa");
  CHECK(Syllabify("tskrt", p.grammar) == "t@s.k@rt");
  CHECK(Syllabify("tftktstt", p.grammar) == "t@f.t@kt.s@tt");
  auto atta = ParseAll(Tokenize("atta", p.grammar).symbols, p.grammar);
  CHECK(atta.trees.size() == 1);
}

TEST_CASE("every berber tree has an onset and a nucleus per syllable") {
  Pack p = testing::Load("berber");
  for (const char *w : {"txznt", "tftktstt", "bdu", "ssfktbd"}) {
    auto result = ParseAll(Tokenize(w, p.grammar).symbols, p.grammar);
    REQUIRE_FALSE(result.trees.empty());
    for (const auto &t : result.trees) {
      WordView v = Analyze(t, p.grammar.roles);
      for (const auto &s : v.syllables) {
        bool onset = false, nucleus = false;
        for (const auto &l : s.leaves) {
          onset |= l.slot == Slot::kOnset;
          nucleus |= l.slot == Slot::kNucleus;
        }
        CHECK(onset);
        CHECK(nucleus);
      }
      CHECK(EpentheticCount(t) <= 2 * static_cast<int>(v.syllables.size()));
      CHECK(CheckConstraints(t, p.grammar).ok);
    }
  }
}

TEST_CASE("hard constraints are exactly a filter on relaxed parses") {
  Pack p = testing::Load("berber");
  // A wholly empty syllable takes three empty slots, one over the cap.
  p.grammar.epenthesis_cap = 3;
  Grammar relaxed = p.grammar;
  std::erase_if(relaxed.constraints, [](const Constraint &c) {
    return c.kind != ConstraintKind::kMaximalOnset;
  });
  const std::vector<std::string> inventory = {"t", "k", "s", "n", "r", "a", "g"};
  std::mt19937 rng(7);
  std::set<ConstraintKind> seen;
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<std::string> word;
    int n = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < n; ++i) word.push_back(inventory[rng() % inventory.size()]);
    auto loose = ParseAll(word, relaxed);
    auto strict = ParseAll(word, p.grammar);
    std::set<std::string> expected;
    for (const auto &t : loose.trees) {
      ConstraintReport r = CheckConstraints(t, p.grammar);
      if (r.ok) expected.insert(ToBracketed(t));
      for (const auto &v : r.violations) seen.insert(v.kind);
    }
    CHECK(Bracketed(strict.trees) == expected);
  }
  CHECK(seen.count(ConstraintKind::kForbidEmptySyllable));
  CHECK(seen.count(ConstraintKind::kGeminate));
}

TEST_CASE("coda sonority rejects rising codas") {
  Pack p = testing::Load("berber");
  Grammar relaxed = p.grammar;
  std::erase_if(relaxed.constraints, [](const Constraint &c) {
    return c.kind == ConstraintKind::kCodaSonority;
  });
  // "tkn" as one syllable needs a rising coda k.n
  auto loose = ParseAll({"t", "k", "n"}, relaxed);
  bool found = false;
  for (const auto &t : loose.trees) {
    if (Analyze(t, p.grammar.roles).syllables.size() != 1) continue;
    found = true;
    ConstraintReport r = CheckConstraints(t, p.grammar);
    CHECK_FALSE(r.ok);
    CHECK(r.violations[0].kind == ConstraintKind::kCodaSonority);
  }
  CHECK(found);
}

TEST_CASE("selection is independent of candidate order") {
  Pack p = testing::Load("berber");
  std::mt19937 rng(11);
  for (const char *w : {"tftktstt", "txznt", "ttggwa", "tkkstt"}) {
    auto result = ParseAll(Tokenize(w, p.grammar).symbols, p.grammar);
    REQUIRE(result.trees.size() > 0);
    std::string first = ToBracketed(SelectParse(result.trees, p.grammar));
    for (int i = 0; i < 5; ++i) {
      auto shuffled = result.trees;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      CHECK(ToBracketed(SelectParse(shuffled, p.grammar)) == first);
    }
    std::pair<int, int> fewest{1 << 30, 1 << 30};
    for (const auto &t : result.trees)
      fewest = std::min(fewest, std::pair{MaximalOnsetViolations(t, p.grammar),
                                          EpentheticCount(t)});
    CHECK(EpentheticCount(SelectParse(result.trees, p.grammar)) == fewest.second);
  }
  CHECK_THROWS_AS(SelectParse({}, p.grammar), std::invalid_argument);
}

TEST_CASE("tokenizer takes the longest symbol and honours dots") {
  Pack p = testing::Load("urdu");
  TokenizedWord w = Tokenize("bhaa.rat", p.grammar);
  CHECK(w.symbols == std::vector<std::string>{"bh", "a", "a", "r", "a", "t"});
  CHECK(w.piece_starts == std::vector<size_t>{0, 3});
  TokenizedWord v = Tokenize("ba.i", p.grammar);
  CHECK(NormalizeInput(v, p.grammar) == std::vector<std::string>{"b", "a", "?", "i"});
  CHECK_THROWS_AS(Tokenize("bx%", p.grammar), ParseError);
}

TEST_CASE("unparseable input reports the longest prefix") {
  Pack p = testing::Load("universal");
  auto result = ParseAll({"t", "a", "t", "t", "t"}, p.grammar);
  CHECK(result.trees.empty());
  CHECK(result.longest_prefix >= 2);
  CHECK_FALSE(result.diagnostic.empty());
  CHECK_THROWS_AS(ParseWord("tattt", p.grammar), ParseError);
}

}  // namespace
}  // namespace prosodic
