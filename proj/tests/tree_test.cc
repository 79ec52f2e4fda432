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

#include "doctest.h"
#include "prosodic/parser.h"
#include "prosodic/tree.h"
#include "test_util.h"

namespace prosodic {
namespace {

TEST_CASE("bracketed form round-trips") {
  const std::string text =
      "Word(Syl(Onset(X:t) / Rime(Nucleus(X:\xE2\x88\x85) \\ Coda(X:x))))";
  ProsodicTree t = ParseBracketed(text);
  CHECK(ToBracketed(t) == text);
  CHECK(t.children[0].label == "Syl");
  CHECK(t.children[0].HeadIndex() == 1);
  CHECK(t.children[0].children[1].HeadIndex() == 0);
  CHECK(t.Yield() == std::vector<std::string>{"t", "x"});
  CHECK(t.Leaves().size() == 3);
  CHECK(t.span == Span{0, 2});
  CHECK_THROWS_AS(ParseBracketed("Syl(Onset(X:t)"), TreeFormatError);
  CHECK_THROWS_AS(ParseBracketed("Syl(Onset(X:t) | Rime(X:a))"), TreeFormatError);
}

TEST_CASE("parsed trees survive both text forms") {
  Pack p = testing::Load("berber");
  for (const char *w : {"txznt", "bdu", "tsskrt", "attagwa"}) {
    ProsodicTree t = ParseWord(w, p.grammar);
    CHECK(TreeFromJson(ToJson(t)) == t);
    ProsodicTree back = ParseBracketed(ToBracketed(t));
    CHECK(ToBracketed(back) == ToBracketed(t));
    CHECK(back.Yield() == t.Yield());
  }
}

TEST_CASE("transcription marks empty nuclei and stress") {
  Pack p = testing::Load("berber");
  ProsodicTree t = ParseWord("txznt", p.grammar);
  CHECK(Transcription(t, p.grammar.roles) == "t@x.z@nt");
  CHECK(Transcription(t, p.grammar.roles, 1) == "t@x.'z@nt");
  WordView v = Analyze(t, p.grammar.roles);
  REQUIRE(v.syllables.size() == 2);
  CHECK(v.syllables[0].OnsetFilled());
  CHECK(v.syllables[1].LastFilled()->leaf->segment->symbol == "t");
}

}  // namespace
}  // namespace prosodic
