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

#include "doctest.h"
#include "prosodic/pack.h"
#include "prosodic/parser.h"
#include "test_util.h"

namespace prosodic {
namespace {

bool Accepts(const Pack &p, const std::string &word) {
  try {
    ParseWord(word, p.grammar);
    return true;
  } catch (const ParseError &) {
    return false;
  }
}

TEST_CASE("packs carry their parameter settings") {
  Pack berber = testing::Load("berber");
  CHECK(berber.grammar.params.Get("VoicedStops") == "yes");
  CHECK(berber.grammar.params.Get("AspiratedStops") == "no");
  CHECK(berber.grammar.epenthesis_cap == 2);
  Pack urdu = testing::Load("urdu");
  CHECK(urdu.grammar.params.Get("SuperHeavySyllable") == "yes");
  CHECK(urdu.grammar.params.Get("AspiratedStops") == "yes");
  Pack universal = testing::Load("universal");
  CHECK(universal.grammar.params.Get("VoicedStops") == "no");
  CHECK(universal.grammar.params.Get("SuperHeavySyllable") == "no");
}

TEST_CASE("loading one pack leaves the others untouched") {
  Pack before = testing::Load("universal");
  Pack urdu = testing::Load("urdu");
  Pack after = testing::Load("universal");
  CHECK(before.grammar == after.grammar);
  CHECK(urdu.grammar.FindSegment("Th") != nullptr);
  CHECK(after.grammar.FindSegment("Th") == nullptr);
  CHECK(after.grammar.FindSegment("b") == nullptr);
}

TEST_CASE("language files shadow universal ones") {
  Pack berber = testing::Load("berber");
  REQUIRE(berber.search_path.size() == 2);
  CHECK(ResolvePackFile(berber, "segments.pg")->parent_path().filename() == "berber");
  CHECK(ResolvePackFile(berber, "features.pg")->parent_path().filename() ==
        "universal");
  CHECK_FALSE(ResolvePackFile(berber, "nothing.pg").has_value());
  Pack dutch = testing::Load("dutch");
  CHECK(dutch.durations.Get("Onset.simple:liquid") ==
        std::chrono::milliseconds(95));
}

TEST_CASE("inventory settings select stops") {
  Pack universal = testing::Load("universal");
  CHECK(Accepts(universal, "pa"));
  CHECK_FALSE(Accepts(universal, "ba"));
  CHECK_FALSE(Accepts(universal, "pha"));
  Pack mandarin = testing::Load("mandarin");
  CHECK(Accepts(mandarin, "pha"));
  CHECK_FALSE(Accepts(mandarin, "ba"));
  Pack thai = testing::Load("thai");
  CHECK(Accepts(thai, "pa"));
  CHECK(Accepts(thai, "pha"));
  CHECK(Accepts(thai, "ba"));
  for (const char *s : {"bh", "dh", "gh"}) {
    CHECK(thai.grammar.FindSegment(s) == nullptr);
    CHECK(std::any_of(thai.grammar.filtered_out.begin(), thai.grammar.filtered_out.end(),
                      [&](const Segment &seg) { return seg.symbol == s; }));
  }
  Pack overridden = testing::Load("universal", testing::Params({{"AspiratedStops", "yes"}}));
  CHECK(Accepts(overridden, "pha"));
}

TEST_CASE("pack errors") {
  CHECK_THROWS_AS(testing::Load("klingon"), PackError);
  CHECK_THROWS_AS(testing::Load("broken"), CompileError);
  CHECK_THROWS_AS(testing::Load("berber", testing::Params({{"Nope", "yes"}})),
                  CompileError);
}

TEST_CASE("corpus files parse and validate") {
  auto items = ParseCorpus("# c\nbdu\tsyllables\t2\n\nbdu\tsyllabification\tb@.du\n");
  REQUIRE(items.size() == 2);
  CHECK(items[1].expected == "b@.du");
  CHECK_THROWS(ParseCorpus("bdu syllables 2\n"));
  CHECK_THROWS(ParseCorpus("bdu\tcolour\tred\n"));
  for (const char *name : {"berber", "urdu", "dutch"}) {
    Pack p = testing::Load(name);
    CHECK_FALSE(p.corpus_files.empty());
    ValidationReport r = ValidatePack(p);
    INFO(r.ToString());
    CHECK(r.ok());
    CHECK(r.passed > 0);
  }
  Pack berber = testing::Load("berber");
  ItemResult wrong = EvaluateItem(berber, {"bdu", "syllables", "3", "<t>"});
  CHECK_FALSE(wrong.pass);
  CHECK(wrong.actual == "2");
  ItemResult junk = EvaluateItem(berber, {"b%u", "syllables", "1", "<t>"});
  CHECK_FALSE(junk.pass);
}

}  // namespace
}  // namespace prosodic
