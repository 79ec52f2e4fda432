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

#include <map>

#include "doctest.h"
#include "prosodic/parser.h"
#include "prosodic/temporal.h"
#include "test_util.h"

namespace prosodic {
namespace {

using std::chrono::milliseconds;

struct Interval {
  long begin_ms, end_ms;
  bool operator==(const Interval &) const = default;
};

void CollectLeaves(const TimedNode &t, std::vector<std::pair<std::string, Interval>> *out) {
  if (t.node->IsLeaf()) {
    if (!t.node->IsEmptyLeaf())
      out->push_back({t.node->segment->symbol,
                      {static_cast<long>(t.start.count() / 1000),
                       static_cast<long>(t.end.count() / 1000)}});
    return;
  }
  for (const auto &c : t.children) CollectLeaves(c, out);
}

const TimedNode *FindLabel(const TimedNode &t, const std::string &label) {
  if (t.node->label == label) return &t;
  for (const auto &c : t.children)
    if (const TimedNode *f = FindLabel(c, label)) return f;
  return nullptr;
}

// Leaf intervals (ms) of the first onset, relative to its start.
std::map<std::string, Interval> OnsetSpans(const Pack &p, const std::string &word) {
  TimedTree t = Solve(ParseWord(word, p.grammar), p.durations, p.overlap,
                      p.grammar.roles);
  const TimedNode *onset = FindLabel(t.root, "Onset");
  REQUIRE(onset != nullptr);
  std::vector<std::pair<std::string, Interval>> leaves;
  CollectLeaves(*onset, &leaves);
  long base = static_cast<long>(onset->start.count() / 1000);
  std::map<std::string, Interval> out;
  for (auto [sym, iv] : leaves) out[sym] = {iv.begin_ms - base, iv.end_ms - base};
  return out;
}

Micros OnsetTotal(const Pack &p, const std::string &word) {
  TimedTree t = Solve(ParseWord(word, p.grammar), p.durations, p.overlap,
                      p.grammar.roles);
  return FindLabel(t.root, "Onset")->duration();
}

TEST_CASE("dutch onset durations") {
  Pack p = testing::Load("dutch");
  CHECK(OnsetTotal(p, "tak") == milliseconds(150));
  CHECK(OnsetTotal(p, "bak") == milliseconds(120));
  CHECK(OnsetTotal(p, "nat") == milliseconds(110));
  CHECK(OnsetTotal(p, "lat") == milliseconds(95));
  CHECK(OnsetTotal(p, "sla") == milliseconds(200));
  CHECK(OnsetTotal(p, "sma") == milliseconds(200));
  CHECK(OnsetTotal(p, "bla") == milliseconds(160));
  CHECK(OnsetTotal(p, "split") == milliseconds(250));
  auto sl = OnsetSpans(p, "sla");
  CHECK(sl["s"] == Interval{0, 150});
  CHECK(sl["l"] == Interval{0, 200});
  CHECK(OnsetSpans(p, "sma")["s"] == Interval{0, 135});
  CHECK(OnsetSpans(p, "bla")["b"] == Interval{0, 110});
  auto spl = OnsetSpans(p, "split");
  CHECK(spl["s"] == Interval{0, 105});
  CHECK(spl["p"] == Interval{0, 200});
  CHECK(spl["l"] == Interval{50, 250});
}

TEST_CASE("a cluster keeps its timing inside a larger onset") {
  Pack p = testing::Load("dutch");
  auto sp = OnsetSpans(p, "spa");
  auto spl = OnsetSpans(p, "split");
  CHECK(sp["s"] == spl["s"]);
  CHECK(sp["p"] == spl["p"]);
}

TEST_CASE("voicing ratio of binary onsets") {
  Pack p = testing::Load("dutch");
  const Segment *b = p.grammar.FindSegment("b");
  const Segment *s = p.grammar.FindSegment("s");
  double ratio = static_cast<double>(OnsetDuration(p.durations, true, *b).count()) /
                 OnsetDuration(p.durations, true, *s).count();
  CHECK(ratio == doctest::Approx(0.8).epsilon(1e-9));
  CHECK(OnsetDuration(p.durations, false, *s) == milliseconds(150));
  CHECK_THROWS_AS(OnsetDuration(DurationTable{}, false, *s), LookupError);
}

TEST_CASE("children stay inside their parents") {
  Pack p = testing::Load("dutch");
  std::function<void(const TimedNode &)> check = [&](const TimedNode &t) {
    CHECK(t.start <= t.end);
    for (const auto &c : t.children) {
      CHECK(c.start >= t.start);
      CHECK(c.end <= t.end);
      check(c);
    }
  };
  for (const char *w : {"split", "bla", "tak", "ta.ta", "spla.strak"})
    check(Solve(ParseWord(w, p.grammar), p.durations, p.overlap, p.grammar.roles).root);
}

TEST_CASE("cross-syllable overlap shifts the next syllable") {
  Pack p = testing::Load("dutch");
  ProsodicTree word = ParseWord("tata", p.grammar);
  auto syllables = [&](const NonOverlapTable &o) {
    TimedTree t = Solve(word, p.durations, o, p.grammar.roles);
    std::vector<const TimedNode *> out;
    std::function<void(const TimedNode &)> walk = [&](const TimedNode &n) {
      if (n.node->label == "Syl") {
        out.push_back(&n);
        return;
      }
      for (const auto &c : n.children) walk(c);
    };
    walk(t.root);
    REQUIRE(out.size() == 2);
    return std::pair{out[0]->end, out[1]->start};
  };
  auto [end0, start0] = syllables(p.overlap);
  CHECK(start0 == end0);
  NonOverlapTable o = p.overlap;
  o.SetSyllable("*", "*", milliseconds(30));
  auto [end30, start30] = syllables(o);
  CHECK(end30 == end0);
  CHECK(end30 - start30 == milliseconds(30));
  o.SetSyllable("*", "*", milliseconds(500));
  CHECK_THROWS_AS(Solve(word, p.durations, o, p.grammar.roles), SolveError);
}

TEST_CASE("solver reports over-constrained and unsolvable trees") {
  Pack p = testing::Load("dutch");
  ProsodicTree spa = ParseWord("spa", p.grammar);
  NonOverlapTable wide = p.overlap;
  wide.Set("*", "obstruent", milliseconds(300));
  CHECK_THROWS_WITH_AS(Solve(spa, p.durations, wide), doctest::Contains("over-constrained"),
                       SolveError);
  DurationTable longer = p.durations;
  longer.Set("Onset.head.voiceless:/l/", milliseconds(500));
  CHECK_THROWS_WITH_AS(Solve(ParseWord("split", p.grammar), longer, p.overlap),
                       doctest::Contains("over-constrained"), SolveError);
  CHECK_THROWS_WITH_AS(Solve(spa, DurationTable{}, p.overlap),
                       doctest::Contains("unsolvable"), SolveError);
}

TEST_CASE("table parsing") {
  DurationTable d = DurationTable::Parse(
      "% comment\nOnset.simple:/t/ 12.5\nOnset.simple:* 90 % trailing\n");
  CHECK(d.Get("Onset.simple:/t/") == Micros(12500));
  CHECK(d.Get("Onset.simple:*") == milliseconds(90));
  CHECK_THROWS_AS(DurationTable::Parse("Onset.simple:* abc\n"), TableFormatError);
  CHECK_THROWS_AS(DurationTable::Parse("Onset.simple:* -5\n"), TableFormatError);
  CHECK_THROWS_AS(DurationTable::Parse("Onset.simple:*\n"), TableFormatError);
  CHECK_THROWS_AS(DurationTable::Parse("nocolon 5\n"), TableFormatError);
  NonOverlapTable o = NonOverlapTable::Parse("* liquid 50\nsyllable * * 10\n");
  CHECK(o.entries().size() == 1);
  CHECK(o.syllable_entries().size() == 1);
  CHECK_THROWS_AS(NonOverlapTable::Parse("* 50\n"), TableFormatError);
  CHECK_THROWS_AS(ParseMs("1x"), TableFormatError);
}

TEST_CASE("selectors run from symbol to wildcard") {
  Segment s{"s", FeatureBundle::Parse("[+cons,-son,-voi,+cont]")};
  auto sel = Selectors(s);
  REQUIRE(sel.size() == 4);
  CHECK(sel.front() == "/s/");
  CHECK(sel[2] == "obstruent");
  CHECK(sel.back() == "*");
}

TEST_CASE("timed output formats") {
  Pack p = testing::Load("dutch");
  TimedTree t = Solve(ParseWord("spa", p.grammar), p.durations, p.overlap);
  auto json = ToJson(t);
  CHECK(json["label"] == "Word");
  CHECK(json["start_ms"] == 0);
  std::string csv = LeafCsv(t);
  CHECK(csv.rfind("symbol,start_ms,end_ms\n", 0) == 0);
  CHECK(csv.find("s,0,105") != std::string::npos);
}

}  // namespace
}  // namespace prosodic
