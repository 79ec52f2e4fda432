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

#include "prosodic/pack.h"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "prosodic/metrical.h"
#include "prosodic/parser.h"
#include "text_util.h"

#ifndef PROSODIC_PACK_DIR
#define PROSODIC_PACK_DIR "packs"
#endif

namespace prosodic {
namespace {

namespace fs = std::filesystem;
using internal::FormatMs;
using internal::Trim;

std::string ReadText(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PackError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const ProsodicTree *FindLabel(const ProsodicTree &t, const std::string &label) {
  if (t.label == label) return &t;
  for (const auto &c : t.children)
    if (const ProsodicTree *f = FindLabel(c, label)) return f;
  return nullptr;
}

const TimedNode *FindTimed(const TimedNode &t, const std::string &label) {
  if (t.node->label == label) return &t;
  for (const auto &c : t.children)
    if (const TimedNode *f = FindTimed(c, label)) return f;
  return nullptr;
}

void CollectSpans(const TimedNode &t, Micros origin, std::string *out) {
  if (t.node->IsLeaf()) {
    if (t.node->IsEmptyLeaf()) return;
    if (!out->empty()) *out += ";";
    *out += t.node->segment->symbol + "=" + FormatMs(t.start - origin) + "-" +
            FormatMs(t.end - origin);
    return;
  }
  for (const auto &c : t.children) CollectSpans(c, origin, out);
}

std::string StressPosition(size_t index, size_t count) {
  size_t from_end = count - 1 - index;
  if (count == 1) return "final";
  switch (from_end) {
    case 0: return "final";
    case 1: return "penult";
    case 2: return "antepenult";
    default: return "syllable-" + std::to_string(index + 1);
  }
}

// The item's observable for its kind.
std::string Observe(const Pack &pack, const CorpusItem &item) {
  const Grammar &g = pack.grammar;
  const std::string &kind = item.kind;
  if (kind == "rejects") {
    try {
      std::vector<std::string> symbols = NormalizeInput(Tokenize(item.word, g), g);
      ParseResult r = ParseAll(symbols, g);
      return r.trees.empty() ? "rejected" : "accepted";
    } catch (const ParseError &) {
      return "rejected";
    }
  }
  if (kind == "parses") {
    std::vector<std::string> symbols = NormalizeInput(Tokenize(item.word, g), g);
    return std::to_string(ParseAll(symbols, g).trees.size());
  }
  ProsodicTree tree = ParseWord(item.word, g);
  if (kind == "syllables")
    return std::to_string(Analyze(tree, g.roles).syllables.size());
  if (kind == "syllabification") return Transcription(tree, g.roles);
  if (kind == "stress" || kind == "weight" || kind == "final-syllable") {
    StressResult s = AnalyzeStress(tree, g.roles);
    if (kind == "weight") return s.Pattern();
    if (kind == "final-syllable") {
      const WeightedSyllable &w = s.syllables.back();
      return "moras=" + std::to_string(w.moras) +
             " effective=" + std::to_string(w.EffectiveMoras()) +
             " final-c=" + (w.extrametrical_final_consonant ? "yes" : "no");
    }
    if (item.expected.find('.') == std::string::npos &&
        item.expected.find('\'') == std::string::npos)
      return StressPosition(s.stressed, s.syllables.size());
    return RenderStress(tree, g.roles, s);
  }
  if (kind == "onset-duration" || kind == "onset-spans") {
    TimedTree timed = Solve(tree, pack.durations, pack.overlap, g.roles);
    const TimedNode *onset = FindTimed(timed.root, g.roles.onset);
    if (!onset) return "no onset";
    if (kind == "onset-duration") return FormatMs(onset->duration());
    std::string spans;
    CollectSpans(*onset, onset->start, &spans);
    return spans;
  }
  throw PackError("unknown corpus kind '" + kind + "'");
}

bool IsKnownKind(const std::string &kind) {
  static const char *kKinds[] = {"syllables",      "syllabification",
                                 "parses",         "stress",
                                 "weight",         "final-syllable",
                                 "onset-duration", "onset-spans",
                                 "rejects"};
  return std::find(std::begin(kKinds), std::end(kKinds), kind) !=
         std::end(kKinds);
}

}  // namespace

std::vector<fs::path> DefaultPackRoots() {
  std::vector<fs::path> roots;
  if (const char *env = std::getenv("PACK_PATH")) {
    for (const auto &part : internal::Split(env, ':'))
      if (!part.empty()) roots.emplace_back(part);
  }
  roots.emplace_back(PROSODIC_PACK_DIR);
  return roots;
}

fs::path FindPackDir(const std::string &name, const std::vector<fs::path> &roots) {
  if (name.empty() || name.find('/') != std::string::npos)
    throw PackError("bad pack name '" + name + "'");
  for (const auto &root : roots) {
    fs::path dir = root / name;
    if (fs::is_directory(dir)) return dir;
  }
  std::string searched;
  for (const auto &root : roots) searched += " " + root.string();
  throw PackError("pack '" + name + "' not found; searched" + searched);
}

std::optional<fs::path> ResolvePackFile(const Pack &pack, const std::string &file) {
  for (const auto &dir : pack.search_path)
    if (fs::is_regular_file(dir / file)) return dir / file;
  return std::nullopt;
}

Pack LoadPack(const std::string &name, const ParameterSet &overrides,
              const std::vector<fs::path> &roots) {
  Pack pack;
  pack.name = name;
  pack.dir = FindPackDir(name, roots);
  pack.overrides = overrides;
  pack.search_path.push_back(pack.dir);
  if (name != kUniversalPack)
    pack.search_path.push_back(FindPackDir(std::string(kUniversalPack), roots));
  auto grammar = ResolvePackFile(pack, "grammar.pg");
  if (!grammar) throw PackError("pack '" + name + "' has no grammar.pg");
  pack.grammar =
      CompileFile(*grammar, overrides, IncludeResolver(pack.search_path));
  if (auto p = ResolvePackFile(pack, "durations.tbl"))
    pack.durations = DurationTable::Load(*p);
  if (auto p = ResolvePackFile(pack, "overlap.tbl"))
    pack.overlap = NonOverlapTable::Load(*p);
  if (auto p = ResolvePackFile(pack, "lookup.tbl"))
    pack.lookup = LookupTables::Load(*p);
  fs::path corpus = pack.dir / "corpus";
  if (fs::is_directory(corpus)) {
    for (const auto &e : fs::directory_iterator(corpus))
      if (e.is_regular_file() && e.path().extension() == ".tsv")
        pack.corpus_files.push_back(e.path());
    std::sort(pack.corpus_files.begin(), pack.corpus_files.end());
  }
  return pack;
}

std::vector<CorpusItem> ParseCorpus(std::string_view text,
                                    const std::string &source_name) {
  std::vector<CorpusItem> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string_view line = Trim(raw);
    if (line.empty() || line[0] == '#') continue;
    std::string where = source_name + ":" + std::to_string(line_no);
    std::vector<std::string> f = internal::Split(line, '\t');
    if (f.size() != 3)
      throw PackError(where + ": expected word<TAB>kind<TAB>expected");
    if (!IsKnownKind(f[1]))
      throw PackError(where + ": unknown corpus kind '" + f[1] + "'");
    out.push_back({f[0], f[1], f[2], where});
  }
  return out;
}

std::vector<CorpusItem> LoadCorpus(const fs::path &path) {
  return ParseCorpus(ReadText(path), path.string());
}

ItemResult EvaluateItem(const Pack &pack, const CorpusItem &item) {
  ItemResult r;
  r.item = item;
  try {
    r.actual = Observe(pack, item);
  } catch (const std::exception &e) {
    r.actual = std::string("error: ") + e.what();
  }
  r.pass = r.actual == item.expected;
  return r;
}

ValidationReport EvaluateCorpus(const Pack &pack,
                                const std::vector<CorpusItem> &items) {
  ValidationReport report;
  for (const auto &item : items) {
    report.items.push_back(EvaluateItem(pack, item));
    (report.items.back().pass ? report.passed : report.failed)++;
  }
  return report;
}

ValidationReport ValidatePack(const Pack &pack) {
  std::vector<CorpusItem> all;
  for (const auto &f : pack.corpus_files) {
    auto items = LoadCorpus(f);
    all.insert(all.end(), items.begin(), items.end());
  }
  return EvaluateCorpus(pack, all);
}

std::string ValidationReport::ToString() const {
  std::ostringstream out;
  for (const auto &r : items) {
    out << (r.pass ? "PASS" : "FAIL") << "\t" << r.item.word << "\t"
        << r.item.kind << "\t" << r.item.expected;
    if (!r.pass) out << "\tgot " << r.actual;
    out << "\n";
  }
  out << passed << " passed, " << failed << " failed\n";
  return out.str();
}

}  // namespace prosodic
