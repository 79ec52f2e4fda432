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

// Language packs: a directory of grammar files and tables, resolved over
// the universal pack.
//
//   packs/<name>/{grammar.pg, segments.pg, params.pg, durations.tbl,
//                 overlap.tbl, lookup.tbl, corpus/*.tsv}
//
// Any file missing from the language directory is taken from
// packs/universal. Corpus files hold "word<TAB>kind<TAB>expected" lines;
// '#' starts a comment line.

#ifndef PROSODIC_PACK_H_
#define PROSODIC_PACK_H_

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "prosodic/grammar.h"
#include "prosodic/temporal.h"
#include "prosodic/tracks.h"

namespace prosodic {

inline constexpr std::string_view kUniversalPack = "universal";

class PackError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Pack {
  std::string name;
  std::filesystem::path dir;
  std::vector<std::filesystem::path> search_path;  // language dir first
  ParameterSet overrides;
  Grammar grammar;
  DurationTable durations;
  NonOverlapTable overlap;
  LookupTables lookup;
  std::vector<std::filesystem::path> corpus_files;  // sorted
};

// Directories from the PACK_PATH environment variable (':'-separated),
// then the built-in pack directory.
std::vector<std::filesystem::path> DefaultPackRoots();

// Throws PackError when no root holds the pack.
std::filesystem::path FindPackDir(const std::string &name,
                                  const std::vector<std::filesystem::path> &roots);

// Compiles grammar.pg and loads the tables. Compile errors propagate as
// CompileError; table errors as TableFormatError.
Pack LoadPack(const std::string &name, const ParameterSet &overrides = {},
              const std::vector<std::filesystem::path> &roots =
                  DefaultPackRoots());

// First directory of the pack's search path holding `file`.
std::optional<std::filesystem::path> ResolvePackFile(const Pack &pack,
                                                     const std::string &file);

struct CorpusItem {
  std::string word;
  std::string kind;
  std::string expected;
  std::string where;
};

// Kinds: syllables, syllabification, parses, stress, weight,
// final-syllable, onset-duration, onset-spans, rejects.
std::vector<CorpusItem> ParseCorpus(std::string_view text,
                                    const std::string &source_name = "<input>");
std::vector<CorpusItem> LoadCorpus(const std::filesystem::path &path);

struct ItemResult {
  CorpusItem item;
  bool pass = false;
  std::string actual;
};

struct ValidationReport {
  std::vector<ItemResult> items;
  int passed = 0;
  int failed = 0;

  bool ok() const { return failed == 0; }
  // One "PASS|FAIL word kind expected actual" line per item and a summary.
  std::string ToString() const;
};

// Never throws for item failures; errors become the item's actual value.
ItemResult EvaluateItem(const Pack &pack, const CorpusItem &item);
ValidationReport EvaluateCorpus(const Pack &pack,
                                const std::vector<CorpusItem> &items);
// Every corpus file of the pack.
ValidationReport ValidatePack(const Pack &pack);

}  // namespace prosodic

#endif  // PROSODIC_PACK_H_
