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

// Chart parsing of segment strings into prosodic trees.
//
// The chart runs over a lattice of (gap, k) positions: gap i lies before
// input segment i and k counts the empty segments already placed in that
// gap, so an empty segment advances k and a real segment moves to (i+1, 0).
// The grammar's epenthesis cap bounds k, which keeps the chart finite and
// gives every tree exactly one path through the lattice.

#ifndef PROSODIC_PARSER_H_
#define PROSODIC_PARSER_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "prosodic/grammar.h"
#include "prosodic/tree.h"

namespace prosodic {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TokenizedWord {
  std::vector<std::string> symbols;
  // Index into `symbols` where each dot-separated piece begins.
  std::vector<size_t> piece_starts;
};

// Greedy longest match against the inventory. Dots separate pieces and
// are dropped; parentheses are dropped. Throws ParseError on an unknown
// symbol.
TokenizedWord Tokenize(std::string_view text, const Grammar &g);

// Inserts the grammar's onset-insertion symbol before every non-initial
// piece that begins with a [-cons] segment.
std::vector<std::string> NormalizeInput(const TokenizedWord &word,
                                        const Grammar &g);

struct ParseResult {
  std::vector<ProsodicTree> trees;  // sorted by bracketed form
  // Number of leading segments covered by some start or syllable
  // constituent; meaningful when `trees` is empty.
  int longest_prefix = 0;
  std::string diagnostic;
};

// Every tree licensed by the grammar and its hard constraints.
ParseResult ParseAll(const std::vector<std::string> &symbols, const Grammar &g);

struct Violation {
  ConstraintKind kind;
  Span span;
  std::string detail;
};

struct ConstraintReport {
  bool ok = true;
  std::vector<Violation> violations;
};

ConstraintReport CheckConstraints(const ProsodicTree &tree, const Grammar &g);

int MaximalOnsetViolations(const ProsodicTree &tree, const Grammar &g);
int EpentheticCount(const ProsodicTree &tree);

// Deterministic choice: fewest maximal-onset violations (when the grammar
// asks for it), then fewest empty segments, then empties placed leftmost,
// then the smallest bracketed form. Throws std::invalid_argument on an
// empty candidate list.
ProsodicTree SelectParse(const std::vector<ProsodicTree> &candidates,
                         const Grammar &g);

// Tokenize, normalize, parse and select. Throws ParseError when nothing
// parses.
ProsodicTree ParseWord(std::string_view text, const Grammar &g);

}  // namespace prosodic

#endif  // PROSODIC_PARSER_H_
