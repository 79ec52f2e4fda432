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

// Headed prosodic trees and their text forms.
//
// Bracketed form:  Syl(Onset(X:t) / Rime(Nucleus(X:∅) \ Coda(X:x)))
// "/" marks the right daughter strong, "\" the left one; a unary daughter
// is strong. The empty segment prints as "∅". With features turned on each
// label is followed by its bundle, e.g. Onset[+cons](X:t[+cons]).

#ifndef PROSODIC_TREE_H_
#define PROSODIC_TREE_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "prosodic/features.h"
#include "prosodic/grammar.h"

namespace prosodic {

enum class Strength { kRoot, kStrong, kWeak };

std::string_view StrengthName(Strength s);

// Half-open range of input segment indices. Empty segments have
// begin == end.
struct Span {
  int begin = 0;
  int end = 0;
  bool operator==(const Span &) const = default;
};

inline constexpr std::string_view kEmptyGlyph = "\xE2\x88\x85";  // ∅

struct ProsodicTree {
  std::string label;
  FeatureBundle features;
  Strength strength = Strength::kRoot;
  std::vector<ProsodicTree> children;
  std::optional<Segment> segment;  // set on X leaves only
  Span span;

  bool IsLeaf() const { return segment.has_value(); }
  bool IsEmptyLeaf() const { return segment && segment->IsEmpty(); }

  // Index of the strong daughter; 0 for unary nodes and leaves.
  size_t HeadIndex() const;
  const ProsodicTree &Head() const { return children[HeadIndex()]; }

  // Leaves in input order, empty ones included.
  std::vector<const ProsodicTree *> Leaves() const;
  // Symbols of the non-empty leaves.
  std::vector<std::string> Yield() const;

  bool operator==(const ProsodicTree &) const = default;
};

class TreeFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Recomputes spans bottom-up from leaf order.
void AssignSpans(ProsodicTree *tree);

std::string ToBracketed(const ProsodicTree &tree, bool with_features = false);

// Parses the bracketed form. Leaves get segment features equal to their
// node features. Spans are recomputed.
ProsodicTree ParseBracketed(std::string_view text);

nlohmann::ordered_json ToJson(const ProsodicTree &tree);
ProsodicTree TreeFromJson(const nlohmann::ordered_json &json);

enum class Slot { kOnset, kNucleus, kCoda, kMora, kOther };

struct LeafInfo {
  const ProsodicTree *leaf = nullptr;
  const ProsodicTree *slot_node = nullptr;  // nearest role-bearing ancestor
  Slot slot = Slot::kOther;
  int syllable = -1;
};

struct SyllableView {
  const ProsodicTree *node = nullptr;
  std::vector<LeafInfo> leaves;

  bool OnsetFilled() const;
  const LeafInfo *FirstFilled() const;
  const LeafInfo *LastFilled() const;
};

struct WordView {
  std::vector<SyllableView> syllables;
  std::vector<LeafInfo> leaves;  // every leaf, in order
};

// Outermost nodes labelled with the syllable role, in order.
WordView Analyze(const ProsodicTree &tree, const Roles &roles);

// Dotted transcription with syllables separated by '.'; an empty nucleus
// prints as '@' and other empty segments print as nothing. When
// `stressed` names a syllable an apostrophe precedes it.
std::string Transcription(const ProsodicTree &tree, const Roles &roles,
                          std::optional<size_t> stressed = std::nullopt);

}  // namespace prosodic

#endif  // PROSODIC_TREE_H_
