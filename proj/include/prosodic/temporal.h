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
// Temporal interpretation: start and end times for every node of a tree.
//
// Within a syllable the duration of a constituent is carried by its head.
// For a branching node N with strong child S and weak child W:
//
//   dur(N) = dur(W) + nonoverlap(W, S)     when W has a duration
//   dur(N) = dur(S)                        otherwise; W fills what is left
//
// With (W / S) the weak child starts with N and the strong one ends with
// it; (S \ W) mirrors this. Syllables are then laid end to end, each
// onset starting a table-given overlap before the previous syllable ends.
//
// Table files hold one entry per line, comments start with '%':
//
//   durations.tbl   Onset.simple:obstruent-voiceless 150
//                   Onset.head.voiced:* 160
//   overlap.tbl     * liquid 50                  (weak strong ms)
//                   syllable * obstruent 10      (prev next ms)
//
// A selector is "/sym/", a class name such as "obstruent-voiced" or
// "nasal", the coarse class "obstruent", or "*", tried in that order.

#ifndef PROSODIC_TEMPORAL_H_
#define PROSODIC_TEMPORAL_H_

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "prosodic/grammar.h"
#include "prosodic/tree.h"

namespace prosodic {

using Micros = std::chrono::microseconds;

class LookupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TableFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Selectors for a segment, most specific first.
std::vector<std::string> Selectors(const Segment &segment);

// Parses "105" or "12.5" (milliseconds). Throws TableFormatError.
Micros ParseMs(std::string_view text);

class DurationTable {
 public:
  static DurationTable Parse(std::string_view text,
                             const std::string &source_name = "<input>");
  static DurationTable Load(const std::filesystem::path &path);

  // Throws TableFormatError unless the duration is positive.
  void Set(const std::string &key, Micros duration);
  std::optional<Micros> Get(std::string_view key) const;
  // First entry "context:selector" over the segment's selectors.
  std::optional<Micros> Find(std::string_view context,
                             const Segment &segment) const;
  // Entries of `other` replace ours.
  void Merge(const DurationTable &other);

  const std::map<std::string, Micros, std::less<>> &entries() const {
    return entries_;
  }
  bool operator==(const DurationTable &) const = default;

 private:
  std::map<std::string, Micros, std::less<>> entries_;
};

class NonOverlapTable {
 public:
  static NonOverlapTable Parse(std::string_view text,
                               const std::string &source_name = "<input>");
  static NonOverlapTable Load(const std::filesystem::path &path);

  void Set(const std::string &weak, const std::string &strong, Micros ms);
  void SetSyllable(const std::string &prev, const std::string &next, Micros ms);

  // Selector pairs are tried with the strong (next) side most specific
  // first.
  std::optional<Micros> Find(const Segment &weak, const Segment &strong) const;
  std::optional<Micros> FindSyllable(const Segment &prev_last,
                                     const Segment &next_first) const;
  void Merge(const NonOverlapTable &other);

  const std::map<std::pair<std::string, std::string>, Micros> &entries() const {
    return entries_;
  }
  const std::map<std::pair<std::string, std::string>, Micros> &
  syllable_entries() const {
    return syllable_;
  }
  bool operator==(const NonOverlapTable &) const = default;

 private:
  std::map<std::pair<std::string, std::string>, Micros> entries_;
  std::map<std::pair<std::string, std::string>, Micros> syllable_;
};

struct TimedNode {
  const ProsodicTree *node = nullptr;
  Micros start{0};
  Micros end{0};
  std::vector<TimedNode> children;

  Micros duration() const { return end - start; }
  void Shift(Micros by);
};

struct TimedTree {
  std::shared_ptr<const ProsodicTree> tree;
  TimedNode root;
};

// Table duration of a leaf from its structural context, if any: the head
// of a binary node X gives "X.head.voiced" or "X.head.voiceless" after the
// first filled leaf of the weak sister; labels on the leaf's unary chain
// give "Label.simple".
std::optional<Micros> LeafDuration(const ProsodicTree &root,
                                   const ProsodicTree &leaf,
                                   const DurationTable &durations);

// Solves a tree. Trees containing syllable nodes below the root are solved
// syllable by syllable and joined with CrossSyllableOverlay. Throws
// SolveError.
TimedTree Solve(const ProsodicTree &tree, const DurationTable &durations,
                const NonOverlapTable &overlap, const Roles &roles = {});

// Onset duration by class: a simple onset looks up "Onset.simple", a binary
// one "Onset.head.<voicing>" of its first consonant. Throws LookupError.
Micros OnsetDuration(const DurationTable &durations, bool binary,
                     const Segment &first, const Roles &roles = {});

// Moves `next` so its onset starts the table overlap before `prev` ends; no
// entry means the syllables abut. Throws SolveError when the overlap is
// longer than the final mora (or final segment) of `prev`.
void CrossSyllableOverlay(const TimedNode &prev, TimedNode *next,
                          const NonOverlapTable &overlap, const Roles &roles);

// Per node: label, segment, start_ms, end_ms, children.
nlohmann::ordered_json ToJson(const TimedTree &timed);
// "symbol,start_ms,end_ms" per filled leaf, with a header line.
std::string LeafCsv(const TimedTree &timed);

}  // namespace prosodic

#endif  // PROSODIC_TEMPORAL_H_
