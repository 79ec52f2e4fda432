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

// Synthesis parameter tracks from track rules and lookup tables.
//
// Lookup table lines give a value for a variable under conditions on the
// constituent itself and on the segments either side of it:
//
//   F2Locus = 1700
//   F2Locus self[-son] right[-cons,-back] = 1800
//
// The matching entry with the most feature values wins. Two entries for
// the same variable that could match the same constituent with the same
// count but different values are rejected at load time.

#ifndef PROSODIC_TRACKS_H_
#define PROSODIC_TRACKS_H_

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "prosodic/features.h"
#include "prosodic/temporal.h"
#include "prosodic/track_rule.h"

namespace prosodic {

struct LookupContext {
  FeatureBundle self;
  std::optional<FeatureBundle> left;   // nearest filled segment before
  std::optional<FeatureBundle> right;  // nearest filled segment after
};

struct LookupEntry {
  std::string variable;
  std::optional<FeatureBundle> self;
  std::optional<FeatureBundle> left;
  std::optional<FeatureBundle> right;
  double value = 0;
  std::string where;

  int Specificity() const;
  bool MatchesContext(const LookupContext &ctx) const;
  // Some context could satisfy both entries.
  bool CompatibleWith(const LookupEntry &other) const;
  std::string ToString() const;
};

class LookupTables {
 public:
  // Throws TableFormatError on malformed lines and on specificity ties.
  static LookupTables Parse(std::string_view text,
                            const std::string &source_name = "<input>");
  static LookupTables Load(const std::filesystem::path &path);

  void Add(LookupEntry entry);
  std::optional<double> Find(const std::string &variable,
                             const LookupContext &ctx) const;
  // Throws LookupError naming the variable and context.
  double Lookup(const std::string &variable, const LookupContext &ctx) const;

  const std::vector<LookupEntry> &entries() const { return entries_; }

 private:
  std::vector<LookupEntry> entries_;
};

class CompositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Breakpoint {
  Micros time{0};
  ValueKind kind = ValueKind::kConstrained;
  double value = 0;  // unused for kUnconstrained
};

// The rule's label and guard admit the constituent.
bool RuleApplies(const TrackRule &rule, const ProsodicTree &node);

// Context of a solved node within its tree.
LookupContext ContextOf(const TimedTree &timed, const TimedNode &node);

// Anchors mapped onto the node's span, offsets in ms, values evaluated.
// Throws LookupError for an unresolvable variable and TrackRuleError when
// the resolved times are not strictly increasing.
std::vector<Breakpoint> EvaluateRule(const TrackRule &rule,
                                     const TimedNode &node,
                                     const LookupContext &ctx,
                                     const LookupTables &tables);

// Per parameter, breakpoints sorted by time with one value per time.
class TrackSet {
 public:
  void Set(const std::string &parameter, Micros time, double value);
  // Linear interpolation; nullopt outside the parameter's range.
  std::optional<double> ValueAt(const std::string &parameter, Micros t) const;
  const std::map<std::string, std::map<Micros, double>> &tracks() const {
    return tracks_;
  }
  bool empty() const { return tracks_.empty(); }
  bool operator==(const TrackSet &) const = default;

 private:
  std::map<std::string, std::map<Micros, double>> tracks_;
};

// Each node's own rules first, then its strong daughter, then its weak
// daughter; a later overlay replaces earlier points within the range of
// its own specified points. Unconstrained points take the interpolated
// value of the finished track, or are dropped where there is none. Throws
// CompositionError when rules on one node give different values at one
// time.
TrackSet ComposeTracks(const TimedTree &timed,
                       const std::vector<TrackRule> &rules,
                       const LookupTables &tables);

// "time_ms,<param>..." then one row per breakpoint time of any parameter;
// cells outside a parameter's range are left empty.
std::string TracksCsv(const TrackSet &tracks);
// {"F2": [{"time_ms": 0, "value": 1500}, ...], ...}
nlohmann::ordered_json TracksJson(const TrackSet &tracks);

}  // namespace prosodic

#endif  // PROSODIC_TRACKS_H_
