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

// Breakpoint schemas for synthesis parameters, written in grammar files as
//
//   track Onset:[+cons] F2(20%, 50%, 90%, 100%, 100%+F2End)
//       = (?, F2Value, F2Value, F2Locus+F2Coart*(F2Vowel-F2Locus), ?F2Vowel)

#ifndef PROSODIC_TRACK_RULE_H_
#define PROSODIC_TRACK_RULE_H_

#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "prosodic/features.h"

namespace prosodic {

// Arithmetic over numbers and table variables.
struct Expr {
  enum class Kind { kNumber, kVariable, kNegate, kBinary };
  Kind kind = Kind::kNumber;
  double number = 0;
  std::string name;   // kVariable
  char op = 0;        // kBinary: + - * /
  std::vector<Expr> args;

  static Expr Parse(std::string_view text);

  double Evaluate(
      const std::function<double(const std::string &)> &lookup) const;
  void CollectVariables(std::set<std::string> *out) const;
  std::string ToString() const;
};

// A time point: percent of the constituent's duration, optionally shifted by
// a millisecond-valued table variable.
struct Anchor {
  double percent = 0;
  std::string offset_variable;  // empty when none
  int offset_sign = 1;

  std::string ToString() const;
};

enum class ValueKind {
  kConstrained,
  kUnconstrained,  // "?": supplied by context
  kSoft,           // "?Expr": a target later overlays may replace
};

struct TrackValue {
  ValueKind kind = ValueKind::kConstrained;
  Expr expr;  // unused for kUnconstrained

  std::string ToString() const;
};

struct TrackRule {
  std::string label;
  FeatureBundle guard;
  std::string parameter;
  std::vector<Anchor> anchors;
  std::vector<TrackValue> values;

  std::string ToString() const;
};

class TrackRuleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses the text following the "track" keyword.
TrackRule ParseTrackRule(std::string_view text);

}  // namespace prosodic

#endif  // PROSODIC_TRACK_RULE_H_
