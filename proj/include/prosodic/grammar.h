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

// Compiler for the phonological grammar language (.pg files).
//
// One statement per line; a statement continues onto the next line while
// parentheses are open, the line ends in "-->" or "=", or the next line
// starts with "=". Comments start with a '%' at the start of a line or
// after whitespace, so "20%" in a track anchor is not a comment.
//
//   feature cons son voi
//   segment t [+cons,-son,-voi]
//   segment "" [-cons,+son]          % the empty segment
//   macro NASAL = [+son,+nas]
//   param VoicedStops = no           % default
//   set VoicedStops = yes            % pack setting
//   filter *[+voi,+spread]
//   start Word
//   Syl --> (Onset / Rime)           % right child strong
//   Rime --> (Nucleus \ Coda)        % left child strong
//   Onset --> X:[+cons]
//   empty Onset Nucleus Coda         % slots an empty segment may occupy
//   constraint coda-sonority
//   #if AspiratedStops == yes ... #else ... #endif
//   #include "segments.pg"
//   #include <weight-rules>

#ifndef PROSODIC_GRAMMAR_H_
#define PROSODIC_GRAMMAR_H_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "prosodic/features.h"
#include "prosodic/track_rule.h"

namespace prosodic {

struct SourceLocation {
  std::string file;
  int line = 0;
  int column = 0;

  std::string ToString() const;
};

class CompileError : public std::runtime_error {
 public:
  CompileError(const std::string &message, SourceLocation where);
  const SourceLocation &where() const { return where_; }
  const std::string &message() const { return message_; }

 private:
  std::string message_;
  SourceLocation where_;
};

inline constexpr std::string_view kTerminalLabel = "X";

struct Constituent {
  std::string label;
  FeatureBundle features;

  bool IsTerminal() const { return label == kTerminalLabel; }
  std::string ToString() const;
  bool operator==(const Constituent &) const = default;
};

enum class Shape {
  kUnary,
  kRightHeaded,  // ( A / B ): B strong
  kLeftHeaded,   // ( A \ B ): A strong
};

struct Production {
  Constituent lhs;
  Shape shape = Shape::kUnary;
  std::vector<Constituent> rhs;  // one or two children
  SourceLocation where;

  size_t HeadIndex() const { return shape == Shape::kRightHeaded ? 1 : 0; }
  std::string ToString() const;
  bool operator==(const Production &o) const {
    return lhs == o.lhs && shape == o.shape && rhs == o.rhs;
  }
};

struct Filter {
  FeatureBundle spec;
  bool operator==(const Filter &) const = default;
};

enum class ConstraintKind {
  kForbidEmptySyllable,
  kOnsetAfterFilledCoda,
  kCodaSonority,
  kMaximalOnset,  // preference only; ranks candidates in SelectParse
  kGeminate,
  kAdjacentPair,
};

std::string_view ConstraintName(ConstraintKind kind);
std::optional<ConstraintKind> ConstraintFromName(std::string_view name);

struct Constraint {
  ConstraintKind kind;
  // kAdjacentPair forbids a syllable boundary between a segment matching
  // `left` and a following segment matching `right`.
  FeatureBundle left;
  FeatureBundle right;

  std::string ToString() const;
  bool operator==(const Constraint &) const = default;
};

class ParameterSet {
 public:
  void Set(const std::string &name, const std::string &value) {
    values_[name] = value;
  }
  std::optional<std::string> Get(std::string_view name) const;
  bool Has(std::string_view name) const { return Get(name).has_value(); }
  const std::map<std::string, std::string, std::less<>> &values() const {
    return values_;
  }
  bool empty() const { return values_.empty(); }
  bool operator==(const ParameterSet &) const = default;

  // Parses "Key=Value". Throws std::invalid_argument.
  static std::pair<std::string, std::string> ParsePair(std::string_view text);

 private:
  std::map<std::string, std::string, std::less<>> values_;
};

// Throws CompileError if `name` is a known parameter and `value` lies
// outside its domain.
void ValidateParameterValue(const std::string &name, const std::string &value,
                            const SourceLocation &where);

// Labels the constraint checker and the metrical code treat as prosodic
// roles. Overridable with "role <kind> <Label>".
struct Roles {
  std::string syllable = "Syl";
  std::string onset = "Onset";
  std::string nucleus = "Nucleus";
  std::string coda = "Coda";
  std::string mora = "Mora";
  bool operator==(const Roles &) const = default;
};

struct Grammar {
  FeatureInventory inventory;
  std::vector<Segment> segments;  // after filtering
  std::vector<Segment> filtered_out;
  std::vector<Macro> macros;
  std::vector<Production> productions;
  std::vector<Filter> filters;
  std::vector<Constraint> constraints;
  std::vector<TrackRule> track_rules;
  ParameterSet params;
  std::string start;
  std::set<std::string> empty_slots;
  int epenthesis_cap = 2;
  Roles roles;
  // Symbol inserted before a vowel-initial, non-initial syllable of dotted
  // input.
  std::string onset_insertion;

  const Segment *FindSegment(std::string_view symbol) const;
  const Segment *EmptySegment() const { return FindSegment(""); }
  bool HasConstraint(ConstraintKind kind) const;

  // Post-conditional, post-macro listing, one statement per line.
  std::string ToString() const;
  bool operator==(const Grammar &) const;
};

// Resolves #include names against an ordered list of directories; the first
// directory holding the file wins.
class IncludeResolver {
 public:
  IncludeResolver() = default;
  explicit IncludeResolver(std::vector<std::filesystem::path> search_path)
      : search_path_(std::move(search_path)) {}

  // Tries `name` and then `name` + ".pg" in each directory.
  std::optional<std::filesystem::path> Resolve(std::string_view name) const;
  const std::vector<std::filesystem::path> &search_path() const {
    return search_path_;
  }

 private:
  std::vector<std::filesystem::path> search_path_;
};

struct SourceLine {
  std::string text;
  SourceLocation where;
};

struct ResolvedSource {
  std::vector<SourceLine> lines;
  ParameterSet params;  // defaults, then pack settings, then overrides

  std::string Text() const;
};

// Expands #include and keeps exactly the #if blocks whose guard holds.
// `param` and `set` lines are interpreted as they are reached so later
// guards see them; overrides take precedence over both.
ResolvedSource ResolveConditionals(std::string_view source,
                                   const ParameterSet &overrides,
                                   const IncludeResolver &includes = {},
                                   const std::string &source_name = "<input>");

// Built-in weight rules reached through "#include <weight-rules>".
std::string_view WeightRulesSource();

// The syllable-weight productions for the given settings, compiled from
// WeightRulesSource(). Parameters not in `params` take their defaults.
std::vector<Production> WeightRules(const ParameterSet &params);

Grammar Compile(std::string_view source, const ParameterSet &overrides = {},
                const IncludeResolver &includes = {},
                const std::string &source_name = "<input>");

// Compiles the file at `path`, resolving includes against `includes`.
Grammar CompileFile(const std::filesystem::path &path,
                    const ParameterSet &overrides,
                    const IncludeResolver &includes);

}  // namespace prosodic

#endif  // PROSODIC_GRAMMAR_H_
