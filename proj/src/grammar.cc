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

#include "prosodic/grammar.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "text_util.h"

namespace prosodic {
namespace {

using internal::Trim;

const std::map<std::string, std::vector<std::string>, std::less<>> &
KnownParameters() {
  static const std::map<std::string, std::vector<std::string>, std::less<>>
      known = {
          {"VoicedStops", {"yes", "no"}},
          {"AspiratedStops", {"yes", "no"}},
          {"SuperHeavySyllable", {"yes", "no"}},
          {"CodaAdjunction", {"yes", "no"}},
          {"SyllabicClass", {"vowels-only", "sonorants", "any"}},
          {"MoraicClass", {"vowels-only", "sonorants", "any"}},
      };
  return known;
}

std::string StripComment(std::string_view line) {
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    // "20%" in a track anchor is a percentage, not a comment.
    bool starts = i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t';
    if (line[i] == '%' && !quoted && starts)
      return std::string(line.substr(0, i));
  }
  return std::string(line);
}

bool StartsWithWord(std::string_view s, std::string_view word) {
  return s.size() > word.size() && s.substr(0, word.size()) == word &&
         (s[word.size()] == ' ' || s[word.size()] == '\t');
}

std::string ReadFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

constexpr std::string_view kWeightRules = R"(% Syllable weight: one, two or, optionally, three moras.
feature cons son heavy
param SyllabicClass = vowels-only
param MoraicClass = any
param SuperHeavySyllable = no
param CodaAdjunction = no
Syl --> (Onset / Rime)
Syl --> Rime
Onset --> X:[+cons]
Rime:[-heavy] --> Mora:[SYLLABIC]
Rime:[+heavy] --> (Mora:[SYLLABIC] \ Mora)
Mora:[MORAIC] --> X
#if SuperHeavySyllable == yes
% Third mora nested under the weak branch; it is always consonantal. A
% consonant after three moras is adjoined without a mora of its own.
Rime:[+heavy] --> (Mora:[SYLLABIC] \ Moras)
Moras --> (Mora \ Mora:[+cons])
Rime:[+heavy] --> (Core \ X:[+cons])
Core --> (Mora:[SYLLABIC] \ Moras)
#endif
#if CodaAdjunction == yes
#if MoraicClass == sonorants
Rime:[-heavy] --> (Mora:[SYLLABIC] \ X:[-son])
#endif
#if MoraicClass == vowels-only
Rime:[-heavy] --> (Mora:[SYLLABIC] \ X:[+cons])
#endif
#endif
)";

// ---------------------------------------------------------------------------
// Conditional compilation.

class Preprocessor {
 public:
  Preprocessor(const ParameterSet &overrides, const IncludeResolver &includes)
      : overrides_(overrides), includes_(includes) {}

  void Process(std::string_view text, const std::string &file) {
    struct Block {
      bool outer_active;
      bool condition;
      bool in_else;
      SourceLocation where;
    };
    std::vector<Block> blocks;
    auto active = [&] {
      return blocks.empty() ||
             (blocks.back().outer_active &&
              (blocks.back().in_else ? !blocks.back().condition
                                     : blocks.back().condition));
    };
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
      ++line_no;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      std::string stripped = StripComment(raw);
      std::string_view line = Trim(stripped);
      SourceLocation where{file, line_no,
                           static_cast<int>(raw.find_first_not_of(" \t")) + 1};
      if (!line.empty() && line[0] == '#') {
        std::vector<std::string> words = internal::SplitWhitespace(line);
        const std::string &d = words[0];
        if (d == "#if") {
          bool cond = active() ? EvaluateGuard(line.substr(3), where) : false;
          blocks.push_back({active(), cond, false, where});
        } else if (d == "#else") {
          if (blocks.empty() || blocks.back().in_else)
            throw CompileError("#else without matching #if", where);
          blocks.back().in_else = true;
        } else if (d == "#endif") {
          if (blocks.empty())
            throw CompileError("#endif without matching #if", where);
          blocks.pop_back();
        } else if (d == "#include") {
          if (active()) Include(Trim(line.substr(8)), where);
        } else {
          throw CompileError("unknown directive " + d, where);
        }
        continue;
      }
      if (!active()) continue;
      if (StartsWithWord(line, "param") || StartsWithWord(line, "set"))
        Assign(line, where);
      out_.lines.push_back({raw, where});
    }
    if (!blocks.empty())
      throw CompileError("#if without matching #endif", blocks.back().where);
  }

  ResolvedSource Finish() {
    for (const auto &[name, value] : overrides_.values()) {
      if (!defaults_.count(name) && !sets_.count(name))
        throw CompileError("unknown parameter " + name, {"<overrides>", 0, 0});
      ValidateParameterValue(name, value, {"<overrides>", 0, 0});
    }
    for (const auto &[name, where] : set_locations_)
      if (!defaults_.count(name))
        throw CompileError("set of undeclared parameter " + name, where);
    for (const auto &[name, value] : defaults_) out_.params.Set(name, value);
    for (const auto &[name, value] : sets_) out_.params.Set(name, value);
    for (const auto &[name, value] : overrides_.values())
      out_.params.Set(name, value);
    return std::move(out_);
  }

 private:
  std::optional<std::string> Value(std::string_view name) const {
    if (auto v = overrides_.Get(name)) return v;
    if (auto it = sets_.find(std::string(name)); it != sets_.end())
      return it->second;
    if (auto it = defaults_.find(std::string(name)); it != defaults_.end())
      return it->second;
    return std::nullopt;
  }

  bool EvaluateGuard(std::string_view guard, const SourceLocation &where) {
    guard = Trim(guard);
    size_t op = guard.find("==");
    bool negate = false;
    if (op == std::string_view::npos) {
      op = guard.find("!=");
      negate = true;
    }
    if (op == std::string_view::npos)
      throw CompileError("#if expects 'Name == value' or 'Name != value'",
                         where);
    std::string name(Trim(guard.substr(0, op)));
    std::string value(Trim(guard.substr(op + 2)));
    if (name.empty() || value.empty())
      throw CompileError("malformed #if guard", where);
    auto current = Value(name);
    if (!current) throw CompileError("unknown parameter " + name, where);
    return (*current == value) != negate;
  }

  void Assign(std::string_view line, const SourceLocation &where) {
    bool is_default = StartsWithWord(line, "param");
    std::string_view rest = Trim(line.substr(is_default ? 5 : 3));
    size_t eq = rest.find('=');
    if (eq == std::string_view::npos)
      throw CompileError("expected 'Name = value'", where);
    std::string name(Trim(rest.substr(0, eq)));
    std::string value(Trim(rest.substr(eq + 1)));
    if (name.empty() || value.empty())
      throw CompileError("expected 'Name = value'", where);
    ValidateParameterValue(name, value, where);
    if (is_default) {
      auto it = defaults_.find(name);
      if (it != defaults_.end() && it->second != value)
        throw CompileError("contradictory definition of parameter " + name +
                               " (" + it->second + " vs " + value + ")",
                           where);
      defaults_[name] = value;
    } else {
      auto it = sets_.find(name);
      if (it != sets_.end() && it->second != value)
        throw CompileError("contradictory setting of parameter " + name +
                               " (" + it->second + " vs " + value + ")",
                           where);
      sets_[name] = value;
      set_locations_.emplace(name, where);
    }
  }

  void Include(std::string_view spec, const SourceLocation &where) {
    if (spec.size() < 2)
      throw CompileError("malformed #include", where);
    if (spec.front() == '<' && spec.back() == '>') {
      std::string name(spec.substr(1, spec.size() - 2));
      if (name != "weight-rules")
        throw CompileError("unknown built-in include <" + name + ">", where);
      Guarded("<weight-rules>", where,
              [&] { Process(kWeightRules, "<weight-rules>"); });
      return;
    }
    if (spec.front() != '"' || spec.back() != '"')
      throw CompileError("#include expects a quoted path", where);
    std::string name(spec.substr(1, spec.size() - 2));
    auto path = includes_.Resolve(name);
    if (!path) throw CompileError("missing include file " + name, where);
    std::string key = std::filesystem::weakly_canonical(*path).string();
    Guarded(key, where, [&] { Process(ReadFile(*path), path->string()); });
  }

  template <typename F>
  void Guarded(const std::string &key, const SourceLocation &where, F &&body) {
    if (std::find(stack_.begin(), stack_.end(), key) != stack_.end())
      throw CompileError("include cycle through " + key, where);
    stack_.push_back(key);
    body();
    stack_.pop_back();
  }

  const ParameterSet &overrides_;
  const IncludeResolver &includes_;
  std::map<std::string, std::string> defaults_;
  std::map<std::string, std::string> sets_;
  std::map<std::string, SourceLocation> set_locations_;
  std::vector<std::string> stack_;
  ResolvedSource out_;
};

// ---------------------------------------------------------------------------
// Statement compilation.

struct Statement {
  std::string text;
  SourceLocation where;
};

int ParenDepth(std::string_view s) {
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
  }
  return depth;
}

bool EndsWith(std::string_view s, std::string_view tail) {
  return s.size() >= tail.size() && s.substr(s.size() - tail.size()) == tail;
}

std::vector<Statement> JoinStatements(const std::vector<SourceLine> &lines) {
  std::vector<Statement> out;
  std::string pending;
  SourceLocation start;
  int depth = 0;
  for (const auto &line : lines) {
    std::string text(Trim(StripComment(line.text)));
    if (text.empty()) continue;
    if (pending.empty() && text[0] == '=' && !out.empty()) {
      // "= (...)" continues the statement on the previous line.
      pending = out.back().text;
      start = out.back().where;
      out.pop_back();
    }
    if (pending.empty()) {
      start = line.where;
    } else {
      pending += " ";
    }
    pending += text;
    depth += ParenDepth(text);
    if (depth > 0 || EndsWith(text, "-->") || EndsWith(text, "=")) continue;
    out.push_back({pending, start});
    pending.clear();
    depth = 0;
  }
  if (!pending.empty())
    throw CompileError("unterminated statement", start);
  return out;
}

class StatementCompiler {
 public:
  explicit StatementCompiler(const ParameterSet &params) { g_.params = params; }

  void Compile(const Statement &s) {
    std::string_view text = s.text;
    where_ = s.where;
    if (text.find("-->") != std::string_view::npos) {
      CompileProduction(text);
      return;
    }
    std::vector<std::string> words = internal::SplitWhitespace(text);
    const std::string &kw = words[0];
    std::string_view rest = Trim(text.substr(kw.size()));
    if (kw == "feature") {
      for (size_t i = 1; i < words.size(); ++i)
        if (!g_.inventory.Contains(words[i])) g_.inventory.Add(words[i]);
    } else if (kw == "segment") {
      CompileSegment(rest);
    } else if (kw == "macro") {
      size_t eq = rest.find('=');
      if (eq == std::string_view::npos) Fail("expected 'macro NAME = [...]'");
      Macro m{std::string(Trim(rest.substr(0, eq))),
              Bundle(rest.substr(eq + 1))};
      if (m.name.empty()) Fail("macro needs a name");
      if (FindMacro(m.name)) Fail("macro " + m.name + " defined twice");
      g_.macros.push_back(std::move(m));
    } else if (kw == "param" || kw == "set") {
      // interpreted during conditional resolution
    } else if (kw == "filter") {
      if (rest.empty() || rest[0] != '*') Fail("filter must start with '*'");
      Filter f{Bundle(rest.substr(1))};
      if (f.spec.empty()) Fail("filter with an empty specification");
      g_.filters.push_back(std::move(f));
    } else if (kw == "start") {
      if (words.size() != 2) Fail("expected 'start Label'");
      g_.start = words[1];
    } else if (kw == "empty") {
      for (size_t i = 1; i < words.size(); ++i) g_.empty_slots.insert(words[i]);
    } else if (kw == "epenthesis-cap") {
      if (words.size() != 2) Fail("expected 'epenthesis-cap N'");
      try {
        g_.epenthesis_cap = std::stoi(words[1]);
      } catch (const std::exception &) {
        Fail("epenthesis-cap expects an integer");
      }
      if (g_.epenthesis_cap < 1) Fail("epenthesis-cap must be positive");
    } else if (kw == "role") {
      CompileRole(words);
    } else if (kw == "constraint") {
      CompileConstraint(rest);
    } else if (kw == "onset-insertion") {
      g_.onset_insertion = Symbol(rest);
    } else if (kw == "track") {
      try {
        TrackRule rule = ParseTrackRule(rest);
        rule.guard = Bundle(rule.guard.ToString());
        g_.track_rules.push_back(std::move(rule));
      } catch (const TrackRuleError &e) {
        Fail(e.what());
      }
    } else {
      Fail("unknown statement '" + kw + "'");
    }
  }

  const Grammar &partial() const { return g_; }

  Grammar Finish() {
    where_ = {"<grammar>", 0, 0};
    Validate();
    return std::move(g_);
  }

 private:
  [[noreturn]] void Fail(const std::string &msg, int column_offset = 0) const {
    SourceLocation w = where_;
    w.column += column_offset;
    throw CompileError(msg, w);
  }

  const Macro *FindMacro(std::string_view name) const {
    for (const auto &m : g_.macros)
      if (m.name == name) return &m;
    return nullptr;
  }

  FeatureBundle ExpandNamedMacro(const std::string &name) {
    if (const Macro *m = FindMacro(name)) return m->expansion;
    std::string param = name == "SYLLABIC" ? "SyllabicClass" : "MoraicClass";
    if (name != "SYLLABIC" && name != "MORAIC")
      Fail("undefined macro " + name);
    auto value = g_.params.Get(param);
    if (!value) Fail("macro " + name + " requires parameter " + param);
    try {
      return ExpandMacro(name, ParseSonorityClass(*value));
    } catch (const std::exception &e) {
      Fail(e.what());
    }
  }

  // "[+cons, SYLLABIC]"; the brackets are required.
  FeatureBundle Bundle(std::string_view text) {
    text = Trim(text);
    if (text.size() < 2 || text.front() != '[' || text.back() != ']')
      Fail("expected a bracketed feature specification, got '" +
           std::string(text) + "'");
    FeatureBundle out;
    std::string_view body = Trim(text.substr(1, text.size() - 2));
    if (body.empty()) return out;
    for (const auto &item : internal::Split(body, ',')) {
      if (item.empty()) Fail("empty item in feature specification");
      std::optional<FeatureBundle> merged;
      if (item[0] == '+' || item[0] == '-') {
        FeatureBundle one;
        std::string name(Trim(std::string_view(item).substr(1)));
        if (name.empty()) Fail("feature value without a name");
        one.Set(name, item[0] == '+');
        merged = Unify(out, one);
      } else {
        merged = Unify(out, ExpandNamedMacro(item));
      }
      if (!merged) Fail("contradictory feature specification " + std::string(text));
      out = *merged;
    }
    return out;
  }

  std::string Symbol(std::string_view text) {
    text = Trim(text);
    if (text.empty()) Fail("expected a segment symbol");
    if (text.front() == '"') {
      if (text.size() < 2 || text.back() != '"') Fail("unterminated quote");
      return std::string(text.substr(1, text.size() - 2));
    }
    return std::string(text);
  }

  void CompileSegment(std::string_view rest) {
    size_t bracket = rest.find('[');
    if (bracket == std::string_view::npos)
      Fail("segment needs a feature specification");
    std::string symbol = Symbol(rest.substr(0, bracket));
    for (char c : symbol)
      if (c == '.' || c == '(' || c == ')' || c == '\'' || c == ' ')
        Fail("segment symbol '" + symbol + "' uses a reserved character");
    for (const auto &s : g_.segments)
      if (s.symbol == symbol) Fail("segment '" + symbol + "' declared twice");
    g_.segments.push_back({symbol, Bundle(rest.substr(bracket))});
  }

  Constituent ParseConstituent(std::string_view text) {
    text = Trim(text);
    Constituent c;
    size_t colon = text.find(':');
    c.label = std::string(Trim(text.substr(0, colon)));
    if (c.label.empty()) Fail("missing constituent label");
    for (char ch : c.label)
      if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_' &&
          ch != '-')
        Fail("bad constituent label '" + c.label + "'");
    if (colon != std::string_view::npos) c.features = Bundle(text.substr(colon + 1));
    return c;
  }

  void CompileProduction(std::string_view text) {
    size_t arrow = text.find("-->");
    Production p;
    p.where = where_;
    p.lhs = ParseConstituent(text.substr(0, arrow));
    if (p.lhs.IsTerminal()) Fail("X is reserved for terminals");
    std::string_view rhs = Trim(text.substr(arrow + 3));
    if (!rhs.empty() && rhs.back() == '.') rhs = Trim(rhs.substr(0, rhs.size() - 1));
    if (rhs.empty()) Fail("empty right-hand side", static_cast<int>(arrow) + 3);
    if (rhs.front() == '(') {
      if (rhs.back() != ')') Fail("unbalanced parentheses in production");
      std::string_view inner = rhs.substr(1, rhs.size() - 2);
      int depth = 0;
      size_t sep = std::string_view::npos;
      for (size_t i = 0; i < inner.size(); ++i) {
        if (inner[i] == '[') ++depth;
        if (inner[i] == ']') --depth;
        if (depth == 0 && (inner[i] == '/' || inner[i] == '\\')) {
          if (sep != std::string_view::npos)
            Fail("a production has at most two daughters");
          sep = i;
        }
      }
      if (sep == std::string_view::npos)
        Fail("headed pair needs '/' or '\\'");
      p.shape = inner[sep] == '/' ? Shape::kRightHeaded : Shape::kLeftHeaded;
      p.rhs.push_back(ParseConstituent(inner.substr(0, sep)));
      p.rhs.push_back(ParseConstituent(inner.substr(sep + 1)));
    } else {
      p.shape = Shape::kUnary;
      p.rhs.push_back(ParseConstituent(rhs));
    }
    if (std::find(g_.productions.begin(), g_.productions.end(), p) ==
        g_.productions.end())
      g_.productions.push_back(std::move(p));
  }

  void CompileRole(const std::vector<std::string> &words) {
    if (words.size() != 3) Fail("expected 'role <kind> <Label>'");
    const std::string &kind = words[1];
    if (kind == "syllable") g_.roles.syllable = words[2];
    else if (kind == "onset") g_.roles.onset = words[2];
    else if (kind == "nucleus") g_.roles.nucleus = words[2];
    else if (kind == "coda") g_.roles.coda = words[2];
    else if (kind == "mora") g_.roles.mora = words[2];
    else Fail("unknown role '" + kind + "'");
  }

  void CompileConstraint(std::string_view rest) {
    std::vector<std::string> words = internal::SplitWhitespace(rest);
    if (words.empty()) Fail("constraint needs a kind");
    auto kind = ConstraintFromName(words[0]);
    if (!kind) Fail("unknown constraint kind '" + words[0] + "'");
    Constraint c{*kind, {}, {}};
    std::string_view args = Trim(rest.substr(words[0].size()));
    if (*kind == ConstraintKind::kAdjacentPair) {
      size_t close = args.find(']');
      if (close == std::string_view::npos)
        Fail("custom-adjacent-pair expects two feature specifications");
      c.left = Bundle(args.substr(0, close + 1));
      c.right = Bundle(args.substr(close + 1));
    } else if (!args.empty()) {
      Fail("constraint " + words[0] + " takes no arguments");
    }
    if (std::find(g_.constraints.begin(), g_.constraints.end(), c) ==
        g_.constraints.end())
      g_.constraints.push_back(std::move(c));
  }

  void RequireFeatures(const FeatureBundle &b, const std::string &what,
                       const SourceLocation &where) const {
    for (const auto &kv : b.assignments())
      if (!g_.inventory.Contains(kv.first))
        throw CompileError("undeclared feature '" + kv.first + "' in " + what,
                           where);
  }

  void Validate() {
    SourceLocation none{"<grammar>", 0, 0};
    for (const auto &s : g_.segments)
      RequireFeatures(s.features, "segment '" + s.symbol + "'", none);
    for (const auto &m : g_.macros)
      RequireFeatures(m.expansion, "macro " + m.name, none);
    for (const auto &f : g_.filters) RequireFeatures(f.spec, "filter", none);
    for (const auto &c : g_.constraints) {
      RequireFeatures(c.left, "constraint", none);
      RequireFeatures(c.right, "constraint", none);
    }
    for (const auto &r : g_.track_rules)
      RequireFeatures(r.guard, "track rule guard", none);
    for (const auto &p : g_.productions) {
      RequireFeatures(p.lhs.features, "production", p.where);
      for (const auto &c : p.rhs) RequireFeatures(c.features, "production", p.where);
    }

    // Filters prune the inventory.
    std::vector<Segment> kept;
    for (auto &s : g_.segments) {
      bool banned = false;
      for (const auto &f : g_.filters) banned = banned || Matches(s, f.spec);
      (banned ? g_.filtered_out : kept).push_back(std::move(s));
    }
    g_.segments = std::move(kept);

    if (!g_.empty_slots.empty() && !g_.EmptySegment())
      throw CompileError("empty slots declared without an empty segment",
                         none);

    for (const auto &p : g_.productions) {
      for (const auto &c : p.rhs) {
        if (!c.IsTerminal()) continue;
        bool emptiable = p.shape == Shape::kUnary &&
                         g_.empty_slots.count(p.lhs.label) > 0;
        bool any = std::any_of(g_.segments.begin(), g_.segments.end(),
                               [&](const Segment &s) {
                                 return !s.IsEmpty() && Matches(s, c.features);
                               });
        if (!any && !emptiable)
          throw CompileError("no segment left for terminal " + c.ToString() +
                                 " in " + p.ToString(),
                             p.where);
      }
    }

    if (g_.start.empty()) throw CompileError("no start symbol declared", none);
    bool derivable =
        std::any_of(g_.productions.begin(), g_.productions.end(),
                    [&](const Production &p) { return p.lhs.label == g_.start; });
    if (!derivable)
      throw CompileError("start symbol " + g_.start + " has no production",
                         none);
  }

  Grammar g_;
  SourceLocation where_;
};

}  // namespace

std::string SourceLocation::ToString() const {
  std::string out = file.empty() ? "<input>" : file;
  if (line > 0) out += ":" + std::to_string(line);
  if (column > 0) out += ":" + std::to_string(column);
  return out;
}

CompileError::CompileError(const std::string &message, SourceLocation where)
    : std::runtime_error(where.ToString() + ": " + message),
      message_(message),
      where_(std::move(where)) {}

std::string Constituent::ToString() const {
  if (features.empty()) return label;
  return label + ":" + features.ToString();
}

std::string Production::ToString() const {
  std::string out = lhs.ToString() + " --> ";
  switch (shape) {
    case Shape::kUnary: return out + rhs[0].ToString();
    case Shape::kRightHeaded:
      return out + "(" + rhs[0].ToString() + " / " + rhs[1].ToString() + ")";
    case Shape::kLeftHeaded:
      return out + "(" + rhs[0].ToString() + " \\ " + rhs[1].ToString() + ")";
  }
  return out;
}

std::string_view ConstraintName(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::kForbidEmptySyllable: return "forbid-empty-syllable";
    case ConstraintKind::kOnsetAfterFilledCoda:
      return "onset-nonempty-after-filled-coda";
    case ConstraintKind::kCodaSonority: return "coda-sonority";
    case ConstraintKind::kMaximalOnset: return "maximal-onset-preference";
    case ConstraintKind::kGeminate: return "geminate-placement";
    case ConstraintKind::kAdjacentPair: return "custom-adjacent-pair";
  }
  return "";
}

std::optional<ConstraintKind> ConstraintFromName(std::string_view name) {
  for (auto k : {ConstraintKind::kForbidEmptySyllable,
                 ConstraintKind::kOnsetAfterFilledCoda,
                 ConstraintKind::kCodaSonority, ConstraintKind::kMaximalOnset,
                 ConstraintKind::kGeminate, ConstraintKind::kAdjacentPair})
    if (ConstraintName(k) == name) return k;
  return std::nullopt;
}

std::string Constraint::ToString() const {
  std::string out = "constraint " + std::string(ConstraintName(kind));
  if (kind == ConstraintKind::kAdjacentPair)
    out += " " + left.ToString() + " " + right.ToString();
  return out;
}

std::optional<std::string> ParameterSet::Get(std::string_view name) const {
  auto it = values_.find(name);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::pair<std::string, std::string> ParameterSet::ParsePair(
    std::string_view text) {
  size_t eq = text.find('=');
  if (eq == std::string_view::npos)
    throw std::invalid_argument("expected Key=Value, got '" +
                                std::string(text) + "'");
  std::string key(Trim(text.substr(0, eq)));
  std::string value(Trim(text.substr(eq + 1)));
  if (key.empty() || value.empty())
    throw std::invalid_argument("expected Key=Value, got '" +
                                std::string(text) + "'");
  return {key, value};
}

void ValidateParameterValue(const std::string &name, const std::string &value,
                            const SourceLocation &where) {
  auto it = KnownParameters().find(name);
  if (it == KnownParameters().end()) return;
  const auto &domain = it->second;
  if (std::find(domain.begin(), domain.end(), value) == domain.end())
    throw CompileError("parameter " + name + " cannot be '" + value + "'",
                       where);
}

const Segment *Grammar::FindSegment(std::string_view symbol) const {
  for (const auto &s : segments)
    if (s.symbol == symbol) return &s;
  return nullptr;
}

bool Grammar::HasConstraint(ConstraintKind kind) const {
  return std::any_of(constraints.begin(), constraints.end(),
                     [&](const Constraint &c) { return c.kind == kind; });
}

bool Grammar::operator==(const Grammar &o) const {
  return inventory == o.inventory && segments == o.segments &&
         filtered_out == o.filtered_out && productions == o.productions &&
         filters == o.filters && constraints == o.constraints &&
         params == o.params && start == o.start &&
         empty_slots == o.empty_slots && epenthesis_cap == o.epenthesis_cap &&
         roles == o.roles && onset_insertion == o.onset_insertion &&
         track_rules.size() == o.track_rules.size() &&
         std::equal(track_rules.begin(), track_rules.end(),
                    o.track_rules.begin(),
                    [](const TrackRule &a, const TrackRule &b) {
                      return a.ToString() == b.ToString();
                    });
}

std::string Grammar::ToString() const {
  std::ostringstream out;
  out << "feature";
  for (const auto &n : inventory.names()) out << " " << n;
  out << "\n";
  for (const auto &[name, value] : params.values())
    out << "param " << name << " = " << value << "\n";
  for (const auto &s : segments)
    out << "segment \"" << s.symbol << "\" " << s.features.ToString() << "\n";
  for (const auto &s : filtered_out)
    out << "% filtered: \"" << s.symbol << "\" " << s.features.ToString()
        << "\n";
  for (const auto &f : filters) out << "filter *" << f.spec.ToString() << "\n";
  out << "start " << start << "\n";
  if (!empty_slots.empty()) {
    out << "empty";
    for (const auto &e : empty_slots) out << " " << e;
    out << "\n";
  }
  out << "epenthesis-cap " << epenthesis_cap << "\n";
  if (!onset_insertion.empty())
    out << "onset-insertion \"" << onset_insertion << "\"\n";
  for (const auto &p : productions) out << p.ToString() << "\n";
  for (const auto &c : constraints) out << c.ToString() << "\n";
  for (const auto &r : track_rules) out << r.ToString() << "\n";
  return out.str();
}

std::optional<std::filesystem::path> IncludeResolver::Resolve(
    std::string_view name) const {
  for (const auto &dir : search_path_) {
    for (const std::string &candidate :
         {std::string(name), std::string(name) + ".pg"}) {
      std::filesystem::path p = dir / candidate;
      std::error_code ec;
      if (std::filesystem::is_regular_file(p, ec)) return p;
    }
  }
  return std::nullopt;
}

std::string ResolvedSource::Text() const {
  std::string out;
  for (const auto &l : lines) out += l.text + "\n";
  return out;
}

ResolvedSource ResolveConditionals(std::string_view source,
                                   const ParameterSet &overrides,
                                   const IncludeResolver &includes,
                                   const std::string &source_name) {
  Preprocessor pp(overrides, includes);
  pp.Process(source, source_name);
  return pp.Finish();
}

std::string_view WeightRulesSource() { return kWeightRules; }

std::vector<Production> WeightRules(const ParameterSet &params) {
  ResolvedSource resolved =
      ResolveConditionals("#include <weight-rules>\n", params, {},
                          "<weight-rules>");
  StatementCompiler compiler(resolved.params);
  for (const auto &s : JoinStatements(resolved.lines)) compiler.Compile(s);
  return compiler.partial().productions;
}

Grammar Compile(std::string_view source, const ParameterSet &overrides,
                const IncludeResolver &includes,
                const std::string &source_name) {
  ResolvedSource resolved =
      ResolveConditionals(source, overrides, includes, source_name);
  StatementCompiler compiler(resolved.params);
  for (const auto &s : JoinStatements(resolved.lines)) compiler.Compile(s);
  return compiler.Finish();
}

Grammar CompileFile(const std::filesystem::path &path,
                    const ParameterSet &overrides,
                    const IncludeResolver &includes) {
  return Compile(ReadFile(path), overrides, includes, path.string());
}

}  // namespace prosodic
