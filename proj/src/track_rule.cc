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

#include "prosodic/track_rule.h"

#include <cctype>
#include <cstdlib>

#include "text_util.h"

namespace prosodic {
namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  Expr ParseAll() {
    Expr e = ParseSum();
    SkipSpace();
    if (pos_ != text_.size()) Fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  Expr ParseSum() {
    Expr lhs = ParseProduct();
    while (true) {
      SkipSpace();
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
        char op = text_[pos_++];
        lhs = Binary(op, std::move(lhs), ParseProduct());
      } else {
        return lhs;
      }
    }
  }

  Expr ParseProduct() {
    Expr lhs = ParseUnary();
    while (true) {
      SkipSpace();
      if (pos_ < text_.size() && (text_[pos_] == '*' || text_[pos_] == '/')) {
        char op = text_[pos_++];
        lhs = Binary(op, std::move(lhs), ParseUnary());
      } else {
        return lhs;
      }
    }
  }

  Expr ParseUnary() {
    SkipSpace();
    if (pos_ < text_.size() && text_[pos_] == '-') {
      ++pos_;
      Expr e;
      e.kind = Expr::Kind::kNegate;
      e.args.push_back(ParseUnary());
      return e;
    }
    return ParseAtom();
  }

  Expr ParseAtom() {
    SkipSpace();
    if (pos_ >= text_.size()) Fail("unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = ParseSum();
      SkipSpace();
      if (pos_ >= text_.size() || text_[pos_] != ')') Fail("missing ')'");
      ++pos_;
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '.'))
        ++pos_;
      Expr e;
      e.number = std::strtod(std::string(text_.substr(start, pos_ - start)).c_str(),
                             nullptr);
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_'))
        ++pos_;
      Expr e;
      e.kind = Expr::Kind::kVariable;
      e.name = std::string(text_.substr(start, pos_ - start));
      return e;
    }
    Fail("unexpected '" + std::string(1, c) + "'");
    return {};
  }

  static Expr Binary(char op, Expr lhs, Expr rhs) {
    Expr e;
    e.kind = Expr::Kind::kBinary;
    e.op = op;
    e.args.push_back(std::move(lhs));
    e.args.push_back(std::move(rhs));
    return e;
  }

  void SkipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  [[noreturn]] void Fail(const std::string &msg) const {
    throw TrackRuleError("expression '" + std::string(text_) + "': " + msg);
  }

  std::string_view text_;
  size_t pos_ = 0;
};

// Splits "a, (b, c), d" at top-level commas.
std::vector<std::string> SplitTopLevel(std::string_view s) {
  std::vector<std::string> out;
  int depth = 0;
  size_t start = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == ',' && depth == 0) {
      out.emplace_back(internal::Trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.emplace_back(internal::Trim(s.substr(start)));
  return out;
}

// Returns the text inside the parenthesised group starting at s[open].
std::string_view Group(std::string_view s, size_t open, size_t *close) {
  int depth = 0;
  for (size_t i = open; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')' && --depth == 0) {
      *close = i;
      return s.substr(open + 1, i - open - 1);
    }
  }
  throw TrackRuleError("unbalanced parentheses in track rule");
}

Anchor ParseAnchor(const std::string &text) {
  Anchor a;
  size_t pct = text.find('%');
  if (pct == std::string::npos)
    throw TrackRuleError("anchor '" + text + "' lacks '%'");
  char *end = nullptr;
  std::string num(internal::Trim(std::string_view(text).substr(0, pct)));
  a.percent = std::strtod(num.c_str(), &end);
  if (num.empty() || *end != '\0')
    throw TrackRuleError("bad anchor percentage '" + text + "'");
  std::string_view rest = internal::Trim(std::string_view(text).substr(pct + 1));
  if (!rest.empty()) {
    if (rest[0] != '+' && rest[0] != '-')
      throw TrackRuleError("bad anchor offset in '" + text + "'");
    a.offset_sign = rest[0] == '+' ? 1 : -1;
    a.offset_variable = std::string(internal::Trim(rest.substr(1)));
    if (a.offset_variable.empty())
      throw TrackRuleError("missing anchor offset variable in '" + text + "'");
  }
  return a;
}

}  // namespace

Expr Expr::Parse(std::string_view text) { return ExprParser(text).ParseAll(); }

double Expr::Evaluate(
    const std::function<double(const std::string &)> &lookup) const {
  switch (kind) {
    case Kind::kNumber: return number;
    case Kind::kVariable: return lookup(name);
    case Kind::kNegate: return -args[0].Evaluate(lookup);
    case Kind::kBinary: {
      double l = args[0].Evaluate(lookup);
      double r = args[1].Evaluate(lookup);
      switch (op) {
        case '+': return l + r;
        case '-': return l - r;
        case '*': return l * r;
        default: return l / r;
      }
    }
  }
  return 0;
}

void Expr::CollectVariables(std::set<std::string> *out) const {
  if (kind == Kind::kVariable) out->insert(name);
  for (const auto &a : args) a.CollectVariables(out);
}

std::string Expr::ToString() const {
  switch (kind) {
    case Kind::kNumber: return internal::FormatValue(number);
    case Kind::kVariable: return name;
    case Kind::kNegate: return "-" + args[0].ToString();
    case Kind::kBinary: {
      auto wrap = [&](const Expr &e) {
        bool paren = e.kind == Kind::kBinary && (op == '*' || op == '/') &&
                     (e.op == '+' || e.op == '-');
        return paren ? "(" + e.ToString() + ")" : e.ToString();
      };
      std::string rhs = wrap(args[1]);
      if (args[1].kind == Kind::kBinary && (op == '-' || op == '/') &&
          rhs.front() != '(')
        rhs = "(" + rhs + ")";
      return wrap(args[0]) + op + rhs;
    }
  }
  return {};
}

std::string Anchor::ToString() const {
  std::string out = internal::FormatValue(percent) + "%";
  if (!offset_variable.empty())
    out += (offset_sign > 0 ? "+" : "-") + offset_variable;
  return out;
}

std::string TrackValue::ToString() const {
  switch (kind) {
    case ValueKind::kUnconstrained: return "?";
    case ValueKind::kSoft: return "?" + expr.ToString();
    case ValueKind::kConstrained: return expr.ToString();
  }
  return {};
}

std::string TrackRule::ToString() const {
  std::string out = "track " + label;
  if (!guard.empty()) out += ":" + guard.ToString();
  out += " " + parameter + "(";
  for (size_t i = 0; i < anchors.size(); ++i)
    out += (i ? ", " : "") + anchors[i].ToString();
  out += ") = (";
  for (size_t i = 0; i < values.size(); ++i)
    out += (i ? ", " : "") + values[i].ToString();
  return out + ")";
}

TrackRule ParseTrackRule(std::string_view text) {
  text = internal::Trim(text);
  TrackRule rule;
  size_t space = text.find_first_of(" \t");
  if (space == std::string_view::npos)
    throw TrackRuleError("track rule needs a constituent and a parameter");
  std::string_view head = text.substr(0, space);
  size_t colon = head.find(':');
  rule.label = std::string(head.substr(0, colon));
  if (colon != std::string_view::npos) {
    try {
      rule.guard = FeatureBundle::Parse(head.substr(colon + 1));
    } catch (const std::invalid_argument &e) {
      throw TrackRuleError(std::string("track guard: ") + e.what());
    }
  }
  std::string_view rest = internal::Trim(text.substr(space));
  size_t open = rest.find('(');
  if (open == std::string_view::npos || open == 0)
    throw TrackRuleError("track rule lacks a parameter name");
  rule.parameter = std::string(internal::Trim(rest.substr(0, open)));
  size_t close = 0;
  std::string_view anchors = Group(rest, open, &close);
  std::string_view after = internal::Trim(rest.substr(close + 1));
  if (after.empty() || after[0] != '=')
    throw TrackRuleError("track rule lacks '='");
  after = internal::Trim(after.substr(1));
  if (after.empty() || after[0] != '(')
    throw TrackRuleError("track values must be parenthesised");
  size_t vclose = 0;
  std::string_view values = Group(after, 0, &vclose);
  if (!internal::Trim(after.substr(vclose + 1)).empty() &&
      internal::Trim(after.substr(vclose + 1)) != ".")
    throw TrackRuleError("trailing text after track values");

  for (const auto &a : SplitTopLevel(anchors)) rule.anchors.push_back(ParseAnchor(a));
  for (const auto &v : SplitTopLevel(values)) {
    TrackValue tv;
    if (v == "?") {
      tv.kind = ValueKind::kUnconstrained;
    } else if (!v.empty() && v[0] == '?') {
      tv.kind = ValueKind::kSoft;
      tv.expr = Expr::Parse(std::string_view(v).substr(1));
    } else {
      tv.expr = Expr::Parse(v);
    }
    rule.values.push_back(std::move(tv));
  }
  if (rule.anchors.size() != rule.values.size())
    throw TrackRuleError("track rule for " + rule.parameter + " has " +
                         std::to_string(rule.anchors.size()) + " anchors but " +
                         std::to_string(rule.values.size()) + " values");
  return rule;
}

}  // namespace prosodic
