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

#include "prosodic/tree.h"

#include <cctype>

#include "text_util.h"

namespace prosodic {
namespace {

void CollectLeaves(const ProsodicTree &t, std::vector<const ProsodicTree *> *out) {
  if (t.IsLeaf()) {
    out->push_back(&t);
    return;
  }
  for (const auto &c : t.children) CollectLeaves(c, out);
}

std::string Separator(const ProsodicTree &t) {
  return t.children[1].strength == Strength::kStrong ? " / " : " \\ ";
}

void Print(const ProsodicTree &t, bool with_features, std::string *out) {
  *out += t.label;
  if (t.IsLeaf()) {
    *out += ":";
    *out += t.segment->IsEmpty() ? std::string(kEmptyGlyph) : t.segment->symbol;
    if (with_features) *out += t.features.ToString();
    return;
  }
  if (with_features) *out += t.features.ToString();
  *out += "(";
  for (size_t i = 0; i < t.children.size(); ++i) {
    if (i > 0) *out += Separator(t);
    Print(t.children[i], with_features, out);
  }
  *out += ")";
}

class BracketParser {
 public:
  explicit BracketParser(std::string_view text) : text_(text) {}

  ProsodicTree ParseAll() {
    ProsodicTree t = ParseNode();
    SkipSpace();
    if (pos_ != text_.size()) Fail("trailing text");
    return t;
  }

 private:
  ProsodicTree ParseNode() {
    SkipSpace();
    ProsodicTree t;
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_' || text_[pos_] == '-'))
      ++pos_;
    t.label = std::string(text_.substr(start, pos_ - start));
    if (t.label.empty()) Fail("expected a label");
    if (t.label == kTerminalLabel) {
      Expect(':');
      size_t s = pos_;
      while (pos_ < text_.size() && text_[pos_] != ')' && text_[pos_] != '[' &&
             text_[pos_] != ' ')
        ++pos_;
      std::string symbol(text_.substr(s, pos_ - s));
      if (symbol.empty()) Fail("leaf without a symbol");
      if (symbol == kEmptyGlyph) symbol.clear();
      t.features = OptionalBundle();
      t.segment = Segment{symbol, t.features};
      return t;
    }
    t.features = OptionalBundle();
    Expect('(');
    t.children.push_back(ParseNode());
    SkipSpace();
    if (pos_ < text_.size() && (text_[pos_] == '/' || text_[pos_] == '\\')) {
      bool right_strong = text_[pos_] == '/';
      ++pos_;
      t.children.push_back(ParseNode());
      t.children[0].strength = right_strong ? Strength::kWeak : Strength::kStrong;
      t.children[1].strength = right_strong ? Strength::kStrong : Strength::kWeak;
    } else {
      t.children[0].strength = Strength::kStrong;
    }
    SkipSpace();
    Expect(')');
    return t;
  }

  FeatureBundle OptionalBundle() {
    if (pos_ >= text_.size() || text_[pos_] != '[') return {};
    size_t close = text_.find(']', pos_);
    if (close == std::string_view::npos) Fail("unterminated feature bundle");
    std::string_view b = text_.substr(pos_, close - pos_ + 1);
    pos_ = close + 1;
    try {
      return FeatureBundle::Parse(b);
    } catch (const std::invalid_argument &e) {
      Fail(e.what());
    }
  }

  void Expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c)
      Fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void SkipSpace() {
    while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
  }

  [[noreturn]] void Fail(const std::string &msg) const {
    throw TreeFormatError("bracketed tree, column " + std::to_string(pos_ + 1) +
                          ": " + msg);
  }

  std::string_view text_;
  size_t pos_ = 0;
};

int AssignFrom(ProsodicTree *t, int cursor) {
  if (t->IsLeaf()) {
    int width = t->IsEmptyLeaf() ? 0 : 1;
    t->span = {cursor, cursor + width};
    return cursor + width;
  }
  int begin = cursor;
  for (auto &c : t->children) cursor = AssignFrom(&c, cursor);
  t->span = {begin, cursor};
  return cursor;
}

Strength StrengthFromName(std::string_view s) {
  if (s == "strong") return Strength::kStrong;
  if (s == "weak") return Strength::kWeak;
  if (s == "root") return Strength::kRoot;
  throw TreeFormatError("unknown strength '" + std::string(s) + "'");
}

Slot SlotFor(const std::string &label, const Roles &roles) {
  if (label == roles.onset) return Slot::kOnset;
  if (label == roles.nucleus) return Slot::kNucleus;
  if (label == roles.coda) return Slot::kCoda;
  if (label == roles.mora) return Slot::kMora;
  return Slot::kOther;
}

void Walk(const ProsodicTree &t, const Roles &roles, const ProsodicTree *slot_node,
          Slot slot, int syllable, WordView *view) {
  if (t.label == roles.syllable && syllable < 0) {
    syllable = static_cast<int>(view->syllables.size());
    view->syllables.push_back({&t, {}});
  }
  Slot here = SlotFor(t.label, roles);
  if (here != Slot::kOther) {
    slot = here;
    slot_node = &t;
  }
  if (t.IsLeaf()) {
    LeafInfo info{&t, slot_node, slot, syllable};
    view->leaves.push_back(info);
    if (syllable >= 0) view->syllables[syllable].leaves.push_back(info);
    return;
  }
  for (const auto &c : t.children) Walk(c, roles, slot_node, slot, syllable, view);
}

}  // namespace

std::string_view StrengthName(Strength s) {
  switch (s) {
    case Strength::kRoot: return "root";
    case Strength::kStrong: return "strong";
    case Strength::kWeak: return "weak";
  }
  return "root";
}

size_t ProsodicTree::HeadIndex() const {
  for (size_t i = 0; i < children.size(); ++i)
    if (children[i].strength == Strength::kStrong) return i;
  return 0;
}

std::vector<const ProsodicTree *> ProsodicTree::Leaves() const {
  std::vector<const ProsodicTree *> out;
  CollectLeaves(*this, &out);
  return out;
}

std::vector<std::string> ProsodicTree::Yield() const {
  std::vector<std::string> out;
  for (const auto *l : Leaves())
    if (!l->IsEmptyLeaf()) out.push_back(l->segment->symbol);
  return out;
}

void AssignSpans(ProsodicTree *tree) { AssignFrom(tree, 0); }

std::string ToBracketed(const ProsodicTree &tree, bool with_features) {
  std::string out;
  Print(tree, with_features, &out);
  return out;
}

ProsodicTree ParseBracketed(std::string_view text) {
  ProsodicTree t = BracketParser(internal::Trim(text)).ParseAll();
  AssignSpans(&t);
  return t;
}

nlohmann::ordered_json ToJson(const ProsodicTree &t) {
  nlohmann::ordered_json j;
  j["label"] = t.label;
  j["strength"] = std::string(StrengthName(t.strength));
  j["features"] = t.features.ToString();
  j["span"] = {t.span.begin, t.span.end};
  if (t.IsLeaf()) {
    j["segment"] = t.segment->symbol;
    j["segment_features"] = t.segment->features.ToString();
  } else {
    j["children"] = nlohmann::ordered_json::array();
    for (const auto &c : t.children) j["children"].push_back(ToJson(c));
  }
  return j;
}

ProsodicTree TreeFromJson(const nlohmann::ordered_json &j) {
  try {
    ProsodicTree t;
    t.label = j.at("label").get<std::string>();
    t.strength = StrengthFromName(j.at("strength").get<std::string>());
    t.features = FeatureBundle::Parse(j.at("features").get<std::string>());
    t.span = {j.at("span").at(0).get<int>(), j.at("span").at(1).get<int>()};
    if (j.contains("segment")) {
      t.segment = Segment{
          j.at("segment").get<std::string>(),
          FeatureBundle::Parse(j.at("segment_features").get<std::string>())};
    } else {
      for (const auto &c : j.at("children")) t.children.push_back(TreeFromJson(c));
    }
    return t;
  } catch (const nlohmann::json::exception &e) {
    throw TreeFormatError(std::string("tree json: ") + e.what());
  } catch (const std::invalid_argument &e) {
    throw TreeFormatError(std::string("tree json: ") + e.what());
  }
}

bool SyllableView::OnsetFilled() const {
  for (const auto &l : leaves)
    if (l.slot == Slot::kOnset && !l.leaf->IsEmptyLeaf()) return true;
  return false;
}

const LeafInfo *SyllableView::FirstFilled() const {
  for (const auto &l : leaves)
    if (!l.leaf->IsEmptyLeaf()) return &l;
  return nullptr;
}

const LeafInfo *SyllableView::LastFilled() const {
  for (auto it = leaves.rbegin(); it != leaves.rend(); ++it)
    if (!it->leaf->IsEmptyLeaf()) return &*it;
  return nullptr;
}

WordView Analyze(const ProsodicTree &tree, const Roles &roles) {
  WordView view;
  Walk(tree, roles, nullptr, Slot::kOther, -1, &view);
  return view;
}

std::string Transcription(const ProsodicTree &tree, const Roles &roles,
                          std::optional<size_t> stressed) {
  WordView view = Analyze(tree, roles);
  std::string out;
  int current = -2;
  for (const auto &l : view.leaves) {
    if (l.syllable != current) {
      if (current != -2 && l.syllable >= 0) out += ".";
      if (stressed && l.syllable >= 0 &&
          static_cast<size_t>(l.syllable) == *stressed)
        out += "'";
      current = l.syllable;
    }
    if (!l.leaf->IsEmptyLeaf())
      out += l.leaf->segment->symbol;
    else if (l.slot == Slot::kNucleus)
      out += "@";
  }
  return out;
}

}  // namespace prosodic
