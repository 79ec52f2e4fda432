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

#include "prosodic/parser.h"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "text_util.h"

namespace prosodic {
namespace {

constexpr size_t kMaxTrees = 200000;

struct Derivation {
  int production = -1;  // -1: a leaf over input segment `leaf`
  int leaf = -1;
  bool empty = false;   // empty segment under a unary slot production
  FeatureBundle leaf_features;
  int kids[2] = {-1, -1};
  int arity = 0;

  bool SameAs(const Derivation &o) const {
    return production == o.production && leaf == o.leaf && empty == o.empty &&
           kids[0] == o.kids[0] && kids[1] == o.kids[1];
  }
};

struct Item {
  int label;
  FeatureBundle features;
  int from;
  int to;
  std::vector<Derivation> derivations;
};

class Chart {
 public:
  Chart(const std::vector<std::string> &symbols, const Grammar &g)
      : g_(g), n_(static_cast<int>(symbols.size())), cap_(g.epenthesis_cap) {
    for (const auto &s : symbols) {
      const Segment *seg = g.FindSegment(s);
      if (!seg || seg->IsEmpty())
        throw ParseError("unknown symbol '" + s + "'");
      segments_.push_back(*seg);
    }
    width_ = cap_ + 1;
    positions_ = (n_ + 1) * width_;
    cells_.resize(static_cast<size_t>(positions_) * positions_);
    x_label_ = LabelId(std::string(kTerminalLabel));
    for (size_t i = 0; i < g.productions.size(); ++i) {
      const Production &p = g.productions[i];
      LabelId(p.lhs.label);
      if (p.shape == Shape::kUnary) {
        unary_[LabelId(p.rhs[0].label)].push_back(static_cast<int>(i));
      } else {
        binary_[{LabelId(p.rhs[0].label), LabelId(p.rhs[1].label)}].push_back(
            static_cast<int>(i));
      }
    }
    start_label_ = LabelId(g.start);
    syllable_label_ = LabelId(g.roles.syllable);
  }

  void Fill() {
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k <= cap_; ++k) {
        Derivation d;
        d.leaf = i;
        Add(x_label_, segments_[i].features, Pos(i, k), Pos(i + 1, 0), d);
      }
    SeedEmpties();
    for (int len = 1; len < positions_; ++len) {
      for (int from = 0; from + len < positions_; ++from) {
        int to = from + len;
        Binary(from, to);
        UnaryClosure(from, to);
      }
    }
  }

  std::vector<ProsodicTree> Trees() {
    std::vector<ProsodicTree> out;
    for (int k = 0; k <= cap_; ++k) {
      for (int id : Cell(Pos(0, 0), Pos(n_, k))) {
        if (items_[id].label != start_label_) continue;
        for (auto &t : Expand(id)) out.push_back(std::move(t));
      }
    }
    return out;
  }

  int LongestPrefix() const {
    for (int i = n_; i > 0; --i)
      for (int k = 0; k <= cap_; ++k)
        for (int id : Cell(Pos(0, 0), Pos(i, k))) {
          int l = items_[id].label;
          if (l == start_label_ || l == syllable_label_) return i;
        }
    return 0;
  }

 private:
  int Pos(int gap, int k) const { return gap * width_ + k; }

  std::vector<int> &Cell(int from, int to) {
    return cells_[static_cast<size_t>(from) * positions_ + to];
  }
  const std::vector<int> &Cell(int from, int to) const {
    return cells_[static_cast<size_t>(from) * positions_ + to];
  }

  int LabelId(const std::string &label) {
    auto it = label_ids_.find(label);
    if (it != label_ids_.end()) return it->second;
    int id = static_cast<int>(labels_.size());
    labels_.push_back(label);
    label_ids_.emplace(label, id);
    return id;
  }

  void Add(int label, const FeatureBundle &features, int from, int to,
           const Derivation &d) {
    auto key = std::make_tuple(label, from, to, features.ToString());
    auto it = index_.find(key);
    if (it == index_.end()) {
      int id = static_cast<int>(items_.size());
      items_.push_back({label, features, from, to, {d}});
      index_.emplace(key, id);
      Cell(from, to).push_back(id);
      return;
    }
    auto &ds = items_[it->second].derivations;
    for (const auto &e : ds)
      if (e.SameAs(d)) return;
    ds.push_back(d);
  }

  void SeedEmpties() {
    const Segment *empty = g_.EmptySegment();
    if (!empty) return;
    for (size_t pi = 0; pi < g_.productions.size(); ++pi) {
      const Production &p = g_.productions[pi];
      if (p.shape != Shape::kUnary || !p.rhs[0].IsTerminal() ||
          !g_.empty_slots.count(p.lhs.label))
        continue;
      // Where the empty segment satisfies the slot it stands for itself
      // (schwa in a nucleus); elsewhere it is an empty consonant carrying
      // the slot's own specification.
      FeatureBundle leaf = Unify(empty->features, p.rhs[0].features)
                               .value_or(p.rhs[0].features);
      auto node = Unify(p.lhs.features, leaf);
      if (!node) continue;
      for (int i = 0; i <= n_; ++i)
        for (int k = 0; k < cap_; ++k) {
          Derivation d;
          d.production = static_cast<int>(pi);
          d.leaf = i;
          d.empty = true;
          d.leaf_features = leaf;
          Add(LabelId(p.lhs.label), *node, Pos(i, k), Pos(i, k + 1), d);
        }
    }
  }

  void Binary(int from, int to) {
    for (int mid = from + 1; mid < to; ++mid) {
      const auto &left = Cell(from, mid);
      const auto &right = Cell(mid, to);
      if (left.empty() || right.empty()) continue;
      for (size_t a = 0; a < left.size(); ++a) {
        for (size_t b = 0; b < right.size(); ++b) {
          int ia = left[a], ib = right[b];
          auto it = binary_.find({items_[ia].label, items_[ib].label});
          if (it == binary_.end()) continue;
          for (int pi : it->second) {
            const Production &p = g_.productions[pi];
            if (!Unify(items_[ia].features, p.rhs[0].features) ||
                !Unify(items_[ib].features, p.rhs[1].features))
              continue;
            const FeatureBundle &head =
                items_[p.HeadIndex() == 0 ? ia : ib].features;
            auto node = Unify(p.lhs.features, head);
            if (!node) continue;
            Derivation d;
            d.production = pi;
            d.kids[0] = ia;
            d.kids[1] = ib;
            d.arity = 2;
            Add(LabelId(p.lhs.label), *node, from, to, d);
          }
        }
      }
    }
  }

  void UnaryClosure(int from, int to) {
    for (size_t idx = 0; idx < Cell(from, to).size(); ++idx) {
      int id = Cell(from, to)[idx];
      auto it = unary_.find(items_[id].label);
      if (it == unary_.end()) continue;
      for (int pi : it->second) {
        const Production &p = g_.productions[pi];
        if (!Unify(items_[id].features, p.rhs[0].features)) continue;
        auto node = Unify(p.lhs.features, items_[id].features);
        if (!node) continue;
        Derivation d;
        d.production = pi;
        d.kids[0] = id;
        d.arity = 1;
        Add(LabelId(p.lhs.label), *node, from, to, d);
      }
    }
  }

  const std::vector<ProsodicTree> &Expand(int id) {
    if (auto it = memo_.find(id); it != memo_.end()) return it->second;
    in_progress_.insert(id);
    std::vector<ProsodicTree> out;
    const Item item = items_[id];
    for (const auto &d : item.derivations) {
      ProsodicTree node;
      node.label = labels_[item.label];
      node.features = item.features;
      if (d.production < 0) {
        node.segment = segments_[d.leaf];
        out.push_back(std::move(node));
        continue;
      }
      const Production &p = g_.productions[d.production];
      if (d.empty) {
        ProsodicTree leaf;
        leaf.label = std::string(kTerminalLabel);
        leaf.features = d.leaf_features;
        leaf.strength = Strength::kStrong;
        leaf.segment = *g_.EmptySegment();
        node.children.push_back(std::move(leaf));
        out.push_back(std::move(node));
        continue;
      }
      bool cyclic = false;
      for (int c = 0; c < d.arity; ++c)
        cyclic = cyclic || in_progress_.count(d.kids[c]) > 0;
      if (cyclic) continue;
      if (d.arity == 1) {
        for (const auto &child : Expand(d.kids[0])) {
          ProsodicTree t = node;
          t.children.push_back(child);
          t.children[0].strength = Strength::kStrong;
          out.push_back(std::move(t));
          Guard(out.size());
        }
      } else {
        const auto &lefts = Expand(d.kids[0]);
        const auto &rights = Expand(d.kids[1]);
        Strength ls = p.shape == Shape::kLeftHeaded ? Strength::kStrong : Strength::kWeak;
        Strength rs = p.shape == Shape::kLeftHeaded ? Strength::kWeak : Strength::kStrong;
        for (const auto &l : lefts)
          for (const auto &r : rights) {
            ProsodicTree t = node;
            t.children.push_back(l);
            t.children.push_back(r);
            t.children[0].strength = ls;
            t.children[1].strength = rs;
            out.push_back(std::move(t));
            Guard(out.size());
          }
      }
    }
    in_progress_.erase(id);
    return memo_.emplace(id, std::move(out)).first->second;
  }

  static void Guard(size_t count) {
    if (count > kMaxTrees)
      throw ParseError("too many analyses (more than " +
                       std::to_string(kMaxTrees) + ")");
  }

  const Grammar &g_;
  int n_;
  int cap_;
  int width_ = 1;
  int positions_ = 1;
  std::vector<Segment> segments_;
  std::vector<std::string> labels_;
  std::map<std::string, int> label_ids_;
  int x_label_ = 0;
  int start_label_ = 0;
  int syllable_label_ = 0;
  std::map<int, std::vector<int>> unary_;
  std::map<std::pair<int, int>, std::vector<int>> binary_;
  std::vector<Item> items_;
  std::map<std::tuple<int, int, int, std::string>, int> index_;
  std::vector<std::vector<int>> cells_;
  std::map<int, std::vector<ProsodicTree>> memo_;
  std::set<int> in_progress_;
};

bool IsConsonant(const ProsodicTree &leaf) {
  return leaf.segment->features.Get("cons").value_or(false);
}

std::vector<int> EmptyPositions(const ProsodicTree &t) {
  std::vector<int> out;
  for (const auto *l : t.Leaves())
    if (l->IsEmptyLeaf()) out.push_back(l->span.begin);
  return out;
}

void CheckCodas(const ProsodicTree &t, const Grammar &g,
                std::vector<Violation> *out) {
  if (t.label == g.roles.coda && t.children.size() == 2) {
    const ProsodicTree &a = t.children[0];
    const ProsodicTree &b = t.children[1];
    if (!a.IsLeaf() || !b.IsLeaf() || a.IsEmptyLeaf() || b.IsEmptyLeaf()) {
      out->push_back({ConstraintKind::kCodaSonority, t.span,
                      "branching coda must be filled"});
    } else if (SonorityOf(a.segment->features) < SonorityOf(b.segment->features)) {
      out->push_back({ConstraintKind::kCodaSonority, t.span,
                      "rising sonority in coda " + a.segment->symbol +
                          b.segment->symbol});
    }
  }
  for (const auto &c : t.children) CheckCodas(c, g, out);
}

}  // namespace

TokenizedWord Tokenize(std::string_view text, const Grammar &g) {
  size_t longest = 1;
  for (const auto &s : g.segments) longest = std::max(longest, s.symbol.size());
  TokenizedWord out;
  for (const std::string &raw : internal::Split(internal::Trim(text), '.')) {
    std::string piece;
    for (char c : raw)
      if (c != '(' && c != ')' && c != ' ') piece += c;
    if (piece.empty()) continue;
    out.piece_starts.push_back(out.symbols.size());
    size_t i = 0;
    while (i < piece.size()) {
      size_t len = std::min(longest, piece.size() - i);
      for (; len > 0; --len) {
        const Segment *s = g.FindSegment(std::string_view(piece).substr(i, len));
        if (s && !s->IsEmpty()) break;
      }
      if (len == 0)
        throw ParseError("unknown symbol at '" + piece.substr(i) + "' in '" +
                         std::string(text) + "'");
      out.symbols.push_back(piece.substr(i, len));
      i += len;
    }
  }
  if (out.symbols.empty()) throw ParseError("empty word");
  return out;
}

std::vector<std::string> NormalizeInput(const TokenizedWord &word,
                                        const Grammar &g) {
  if (g.onset_insertion.empty()) return word.symbols;
  if (!g.FindSegment(g.onset_insertion))
    throw ParseError("onset-insertion symbol '" + g.onset_insertion +
                     "' is not in the inventory");
  std::vector<std::string> out;
  size_t piece = 0;
  for (size_t i = 0; i < word.symbols.size(); ++i) {
    bool starts_piece = piece < word.piece_starts.size() &&
                        word.piece_starts[piece] == i;
    if (starts_piece) {
      ++piece;
      const Segment *s = g.FindSegment(word.symbols[i]);
      if (i > 0 && s && s->features.Get("cons") == false)
        out.push_back(g.onset_insertion);
    }
    out.push_back(word.symbols[i]);
  }
  return out;
}

ParseResult ParseAll(const std::vector<std::string> &symbols, const Grammar &g) {
  if (symbols.empty()) throw ParseError("empty word");
  Chart chart(symbols, g);
  chart.Fill();
  ParseResult result;
  std::map<std::string, ProsodicTree> unique;
  for (auto &t : chart.Trees()) {
    AssignSpans(&t);
    if (!CheckConstraints(t, g).ok) continue;
    std::string key = ToBracketed(t, true);
    unique.emplace(std::move(key), std::move(t));
  }
  for (auto &kv : unique) result.trees.push_back(std::move(kv.second));
  if (result.trees.empty()) {
    result.longest_prefix = chart.LongestPrefix();
    std::string prefix;
    for (int i = 0; i < result.longest_prefix; ++i) prefix += symbols[i];
    result.diagnostic = "no parse; longest analysable prefix is " +
                        std::to_string(result.longest_prefix) + " of " +
                        std::to_string(symbols.size()) + " segments ('" +
                        prefix + "')";
  } else {
    result.longest_prefix = static_cast<int>(symbols.size());
  }
  return result;
}

ConstraintReport CheckConstraints(const ProsodicTree &tree, const Grammar &g) {
  ConstraintReport report;
  WordView view = Analyze(tree, g.roles);
  auto &v = report.violations;
  for (const Constraint &c : g.constraints) {
    switch (c.kind) {
      case ConstraintKind::kForbidEmptySyllable:
        for (const auto &s : view.syllables)
          if (!s.FirstFilled())
            v.push_back({c.kind, s.node->span, "empty syllable"});
        break;
      case ConstraintKind::kOnsetAfterFilledCoda:
        for (size_t k = 1; k < view.syllables.size(); ++k) {
          const auto &prev = view.syllables[k - 1];
          bool coda_filled = std::any_of(
              prev.leaves.begin(), prev.leaves.end(), [](const LeafInfo &l) {
                return l.slot == Slot::kCoda && !l.leaf->IsEmptyLeaf();
              });
          if (coda_filled && !view.syllables[k].OnsetFilled())
            v.push_back({c.kind, view.syllables[k].node->span,
                         "empty onset after a filled coda"});
        }
        break;
      case ConstraintKind::kCodaSonority:
        CheckCodas(tree, g, &v);
        break;
      case ConstraintKind::kGeminate: {
        const LeafInfo *prev = nullptr;
        for (const auto &l : view.leaves) {
          if (l.leaf->IsEmptyLeaf()) continue;
          if (prev && IsConsonant(*l.leaf) &&
              prev->leaf->segment->symbol == l.leaf->segment->symbol) {
            bool tauto = prev->slot == Slot::kCoda && l.slot == Slot::kCoda &&
                         prev->slot_node == l.slot_node;
            bool split = prev->slot == Slot::kCoda && l.slot == Slot::kOnset &&
                         l.syllable == prev->syllable + 1;
            if (!tauto && !split)
              v.push_back({c.kind,
                           {prev->leaf->span.begin, l.leaf->span.end},
                           "geminate " + l.leaf->segment->symbol +
                               l.leaf->segment->symbol +
                               " outside coda or coda|onset"});
          }
          prev = &l;
        }
        break;
      }
      case ConstraintKind::kAdjacentPair:
        for (size_t k = 1; k < view.syllables.size(); ++k) {
          const LeafInfo *last = view.syllables[k - 1].LastFilled();
          const LeafInfo *first = view.syllables[k].FirstFilled();
          if (last && first && Matches(*last->leaf->segment, c.left) &&
              Matches(*first->leaf->segment, c.right))
            v.push_back({c.kind, {last->leaf->span.begin, first->leaf->span.end},
                         "forbidden boundary " + last->leaf->segment->symbol +
                             "." + first->leaf->segment->symbol});
        }
        break;
      case ConstraintKind::kMaximalOnset:
        break;  // a preference, see SelectParse
    }
  }
  report.ok = v.empty();
  return report;
}

int MaximalOnsetViolations(const ProsodicTree &tree, const Grammar &g) {
  WordView view = Analyze(tree, g.roles);
  int count = 0;
  for (size_t k = 0; k < view.syllables.size(); ++k) {
    const SyllableView &s = view.syllables[k];
    if (s.OnsetFilled()) continue;
    const LeafInfo *first = s.FirstFilled();
    if (first && first->slot != Slot::kOnset && IsConsonant(*first->leaf)) {
      ++count;
      continue;
    }
    if (k > 0) {
      const LeafInfo *last = view.syllables[k - 1].LastFilled();
      if (last && last->slot != Slot::kOnset && IsConsonant(*last->leaf)) ++count;
    }
  }
  return count;
}

int EpentheticCount(const ProsodicTree &tree) {
  return static_cast<int>(EmptyPositions(tree).size());
}

ProsodicTree SelectParse(const std::vector<ProsodicTree> &candidates,
                         const Grammar &g) {
  if (candidates.empty())
    throw std::invalid_argument("SelectParse needs at least one candidate");
  bool onset_pref = g.HasConstraint(ConstraintKind::kMaximalOnset);
  using Key = std::tuple<int, int, std::vector<int>, std::string>;
  auto key = [&](const ProsodicTree &t) {
    return Key{onset_pref ? MaximalOnsetViolations(t, g) : 0,
               EpentheticCount(t), EmptyPositions(t), ToBracketed(t, true)};
  };
  size_t best = 0;
  Key best_key = key(candidates[0]);
  for (size_t i = 1; i < candidates.size(); ++i) {
    Key k = key(candidates[i]);
    if (k < best_key) {
      best_key = std::move(k);
      best = i;
    }
  }
  return candidates[best];
}

ProsodicTree ParseWord(std::string_view text, const Grammar &g) {
  std::vector<std::string> symbols = NormalizeInput(Tokenize(text, g), g);
  ParseResult r = ParseAll(symbols, g);
  if (r.trees.empty())
    throw ParseError("'" + std::string(text) + "': " + r.diagnostic);
  return SelectParse(r.trees, g);
}

}  // namespace prosodic
