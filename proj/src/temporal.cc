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

#include "prosodic/temporal.h"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "text_util.h"

namespace prosodic {
namespace {

using internal::FormatMs;
using internal::SplitWhitespace;
using internal::Trim;

std::string ReadTable(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TableFormatError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Calls `f(fields, line_no)` for each non-blank line with comments removed.
void ForEachLine(std::string_view text, const std::string &source,
                 const std::function<void(const std::vector<std::string> &,
                                          const std::string &)> &f) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw.substr(0, raw.find('%'));
    if (Trim(line).empty()) continue;
    f(SplitWhitespace(Trim(line)), source + ":" + std::to_string(line_no));
  }
}

Micros ParseAt(const std::string &text, const std::string &where) {
  try {
    return ParseMs(text);
  } catch (const TableFormatError &e) {
    throw TableFormatError(where + ": " + e.what());
  }
}

std::string Describe(const ProsodicTree &node) {
  if (node.IsLeaf())
    return "X:" + (node.IsEmptyLeaf() ? std::string(kEmptyGlyph)
                                      : node.segment->symbol);
  return node.label + " over [" + std::to_string(node.span.begin) + "," +
         std::to_string(node.span.end) + ")";
}

// Path of nodes from `root` to `target`, both included.
bool PathTo(const ProsodicTree &root, const ProsodicTree *target,
            std::vector<const ProsodicTree *> *path) {
  path->push_back(&root);
  if (&root == target) return true;
  for (const auto &c : root.children)
    if (PathTo(c, target, path)) return true;
  path->pop_back();
  return false;
}

const ProsodicTree *HeadLeaf(const ProsodicTree &node) {
  const ProsodicTree *n = &node;
  while (!n->IsLeaf()) n = &n->Head();
  return n;
}

const ProsodicTree *FirstFilled(const ProsodicTree &node) {
  for (const auto *l : node.Leaves())
    if (!l->IsEmptyLeaf()) return l;
  return nullptr;
}

class Solver {
 public:
  Solver(const ProsodicTree &root, const DurationTable &d,
         const NonOverlapTable &o)
      : root_(root), durations_(d), overlap_(o) {}

  TimedNode Lay(const ProsodicTree &n, Micros start,
                std::optional<Micros> allotted) {
    std::optional<Micros> own = Intrinsic(n);
    if (!own && !allotted)
      throw SolveError("unsolvable: no duration derivable for " + Describe(n));
    Micros dur = own ? *own : *allotted;
    TimedNode t{&n, start, start + dur, {}};
    if (n.IsLeaf()) return t;
    if (n.children.size() == 1) {
      t.children.push_back(Lay(n.children[0], start, dur));
      return t;
    }
    size_t si = n.HeadIndex();
    const ProsodicTree &s = n.children[si];
    const ProsodicTree &w = n.children[1 - si];
    std::optional<Micros> ds = Intrinsic(s);
    std::optional<Micros> dw = Intrinsic(w);
    Micros nonoverlap = NonOverlap(w, s, ds);
    Micros wdur = dw ? *dw : dur - nonoverlap;
    if (wdur < Micros(0))
      throw SolveError("over-constrained: " + Describe(w) + " would last " +
                       FormatMs(wdur) + " ms");
    Micros sdur = ds ? *ds : dur;
    if (sdur > dur)
      throw SolveError("over-constrained: " + Describe(s) + " (" +
                       FormatMs(sdur) + " ms) is longer than " + Describe(n) +
                       " (" + FormatMs(dur) + " ms)");
    bool right_strong = si == 1;
    TimedNode tw = Lay(w, right_strong ? start : t.end - wdur, wdur);
    TimedNode ts = Lay(s, right_strong ? t.end - sdur : start, sdur);
    if (right_strong) {
      t.children.push_back(std::move(tw));
      t.children.push_back(std::move(ts));
    } else {
      t.children.push_back(std::move(ts));
      t.children.push_back(std::move(tw));
    }
    return t;
  }

 private:
  std::optional<Micros> Intrinsic(const ProsodicTree &n) {
    if (auto it = memo_.find(&n); it != memo_.end()) return it->second;
    std::optional<Micros> out;
    if (n.IsEmptyLeaf()) {
      out = Micros(0);
    } else if (n.IsLeaf()) {
      out = LeafDuration(root_, n, durations_);
    } else if (n.children.size() == 1) {
      out = Intrinsic(n.children[0]);
    } else {
      const ProsodicTree &s = n.Head();
      const ProsodicTree &w = n.children[1 - n.HeadIndex()];
      std::optional<Micros> ds = Intrinsic(s);
      if (auto dw = Intrinsic(w))
        out = *dw + NonOverlap(w, s, ds);
      else
        out = ds;
    }
    memo_.emplace(&n, out);
    return out;
  }

  // With no table entry the weak sister is not overlaid at all.
  Micros NonOverlap(const ProsodicTree &w, const ProsodicTree &s,
                    std::optional<Micros> ds) {
    const ProsodicTree *wl = HeadLeaf(w);
    const ProsodicTree *sl = HeadLeaf(s);
    if (auto v = overlap_.Find(*wl->segment, *sl->segment)) return *v;
    if (ds) return *ds;
    throw SolveError("unsolvable: no non-overlap entry for " + Describe(*wl) +
                     " before " + Describe(*sl) +
                     " and no duration for the latter");
  }

  const ProsodicTree &root_;
  const DurationTable &durations_;
  const NonOverlapTable &overlap_;
  std::map<const ProsodicTree *, std::optional<Micros>> memo_;
};

const TimedNode *LastMora(const TimedNode &t, const Roles &roles) {
  for (auto it = t.children.rbegin(); it != t.children.rend(); ++it)
    if (const TimedNode *m = LastMora(*it, roles)) return m;
  return t.node->label == roles.mora ? &t : nullptr;
}

const TimedNode *LastFilledLeaf(const TimedNode &t) {
  if (t.node->IsLeaf()) return t.node->IsEmptyLeaf() ? nullptr : &t;
  for (auto it = t.children.rbegin(); it != t.children.rend(); ++it)
    if (const TimedNode *m = LastFilledLeaf(*it)) return m;
  return nullptr;
}

bool ContainsSyllable(const ProsodicTree &t, const Roles &roles) {
  if (t.label == roles.syllable) return true;
  for (const auto &c : t.children)
    if (ContainsSyllable(c, roles)) return true;
  return false;
}

// Solves syllables on their own and joins them left to right; nodes above
// them span their descendants.
TimedNode LaySupra(const ProsodicTree &n, Solver *solver, const Roles &roles,
                   const NonOverlapTable &overlap, const TimedNode **prev) {
  if (n.label == roles.syllable || !ContainsSyllable(n, roles)) {
    TimedNode t = solver->Lay(n, Micros(0), std::nullopt);
    if (*prev) {
      CrossSyllableOverlay(**prev, &t, overlap, roles);
    }
    return t;
  }
  TimedNode t{&n, Micros(0), Micros(0), {}};
  t.children.reserve(n.children.size());
  for (const auto &c : n.children) {
    t.children.push_back(LaySupra(c, solver, roles, overlap, prev));
    *prev = &t.children.back();
    // Descend to the syllable itself so the next overlay sees its moras.
    while ((*prev)->node->label != roles.syllable && !(*prev)->children.empty())
      *prev = &(*prev)->children.back();
  }
  t.start = t.children.front().start;
  t.end = t.children.front().end;
  for (const auto &c : t.children) {
    t.start = std::min(t.start, c.start);
    t.end = std::max(t.end, c.end);
  }
  return t;
}

nlohmann::ordered_json NodeJson(const TimedNode &t) {
  nlohmann::ordered_json j;
  j["label"] = t.node->label;
  if (t.node->segment)
    j["segment"] = t.node->IsEmptyLeaf() ? std::string(kEmptyGlyph)
                                         : t.node->segment->symbol;
  j["start_ms"] = t.start.count() / 1000.0;
  j["end_ms"] = t.end.count() / 1000.0;
  if (!t.children.empty()) {
    j["children"] = nlohmann::ordered_json::array();
    for (const auto &c : t.children) j["children"].push_back(NodeJson(c));
  }
  return j;
}

void CollectLeaves(const TimedNode &t, std::ostringstream *out) {
  if (t.node->IsLeaf()) {
    if (!t.node->IsEmptyLeaf())
      *out << t.node->segment->symbol << "," << FormatMs(t.start) << ","
           << FormatMs(t.end) << "\n";
    return;
  }
  for (const auto &c : t.children) CollectLeaves(c, out);
}

}  // namespace

std::vector<std::string> Selectors(const Segment &segment) {
  std::vector<std::string> out;
  if (!segment.IsEmpty()) out.push_back("/" + segment.symbol + "/");
  std::string fine = SegmentClass(segment.features);
  out.push_back(fine);
  std::string coarse(SonorityName(SonorityOf(segment.features)));
  if (coarse != fine) out.push_back(coarse);
  out.push_back("*");
  return out;
}

Micros ParseMs(std::string_view text) {
  std::string s(Trim(text));
  if (s.size() > 2 && s.substr(s.size() - 2) == "ms") s.resize(s.size() - 2);
  size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (s.empty() || used != s.size() || !std::isfinite(v))
    throw TableFormatError("expected a number of milliseconds, got '" +
                           std::string(text) + "'");
  return Micros(std::llround(v * 1000));
}

DurationTable DurationTable::Parse(std::string_view text,
                                   const std::string &source_name) {
  DurationTable t;
  ForEachLine(text, source_name,
              [&](const std::vector<std::string> &f, const std::string &where) {
                if (f.size() != 2 || f[0].find(':') == std::string::npos)
                  throw TableFormatError(
                      where + ": expected 'context:selector duration-ms'");
                Micros ms = ParseAt(f[1], where);
                if (ms <= Micros(0))
                  throw TableFormatError(where + ": duration must be positive");
                if (t.entries_.count(f[0]))
                  throw TableFormatError(where + ": duplicate entry " + f[0]);
                t.entries_[f[0]] = ms;
              });
  return t;
}

DurationTable DurationTable::Load(const std::filesystem::path &path) {
  return Parse(ReadTable(path), path.string());
}

void DurationTable::Set(const std::string &key, Micros duration) {
  if (duration <= Micros(0))
    throw TableFormatError("duration for " + key + " must be positive");
  entries_[key] = duration;
}

std::optional<Micros> DurationTable::Get(std::string_view key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::optional<Micros> DurationTable::Find(std::string_view context,
                                          const Segment &segment) const {
  for (const auto &sel : Selectors(segment))
    if (auto v = Get(std::string(context) + ":" + sel)) return v;
  return std::nullopt;
}

void DurationTable::Merge(const DurationTable &other) {
  for (const auto &[k, v] : other.entries_) entries_[k] = v;
}

NonOverlapTable NonOverlapTable::Parse(std::string_view text,
                                       const std::string &source_name) {
  NonOverlapTable t;
  ForEachLine(
      text, source_name,
      [&](const std::vector<std::string> &f, const std::string &where) {
        bool syl = f.size() == 4 && f[0] == "syllable";
        if (!syl && f.size() != 3)
          throw TableFormatError(where +
                                 ": expected 'weak strong ms' or "
                                 "'syllable prev next ms'");
        Micros ms = ParseAt(f.back(), where);
        if (ms < Micros(0))
          throw TableFormatError(where + ": overlap must not be negative");
        auto &map = syl ? t.syllable_ : t.entries_;
        auto key = syl ? std::make_pair(f[1], f[2]) : std::make_pair(f[0], f[1]);
        if (map.count(key))
          throw TableFormatError(where + ": duplicate entry");
        map[key] = ms;
      });
  return t;
}

NonOverlapTable NonOverlapTable::Load(const std::filesystem::path &path) {
  return Parse(ReadTable(path), path.string());
}

void NonOverlapTable::Set(const std::string &weak, const std::string &strong,
                          Micros ms) {
  entries_[{weak, strong}] = ms;
}

void NonOverlapTable::SetSyllable(const std::string &prev,
                                  const std::string &next, Micros ms) {
  syllable_[{prev, next}] = ms;
}

namespace {

std::optional<Micros> FindPair(
    const std::map<std::pair<std::string, std::string>, Micros> &map,
    const Segment &a, const Segment &b) {
  std::vector<std::string> sa = Selectors(a), sb = Selectors(b);
  for (const auto &y : sb)
    for (const auto &x : sa)
      if (auto it = map.find({x, y}); it != map.end()) return it->second;
  return std::nullopt;
}

}  // namespace

std::optional<Micros> NonOverlapTable::Find(const Segment &weak,
                                            const Segment &strong) const {
  return FindPair(entries_, weak, strong);
}

std::optional<Micros> NonOverlapTable::FindSyllable(
    const Segment &prev_last, const Segment &next_first) const {
  return FindPair(syllable_, prev_last, next_first);
}

void NonOverlapTable::Merge(const NonOverlapTable &other) {
  for (const auto &[k, v] : other.entries_) entries_[k] = v;
  for (const auto &[k, v] : other.syllable_) syllable_[k] = v;
}

void TimedNode::Shift(Micros by) {
  start += by;
  end += by;
  for (auto &c : children) c.Shift(by);
}

std::optional<Micros> LeafDuration(const ProsodicTree &root,
                                   const ProsodicTree &leaf,
                                   const DurationTable &durations) {
  std::vector<const ProsodicTree *> path;
  if (!PathTo(root, &leaf, &path))
    throw std::invalid_argument("leaf is not part of the tree");
  // Walk up the unary chain above the leaf.
  size_t top = path.size() - 1;
  while (top > 0 && path[top - 1]->children.size() == 1) --top;
  if (top > 0) {
    const ProsodicTree &parent = *path[top - 1];
    if (&parent.Head() == path[top]) {
      const ProsodicTree &weak = parent.children[1 - parent.HeadIndex()];
      if (const ProsodicTree *first = FirstFilled(weak)) {
        bool voiced = first->segment->features.Get("voi").value_or(false);
        std::string ctx =
            parent.label + (voiced ? ".head.voiced" : ".head.voiceless");
        if (auto v = durations.Find(ctx, *leaf.segment)) return v;
      }
    }
  }
  for (size_t i = path.size() - 1; i-- > top;) {
    if (auto v = durations.Find(path[i]->label + ".simple", *leaf.segment))
      return v;
  }
  if (auto v = durations.Find(leaf.label + ".simple", *leaf.segment)) return v;
  return std::nullopt;
}

TimedTree Solve(const ProsodicTree &tree, const DurationTable &durations,
                const NonOverlapTable &overlap, const Roles &roles) {
  TimedTree out;
  auto owned = std::make_shared<ProsodicTree>(tree);
  AssignSpans(owned.get());
  out.tree = owned;
  Solver solver(*owned, durations, overlap);
  const TimedNode *prev = nullptr;
  out.root = LaySupra(*owned, &solver, roles, overlap, &prev);
  return out;
}

Micros OnsetDuration(const DurationTable &durations, bool binary,
                     const Segment &first, const Roles &roles) {
  std::optional<Micros> v;
  if (binary) {
    bool voiced = first.features.Get("voi").value_or(false);
    v = durations.Get(roles.onset +
                      (voiced ? ".head.voiced:*" : ".head.voiceless:*"));
  } else {
    v = durations.Find(roles.onset + ".simple", first);
  }
  if (!v)
    throw LookupError("no " + std::string(binary ? "binary" : "simple") +
                      " onset duration for class " +
                      SegmentClass(first.features));
  return *v;
}

void CrossSyllableOverlay(const TimedNode &prev, TimedNode *next,
                          const NonOverlapTable &overlap, const Roles &roles) {
  const TimedNode *last = LastFilledLeaf(prev);
  const ProsodicTree *first = FirstFilled(*next->node);
  Micros ov{0};
  if (last && first) {
    if (auto v = overlap.FindSyllable(*last->node->segment, *first->segment))
      ov = *v;
  }
  const TimedNode *limit = LastMora(prev, roles);
  if (!limit) limit = last;
  Micros room = limit ? limit->duration() : Micros(0);
  if (ov > room)
    throw SolveError("overlap of " + FormatMs(ov) + " ms exceeds the " +
                     FormatMs(room) + " ms final " +
                     (limit && limit->node->label == roles.mora ? "mora"
                                                                 : "segment") +
                     " of " + Describe(*prev.node));
  next->Shift(prev.end - ov - next->start);
}

nlohmann::ordered_json ToJson(const TimedTree &timed) {
  return NodeJson(timed.root);
}

std::string LeafCsv(const TimedTree &timed) {
  std::ostringstream out;
  out << "symbol,start_ms,end_ms\n";
  CollectLeaves(timed.root, &out);
  return out.str();
}

}  // namespace prosodic
