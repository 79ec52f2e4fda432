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

#include "prosodic/tracks.h"

#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "text_util.h"

namespace prosodic {
namespace {

using internal::FormatMs;
using internal::FormatValue;
using internal::Trim;

int Count(const std::optional<FeatureBundle> &b) {
  return b ? static_cast<int>(b->size()) : 0;
}

bool SlotMatches(const std::optional<FeatureBundle> &spec,
                 const std::optional<FeatureBundle> &have) {
  if (!spec) return true;
  return have && have->Subsumes(*spec);
}

bool SlotCompatible(const std::optional<FeatureBundle> &a,
                    const std::optional<FeatureBundle> &b) {
  return !a || !b || Unify(*a, *b).has_value();
}

LookupEntry ParseEntry(std::string_view line, const std::string &where) {
  size_t eq = line.rfind('=');
  if (eq == std::string_view::npos)
    throw TableFormatError(where + ": expected 'Variable [conditions] = value'");
  LookupEntry e;
  e.where = where;
  std::string value(Trim(line.substr(eq + 1)));
  size_t used = 0;
  try {
    e.value = std::stod(value, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (value.empty() || used != value.size() || !std::isfinite(e.value))
    throw TableFormatError(where + ": bad value '" + value + "'");
  std::string_view lhs = Trim(line.substr(0, eq));
  size_t sp = lhs.find_first_of(" \t");
  e.variable = std::string(lhs.substr(0, sp));
  if (e.variable.empty())
    throw TableFormatError(where + ": missing variable name");
  std::string_view rest =
      sp == std::string_view::npos ? std::string_view() : Trim(lhs.substr(sp));
  while (!rest.empty()) {
    size_t open = rest.find('[');
    size_t close = rest.find(']');
    if (open == std::string_view::npos || close == std::string_view::npos ||
        close < open)
      throw TableFormatError(where + ": expected self[..], left[..] or right[..]");
    std::string slot(Trim(rest.substr(0, open)));
    FeatureBundle spec;
    try {
      spec = FeatureBundle::Parse(rest.substr(open, close - open + 1));
    } catch (const std::invalid_argument &ex) {
      throw TableFormatError(where + ": " + ex.what());
    }
    std::optional<FeatureBundle> *target = slot == "self"    ? &e.self
                                           : slot == "left"  ? &e.left
                                           : slot == "right" ? &e.right
                                                             : nullptr;
    if (!target)
      throw TableFormatError(where + ": unknown condition '" + slot + "'");
    if (*target)
      throw TableFormatError(where + ": repeated condition '" + slot + "'");
    *target = spec;
    rest = Trim(rest.substr(close + 1));
  }
  return e;
}

std::string Describe(const ProsodicTree &n) {
  return n.label + "[" + std::to_string(n.span.begin) + "," +
         std::to_string(n.span.end) + ")";
}

const ProsodicTree *FilledLeafAt(const ProsodicTree &root, int index) {
  for (const auto *l : root.Leaves())
    if (!l->IsEmptyLeaf() && l->span.begin == index) return l;
  return nullptr;
}

struct Point {
  double value;
  bool soft;
  int node;
  std::string source;
};

using Track = std::map<Micros, Point>;

std::optional<double> Interpolate(const std::map<Micros, double> &track,
                                  Micros t) {
  if (track.empty()) return std::nullopt;
  auto hi = track.lower_bound(t);
  if (hi != track.end() && hi->first == t) return hi->second;
  if (hi == track.begin() || hi == track.end()) return std::nullopt;
  auto lo = std::prev(hi);
  double f = static_cast<double>((t - lo->first).count()) /
             static_cast<double>((hi->first - lo->first).count());
  return lo->second + f * (hi->second - lo->second);
}

class Composer {
 public:
  Composer(const TimedTree &timed, const std::vector<TrackRule> &rules,
           const LookupTables &tables)
      : timed_(timed), rules_(rules), tables_(tables) {}

  TrackSet Run() {
    Visit(timed_.root);
    TrackSet out;
    for (const auto &[param, track] : work_)
      for (const auto &[t, p] : track) out.Set(param, t, p.value);
    // Unconstrained points read the finished track.
    for (const auto &[param, times] : pending_) {
      auto it = out.tracks().find(param);
      if (it == out.tracks().end()) continue;
      std::map<Micros, double> snapshot = it->second;
      for (Micros t : times)
        if (!snapshot.count(t))
          if (auto v = Interpolate(snapshot, t)) out.Set(param, t, *v);
    }
    return out;
  }

 private:
  void Visit(const TimedNode &t) {
    int id = next_id_++;
    for (const auto &rule : rules_) {
      if (!RuleApplies(rule, *t.node)) continue;
      auto bps = EvaluateRule(rule, t, ContextOf(timed_, t), tables_);
      Overlay(rule, bps, id, rule.ToString() + " on " + Describe(*t.node));
    }
    if (t.children.size() == 1) {
      Visit(t.children[0]);
    } else if (t.children.size() == 2) {
      size_t head = t.node->HeadIndex();
      Visit(t.children[head]);
      Visit(t.children[1 - head]);
    }
  }

  void Overlay(const TrackRule &rule, const std::vector<Breakpoint> &bps,
               int node, const std::string &source) {
    Track &track = work_[rule.parameter];
    std::optional<Micros> lo, hi;
    for (const auto &b : bps) {
      if (b.kind == ValueKind::kUnconstrained) {
        pending_[rule.parameter].push_back(b.time);
        continue;
      }
      if (!lo || b.time < *lo) lo = b.time;
      if (!hi || b.time > *hi) hi = b.time;
    }
    if (!lo) return;
    for (const auto &b : bps) {
      if (b.kind != ValueKind::kConstrained) continue;
      auto it = track.find(b.time);
      if (it != track.end() && it->second.node == node && !it->second.soft &&
          std::abs(it->second.value - b.value) > 1e-9)
        throw CompositionError(
            "conflicting " + rule.parameter + " values at " +
            FormatMs(b.time) + " ms: " + FormatValue(it->second.value) +
            " from " + it->second.source + " and " + FormatValue(b.value) +
            " from " + source);
    }
    track.erase(track.lower_bound(*lo), track.upper_bound(*hi));
    for (const auto &b : bps)
      if (b.kind != ValueKind::kUnconstrained)
        track[b.time] = {b.value, b.kind == ValueKind::kSoft, node, source};
  }

  const TimedTree &timed_;
  const std::vector<TrackRule> &rules_;
  const LookupTables &tables_;
  std::map<std::string, Track> work_;
  std::map<std::string, std::vector<Micros>> pending_;
  int next_id_ = 0;
};

}  // namespace

int LookupEntry::Specificity() const {
  return Count(self) + Count(left) + Count(right);
}

bool LookupEntry::MatchesContext(const LookupContext &ctx) const {
  return SlotMatches(self, ctx.self) && SlotMatches(left, ctx.left) &&
         SlotMatches(right, ctx.right);
}

bool LookupEntry::CompatibleWith(const LookupEntry &o) const {
  return SlotCompatible(self, o.self) && SlotCompatible(left, o.left) &&
         SlotCompatible(right, o.right);
}

std::string LookupEntry::ToString() const {
  std::string out = variable;
  if (self) out += " self" + self->ToString();
  if (left) out += " left" + left->ToString();
  if (right) out += " right" + right->ToString();
  return out + " = " + FormatValue(value);
}

LookupTables LookupTables::Parse(std::string_view text,
                                 const std::string &source_name) {
  LookupTables t;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw.substr(0, raw.find('%'));
    if (Trim(line).empty()) continue;
    t.Add(ParseEntry(Trim(line), source_name + ":" + std::to_string(line_no)));
  }
  return t;
}

LookupTables LookupTables::Load(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TableFormatError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return Parse(ss.str(), path.string());
}

void LookupTables::Add(LookupEntry entry) {
  for (const auto &e : entries_) {
    if (e.variable != entry.variable ||
        e.Specificity() != entry.Specificity() || !e.CompatibleWith(entry) ||
        e.value == entry.value)
      continue;
    throw TableFormatError(entry.where + ": '" + entry.ToString() +
                           "' ties with '" + e.ToString() + "' (" + e.where +
                           ")");
  }
  entries_.push_back(std::move(entry));
}

std::optional<double> LookupTables::Find(const std::string &variable,
                                         const LookupContext &ctx) const {
  const LookupEntry *best = nullptr;
  for (const auto &e : entries_) {
    if (e.variable != variable || !e.MatchesContext(ctx)) continue;
    if (!best || e.Specificity() > best->Specificity()) best = &e;
  }
  if (!best) return std::nullopt;
  return best->value;
}

double LookupTables::Lookup(const std::string &variable,
                            const LookupContext &ctx) const {
  if (auto v = Find(variable, ctx)) return *v;
  std::string where = "self" + ctx.self.ToString();
  if (ctx.left) where += " left" + ctx.left->ToString();
  if (ctx.right) where += " right" + ctx.right->ToString();
  throw LookupError("no lookup entry for " + variable + " at " + where);
}

bool RuleApplies(const TrackRule &rule, const ProsodicTree &node) {
  return node.label == rule.label && node.features.Subsumes(rule.guard);
}

LookupContext ContextOf(const TimedTree &timed, const TimedNode &node) {
  LookupContext ctx;
  ctx.self = node.node->features;
  const ProsodicTree &root = *timed.tree;
  if (const ProsodicTree *l = FilledLeafAt(root, node.node->span.begin - 1))
    ctx.left = l->segment->features;
  if (const ProsodicTree *r = FilledLeafAt(root, node.node->span.end))
    ctx.right = r->segment->features;
  return ctx;
}

std::vector<Breakpoint> EvaluateRule(const TrackRule &rule,
                                     const TimedNode &node,
                                     const LookupContext &ctx,
                                     const LookupTables &tables) {
  auto lookup = [&](const std::string &v) { return tables.Lookup(v, ctx); };
  std::vector<Breakpoint> out;
  for (size_t i = 0; i < rule.anchors.size(); ++i) {
    const Anchor &a = rule.anchors[i];
    double us = static_cast<double>(node.start.count()) +
                a.percent / 100.0 * static_cast<double>(node.duration().count());
    if (!a.offset_variable.empty())
      us += a.offset_sign * lookup(a.offset_variable) * 1000.0;
    Breakpoint b;
    b.time = Micros(std::llround(us));
    b.kind = rule.values[i].kind;
    if (b.kind != ValueKind::kUnconstrained)
      b.value = rule.values[i].expr.Evaluate(lookup);
    if (!out.empty() && b.time <= out.back().time)
      throw TrackRuleError("anchor times of '" + rule.ToString() + "' on " +
                           Describe(*node.node) +
                           " are not strictly increasing (" +
                           FormatMs(out.back().time) + " ms then " +
                           FormatMs(b.time) + " ms)");
    out.push_back(b);
  }
  return out;
}

void TrackSet::Set(const std::string &parameter, Micros time, double value) {
  tracks_[parameter][time] = value;
}

std::optional<double> TrackSet::ValueAt(const std::string &parameter,
                                        Micros t) const {
  auto it = tracks_.find(parameter);
  if (it == tracks_.end()) return std::nullopt;
  return Interpolate(it->second, t);
}

TrackSet ComposeTracks(const TimedTree &timed,
                       const std::vector<TrackRule> &rules,
                       const LookupTables &tables) {
  return Composer(timed, rules, tables).Run();
}

std::string TracksCsv(const TrackSet &tracks) {
  std::ostringstream out;
  out << "time_ms";
  std::set<Micros> times;
  for (const auto &[param, points] : tracks.tracks()) {
    out << "," << param;
    for (const auto &[t, v] : points) times.insert(t);
  }
  out << "\n";
  for (Micros t : times) {
    out << FormatMs(t);
    for (const auto &[param, points] : tracks.tracks()) {
      out << ",";
      if (auto v = Interpolate(points, t)) out << FormatValue(*v);
    }
    out << "\n";
  }
  return out.str();
}

nlohmann::ordered_json TracksJson(const TrackSet &tracks) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto &[param, points] : tracks.tracks()) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto &[t, v] : points)
      arr.push_back({{"time_ms", t.count() / 1000.0}, {"value", v}});
    j[param] = arr;
  }
  return j;
}

}  // namespace prosodic
