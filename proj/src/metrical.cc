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
#include "prosodic/metrical.h"

#include <algorithm>

namespace prosodic {
namespace {

Weight FromMoras(int moras) {
  if (moras <= 1) return Weight::kLight;
  return moras == 2 ? Weight::kHeavy : Weight::kSuperheavy;
}

int CountRole(const ProsodicTree &t, const std::string &label) {
  int n = t.label == label ? 1 : 0;
  for (const auto &c : t.children) n += CountRole(c, label);
  return n;
}

bool IsFilledConsonant(const ProsodicTree *leaf) {
  return !leaf->IsEmptyLeaf() &&
         leaf->segment->features.Get("cons").value_or(false);
}

}  // namespace

char WeightLetter(Weight w) {
  switch (w) {
    case Weight::kLight:
      return 'L';
    case Weight::kHeavy:
      return 'H';
    case Weight::kSuperheavy:
      return 'S';
  }
  return '?';
}

Weight WeightedSyllable::UnderlyingWeight() const { return FromMoras(moras); }
Weight WeightedSyllable::EffectiveWeight() const {
  return FromMoras(EffectiveMoras());
}

int CountMoras(const ProsodicTree &syllable, const Roles &roles) {
  int n = CountRole(syllable, roles.mora);
  if (n == 0)
    throw MetricalError("syllable " + ToBracketed(syllable) + " has no " +
                        roles.mora + " nodes");
  if (n > 3)
    throw MetricalError("syllable " + ToBracketed(syllable) + " has " +
                        std::to_string(n) + " moras");
  return n;
}

std::vector<WeightedSyllable> WeighSyllables(const ProsodicTree &word,
                                             const Roles &roles) {
  WordView view = Analyze(word, roles);
  if (view.syllables.empty())
    throw MetricalError("no " + roles.syllable + " nodes in " +
                        ToBracketed(word));
  std::vector<WeightedSyllable> out;
  for (const auto &s : view.syllables) {
    WeightedSyllable w;
    w.node = s.node;
    w.moras = CountMoras(*s.node, roles);
    out.push_back(w);
  }
  return out;
}

std::vector<WeightedSyllable> ApplyExtrametricality(
    std::vector<WeightedSyllable> syllables, const Roles &roles) {
  (void)roles;
  if (syllables.empty()) return syllables;
  WeightedSyllable &last = syllables.back();
  // A monomoraic final syllable keeps its only mora.
  last.extrametrical_moras = last.moras >= 2 ? 1 : 0;
  if (!last.node) return syllables;  // weights only, no tree to inspect
  std::vector<const ProsodicTree *> filled;
  for (const auto *l : last.node->Leaves())
    if (!l->IsEmptyLeaf()) filled.push_back(l);
  last.extrametrical_final_consonant =
      filled.size() >= 2 && IsFilledConsonant(filled[filled.size() - 1]) &&
      IsFilledConsonant(filled[filled.size() - 2]);
  return syllables;
}

std::string StressResult::Pattern() const {
  std::string out;
  for (size_t i = 0; i < syllables.size(); ++i) {
    if (i == stressed) out += '\'';
    out += WeightLetter(syllables[i].UnderlyingWeight());
  }
  return out;
}

StressResult AssignStress(const std::vector<WeightedSyllable> &syllables) {
  if (syllables.empty()) throw MetricalError("no syllables to stress");
  StressResult r;
  r.syllables = syllables;
  size_t begin = syllables.size() > 3 ? syllables.size() - 3 : 0;
  r.stressed = begin;
  for (size_t i = begin; i < syllables.size(); ++i)
    if (syllables[i].EffectiveMoras() >= syllables[r.stressed].EffectiveMoras())
      r.stressed = i;
  return r;
}

StressResult AnalyzeStress(const ProsodicTree &word, const Roles &roles) {
  return AssignStress(ApplyExtrametricality(WeighSyllables(word, roles), roles));
}

std::string RenderStress(const ProsodicTree &word, const Roles &roles,
                         const StressResult &stress) {
  return Transcription(word, roles, stress.stressed);
}

}  // namespace prosodic
