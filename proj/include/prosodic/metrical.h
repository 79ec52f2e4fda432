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
// Syllable weight and quantity-sensitive stress.
//
// Weight is the number of Mora nodes under a syllable. Stress falls on the
// heaviest of the last three syllables, rightmost on a tie, after the last
// mora of the word is made extrametrical.

#ifndef PROSODIC_METRICAL_H_
#define PROSODIC_METRICAL_H_

#include <stdexcept>
#include <string>
#include <vector>

#include "prosodic/grammar.h"
#include "prosodic/tree.h"

namespace prosodic {

enum class Weight { kLight, kHeavy, kSuperheavy };

// "L", "H" or "S".
char WeightLetter(Weight w);

class MetricalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct WeightedSyllable {
  const ProsodicTree *node = nullptr;
  int moras = 0;
  int extrametrical_moras = 0;
  // The syllable ends in two consonants and the last is outside the
  // weight computation.
  bool extrametrical_final_consonant = false;

  int EffectiveMoras() const { return moras - extrametrical_moras; }
  Weight UnderlyingWeight() const;
  Weight EffectiveWeight() const;
};

// Number of Mora nodes in `syllable`. Throws MetricalError when there are
// none or more than three.
int CountMoras(const ProsodicTree &syllable, const Roles &roles);

// One entry per syllable of `word`, in order.
std::vector<WeightedSyllable> WeighSyllables(const ProsodicTree &word,
                                             const Roles &roles);

// Marks the last mora of the final syllable extrametrical when that
// syllable has at least two, and flags a final consonant cluster.
// Idempotent.
std::vector<WeightedSyllable> ApplyExtrametricality(
    std::vector<WeightedSyllable> syllables, const Roles &roles);

struct StressResult {
  size_t stressed = 0;
  std::vector<WeightedSyllable> syllables;

  // Underlying weights with an apostrophe before the stressed one, e.g.
  // "HL'S".
  std::string Pattern() const;
};

// Rightmost syllable of maximal effective weight among the last three.
// Throws MetricalError on an empty list.
StressResult AssignStress(const std::vector<WeightedSyllable> &syllables);

// WeighSyllables, ApplyExtrametricality and AssignStress in turn.
StressResult AnalyzeStress(const ProsodicTree &word, const Roles &roles);

// Dotted transcription with the stress mark, e.g. "ib.raa.'hiim".
std::string RenderStress(const ProsodicTree &word, const Roles &roles,
                         const StressResult &stress);

}  // namespace prosodic

#endif  // PROSODIC_METRICAL_H_
