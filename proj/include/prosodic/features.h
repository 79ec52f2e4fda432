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

// Binary feature bundles and segment inventories.

#ifndef PROSODIC_FEATURES_H_
#define PROSODIC_FEATURES_H_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace prosodic {

// Ordered set of feature names declared by a grammar.
class FeatureInventory {
 public:
  FeatureInventory() = default;
  explicit FeatureInventory(std::vector<std::string> names);

  // Throws std::invalid_argument on an empty or duplicate name.
  void Add(const std::string &name);
  bool Contains(std::string_view name) const;
  const std::vector<std::string> &names() const { return names_; }
  bool empty() const { return names_.empty(); }

  bool operator==(const FeatureInventory &) const = default;

 private:
  std::vector<std::string> names_;
};

// Partial assignment of features to {+, -}. A feature absent from the map
// is underspecified.
class FeatureBundle {
 public:
  FeatureBundle() = default;

  // Parses "+cons,-son" or "[+cons, -son]". Throws std::invalid_argument
  // on malformed text or if a feature is given both values.
  static FeatureBundle Parse(std::string_view text);

  // Throws std::invalid_argument if `name` already holds the other value.
  void Set(const std::string &name, bool value);
  std::optional<bool> Get(std::string_view name) const;
  bool Has(std::string_view name) const { return Get(name).has_value(); }

  const std::map<std::string, bool, std::less<>> &assignments() const {
    return values_;
  }
  bool empty() const { return values_.empty(); }
  size_t size() const { return values_.size(); }

  // True if every assignment in `other` also holds here.
  bool Subsumes(const FeatureBundle &other) const;

  // Every key is a member of `inventory`.
  bool ValidOver(const FeatureInventory &inventory) const;

  // "[+cons,-son]"; features in lexicographic order, "[]" when empty.
  std::string ToString() const;

  auto operator<=>(const FeatureBundle &) const = default;
  bool operator==(const FeatureBundle &) const = default;

 private:
  std::map<std::string, bool, std::less<>> values_;
};

// Union of both bundles, or nullopt when some feature is + in one and - in
// the other.
std::optional<FeatureBundle> Unify(const FeatureBundle &a,
                                   const FeatureBundle &b);

struct Segment {
  std::string symbol;  // "" is the empty segment
  FeatureBundle features;

  bool IsEmpty() const { return symbol.empty(); }
  bool operator==(const Segment &) const = default;
};

// Segment satisfies every value demanded by `spec`.
bool Matches(const Segment &segment, const FeatureBundle &spec);

// Sonority classes with the engine-wide ordering used by coda checks:
// obstruent < nasal < liquid < glide < vowel.
enum class Sonority { kObstruent = 0, kNasal, kLiquid, kGlide, kVowel };

// Classifies from "son", "nas", "glide" and "cons"; a missing feature reads
// as minus.
Sonority SonorityOf(const FeatureBundle &features);
std::string_view SonorityName(Sonority s);

// Fine class name used by duration and overlap tables, e.g.
// "obstruent-voiceless", "nasal", "vowel".
std::string SegmentClass(const FeatureBundle &features);

enum class SonorityClass { kVowelsOnly, kSonorants, kAny };

// Throws std::invalid_argument for anything other than "vowels-only",
// "sonorants" or "any".
SonorityClass ParseSonorityClass(std::string_view text);

class MacroError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// SYLLABIC and MORAIC expand to [-cons], [+son] or [] depending on the
// sonority class. Throws MacroError for any other name.
FeatureBundle ExpandMacro(std::string_view name, SonorityClass setting);

struct Macro {
  std::string name;
  FeatureBundle expansion;
};

}  // namespace prosodic

#endif  // PROSODIC_FEATURES_H_
