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

#include "prosodic/features.h"

#include <algorithm>

#include "text_util.h"

namespace prosodic {

FeatureInventory::FeatureInventory(std::vector<std::string> names) {
  for (auto &n : names) Add(n);
}

void FeatureInventory::Add(const std::string &name) {
  if (name.empty()) throw std::invalid_argument("empty feature name");
  if (Contains(name))
    throw std::invalid_argument("duplicate feature name: " + name);
  names_.push_back(name);
}

bool FeatureInventory::Contains(std::string_view name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

FeatureBundle FeatureBundle::Parse(std::string_view text) {
  text = internal::Trim(text);
  if (!text.empty() && text.front() == '[') {
    if (text.back() != ']')
      throw std::invalid_argument("unterminated feature bundle");
    text = text.substr(1, text.size() - 2);
  }
  FeatureBundle out;
  if (internal::Trim(text).empty()) return out;
  for (const auto &item : internal::Split(text, ',')) {
    if (item.size() < 2 || (item[0] != '+' && item[0] != '-'))
      throw std::invalid_argument("malformed feature value '" + item + "'");
    out.Set(std::string(internal::Trim(item.substr(1))), item[0] == '+');
  }
  return out;
}

void FeatureBundle::Set(const std::string &name, bool value) {
  if (name.empty()) throw std::invalid_argument("empty feature name");
  auto it = values_.find(name);
  if (it != values_.end() && it->second != value)
    throw std::invalid_argument("contradictory values for feature " + name);
  values_[name] = value;
}

std::optional<bool> FeatureBundle::Get(std::string_view name) const {
  auto it = values_.find(name);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

bool FeatureBundle::Subsumes(const FeatureBundle &other) const {
  for (const auto &[name, value] : other.values_) {
    auto mine = Get(name);
    if (!mine || *mine != value) return false;
  }
  return true;
}

bool FeatureBundle::ValidOver(const FeatureInventory &inventory) const {
  for (const auto &kv : values_)
    if (!inventory.Contains(kv.first)) return false;
  return true;
}

std::string FeatureBundle::ToString() const {
  std::string out = "[";
  bool first = true;
  for (const auto &[name, value] : values_) {
    if (!first) out += ",";
    first = false;
    out += value ? '+' : '-';
    out += name;
  }
  return out + "]";
}

std::optional<FeatureBundle> Unify(const FeatureBundle &a,
                                   const FeatureBundle &b) {
  FeatureBundle out = a;
  for (const auto &[name, value] : b.assignments()) {
    auto existing = a.Get(name);
    if (existing && *existing != value) return std::nullopt;
    out.Set(name, value);
  }
  return out;
}

bool Matches(const Segment &segment, const FeatureBundle &spec) {
  return Unify(segment.features, spec).has_value() &&
         segment.features.Subsumes(spec);
}

Sonority SonorityOf(const FeatureBundle &f) {
  auto plus = [&](std::string_view n) { return f.Get(n).value_or(false); };
  if (!plus("son")) return Sonority::kObstruent;
  if (plus("nas")) return Sonority::kNasal;
  if (plus("glide")) return Sonority::kGlide;
  if (plus("cons")) return Sonority::kLiquid;
  return Sonority::kVowel;
}

std::string_view SonorityName(Sonority s) {
  switch (s) {
    case Sonority::kObstruent: return "obstruent";
    case Sonority::kNasal: return "nasal";
    case Sonority::kLiquid: return "liquid";
    case Sonority::kGlide: return "glide";
    case Sonority::kVowel: return "vowel";
  }
  return "obstruent";
}

std::string SegmentClass(const FeatureBundle &features) {
  Sonority s = SonorityOf(features);
  std::string name(SonorityName(s));
  if (s == Sonority::kObstruent)
    name += features.Get("voi").value_or(false) ? "-voiced" : "-voiceless";
  return name;
}

SonorityClass ParseSonorityClass(std::string_view text) {
  if (text == "vowels-only") return SonorityClass::kVowelsOnly;
  if (text == "sonorants") return SonorityClass::kSonorants;
  if (text == "any") return SonorityClass::kAny;
  throw std::invalid_argument("unknown sonority class '" + std::string(text) +
                              "'");
}

FeatureBundle ExpandMacro(std::string_view name, SonorityClass setting) {
  if (name != "SYLLABIC" && name != "MORAIC")
    throw MacroError("undefined macro " + std::string(name));
  FeatureBundle out;
  switch (setting) {
    case SonorityClass::kVowelsOnly: out.Set("cons", false); break;
    case SonorityClass::kSonorants: out.Set("son", true); break;
    case SonorityClass::kAny: break;
  }
  return out;
}

}  // namespace prosodic
