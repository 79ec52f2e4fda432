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

#include "prosodic/cli.h"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "prosodic/metrical.h"
#include "prosodic/pack.h"
#include "prosodic/parser.h"
#include "prosodic/temporal.h"
#include "prosodic/tracks.h"

namespace prosodic {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::set<std::string> &Formats(const std::string &command) {
  static const std::map<std::string, std::set<std::string>> kFormats = {
      {"compile", {"bracketed"}},
      {"parse", {"bracketed", "json"}},
      {"stress", {"bracketed", "json"}},
      {"time", {"json", "csv"}},
      {"tracks", {"csv", "json"}},
      {"eval", {"bracketed", "json"}},
  };
  auto it = kFormats.find(command);
  if (it == kFormats.end())
    throw UsageError("unknown command '" + command +
                     "'; expected compile, parse, stress, time, tracks or eval");
  return it->second;
}

std::string DefaultFormat(const std::string &command) {
  if (command == "time") return "json";
  if (command == "tracks") return "csv";
  return "bracketed";
}

// One JSON value per word; a list when there are several.
std::string JoinJson(const std::vector<ordered_json> &items) {
  if (items.size() == 1) return items[0].dump(2) + "\n";
  ordered_json arr = ordered_json::array();
  for (const auto &i : items) arr.push_back(i);
  return arr.dump(2) + "\n";
}

std::string RunWords(const RunConfig &cfg, const Pack &pack,
                     const std::string &format) {
  const Grammar &g = pack.grammar;
  if (cfg.inputs.empty()) throw UsageError(cfg.command + " needs at least one word");
  std::string text;
  std::vector<ordered_json> json;
  for (const auto &word : cfg.inputs) {
    ProsodicTree tree = ParseWord(word, g);
    if (cfg.command == "parse") {
      if (format == "json")
        json.push_back(ToJson(tree));
      else
        text += ToBracketed(tree) + "\n";
    } else if (cfg.command == "stress") {
      StressResult s = AnalyzeStress(tree, g.roles);
      std::string rendered = RenderStress(tree, g.roles, s);
      if (format == "json") {
        ordered_json j;
        j["word"] = word;
        j["transcription"] = rendered;
        j["weights"] = s.Pattern();
        j["stressed"] = s.stressed;
        json.push_back(j);
      } else {
        text += rendered + "\n";
      }
    } else {
      TimedTree timed = Solve(tree, pack.durations, pack.overlap, g.roles);
      if (cfg.command == "time") {
        if (format == "csv")
          text += LeafCsv(timed);
        else
          json.push_back(ToJson(timed));
      } else {
        TrackSet tracks = ComposeTracks(timed, g.track_rules, pack.lookup);
        if (format == "json")
          json.push_back(TracksJson(tracks));
        else
          text += TracksCsv(tracks);
      }
    }
  }
  return json.empty() ? text : JoinJson(json);
}

ExitCode RunEval(const RunConfig &cfg, const Pack &pack,
                 const std::string &format, std::string *text) {
  ValidationReport report;
  if (cfg.inputs.empty()) {
    report = ValidatePack(pack);
  } else {
    std::vector<CorpusItem> items;
    for (const auto &input : cfg.inputs) {
      fs::path p = input;
      if (!fs::exists(p) && fs::exists(pack.dir / p)) p = pack.dir / p;
      auto more = LoadCorpus(p);
      items.insert(items.end(), more.begin(), more.end());
    }
    report = EvaluateCorpus(pack, items);
  }
  if (format == "json") {
    ordered_json j;
    j["pack"] = pack.name;
    j["passed"] = report.passed;
    j["failed"] = report.failed;
    j["items"] = ordered_json::array();
    for (const auto &r : report.items)
      j["items"].push_back({{"word", r.item.word},
                            {"kind", r.item.kind},
                            {"expected", r.item.expected},
                            {"actual", r.actual},
                            {"pass", r.pass}});
    *text = j.dump(2) + "\n";
  } else {
    *text = report.ToString();
  }
  return report.ok() ? ExitCode::kOk : ExitCode::kFailure;
}

}  // namespace

void OverrideParams(RunConfig *cfg, const std::vector<std::string> &pairs) {
  for (const auto &p : pairs) {
    auto [k, v] = ParameterSet::ParsePair(p);
    cfg->overrides.Set(k, v);
  }
}

ExitCode Run(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  ExitCode code = ExitCode::kOk;
  std::string text;
  try {
    const auto &formats = Formats(cfg.command);
    std::string format = cfg.format.empty() ? DefaultFormat(cfg.command) : cfg.format;
    if (!formats.count(format))
      throw UsageError("format '" + format + "' is not available for " +
                       cfg.command);
    Pack pack = LoadPack(cfg.pack, cfg.overrides,
                         cfg.roots.empty() ? DefaultPackRoots() : cfg.roots);
    if (cfg.command == "compile") {
      text = pack.grammar.ToString();
    } else if (cfg.command == "eval") {
      code = RunEval(cfg, pack, format, &text);
    } else {
      text = RunWords(cfg, pack, format);
    }
  } catch (const UsageError &e) {
    err << "usage error: " << e.what() << "\n";
    return ExitCode::kUsage;
  } catch (const CompileError &e) {
    err << "compile error: " << e.what() << "\n";
    return ExitCode::kUsage;
  } catch (const PackError &e) {
    err << "pack error: " << e.what() << "\n";
    return ExitCode::kUsage;
  } catch (const TableFormatError &e) {
    err << "table error: " << e.what() << "\n";
    return ExitCode::kUsage;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return ExitCode::kFailure;
  }
  if (cfg.out.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << cfg.out << "\n";
      return ExitCode::kUsage;
    }
    f << text;
  }
  return code;
}

}  // namespace prosodic
