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

// The command-line pipeline, callable without a process boundary.

#ifndef PROSODIC_CLI_H_
#define PROSODIC_CLI_H_

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "prosodic/grammar.h"

namespace prosodic {

enum class ExitCode { kOk = 0, kFailure = 1, kUsage = 2 };

struct RunConfig {
  std::string command;  // compile, parse, stress, time, tracks, eval
  std::string pack = "universal";
  std::vector<std::string> inputs;  // words, or corpus paths for eval
  std::string format;               // json, csv, bracketed; "" = default
  std::string out;                  // "" = the output stream
  ParameterSet overrides;
  std::vector<std::filesystem::path> roots;  // empty = DefaultPackRoots()
};

// Parses "K=V" pairs into `cfg.overrides`. Throws std::invalid_argument.
void OverrideParams(RunConfig *cfg, const std::vector<std::string> &pairs);

// Results go to `out` (or cfg.out), diagnostics to `err`.
ExitCode Run(const RunConfig &cfg, std::ostream &out, std::ostream &err);

}  // namespace prosodic

#endif  // PROSODIC_CLI_H_
