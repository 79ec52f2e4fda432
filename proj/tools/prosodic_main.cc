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

// prosodic: parse, stress, time and synthesize-track words with a pack.

#include <iostream>

#include "CLI11.hpp"
#include "prosodic/cli.h"

int main(int argc, char **argv) {
  CLI::App app{"Prosodic analysis and phonetic interpretation"};
  prosodic::RunConfig cfg;
  std::vector<std::string> sets;
  app.add_option("command", cfg.command,
                 "compile | parse | stress | time | tracks | eval")
      ->required();
  app.add_option("inputs", cfg.inputs, "words, or corpus files for eval");
  app.add_option("--pack", cfg.pack, "language pack")->default_val("universal");
  app.add_option("--set", sets, "parameter override K=V (repeatable)")
      ->allow_extra_args(false);
  app.add_option("--format", cfg.format, "json | csv | bracketed");
  app.add_option("--out", cfg.out, "write results to PATH");
  try {
    app.parse(argc, argv);
    prosodic::OverrideParams(&cfg, sets);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const std::invalid_argument &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
  return static_cast<int>(prosodic::Run(cfg, std::cout, std::cerr));
}
