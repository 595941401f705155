// Copyright 2026 The finrel Authors.
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

#ifndef FINREL_CLI_H_
#define FINREL_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "finrel/evalkit.h"

namespace finrel::cli {

enum class Subcommand { kExtract, kEvaluate, kPrepare, kInspect };

// Seed used by `prepare` when --seed is not given.
inline constexpr std::uint64_t kDefaultSeed = 20210415;

struct RunConfig {
  Subcommand subcommand = Subcommand::kExtract;
  std::string corpus_path;
  std::string embeddings_path;
  std::string lexicon_path;  // optional; built-in lexicon when empty
  std::string gold_path;
  std::string predictions_path;
  std::string output_path;       // extract: predictions, evaluate: report
  std::string per_example_path;  // evaluate, optional
  std::string out_dir;           // prepare
  std::string document_id;       // inspect
  EvalConfig eval;
  double test_fraction = 0.2;
  bool balanced = false;
  std::uint64_t seed = kDefaultSeed;
  unsigned workers = 1;  // 0: one per hardware thread
  std::string log_level = "info";

  // Throws ArgumentError when a path the subcommand needs is missing.
  void validate() const;
};

// Executes one subcommand. Human-readable output (inspect) goes to out,
// logs and diagnostics to err. Returns 0 on success, 1 on a data or I/O
// error, 2 on an invalid configuration.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Full command line handling: flags, optional --config file, the
// FINREL_LOG_LEVEL environment variable, then run(). args excludes the
// program name.
int run_command_line(const std::vector<std::string>& args, std::ostream& out,
                     std::ostream& err);

}  // namespace finrel::cli

#endif  // FINREL_CLI_H_
