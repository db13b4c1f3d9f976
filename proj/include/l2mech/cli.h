//
// Copyright 2026 The l2mech Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Command-line front end: calibrate, compare, sample, verify and bench.

#ifndef L2MECH_CLI_H_
#define L2MECH_CLI_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "l2mech/privacy_params.h"

namespace l2mech {

enum class Command { kCalibrate, kCompare, kSample, kVerify, kBench };
enum class OutputFormat { kJson, kCsv };

struct CliConfig {
  Command command = Command::kCalibrate;
  double epsilon = 0;
  double delta = 0;
  int dim = 0;
  Mechanism mechanism = Mechanism::kL2;
  int n_r = 1000;
  int n_R = 1000;
  double tol = 0.001;
  int64_t samples = 0;
  uint64_t seed = 0;
  OutputFormat output_format = OutputFormat::kJson;
  std::optional<std::string> output_path;
  // sample: required. verify: optional; calibrated when absent.
  std::optional<double> sigma;
  // bench only.
  int trials = 100;
  // Set by --help; Run prints it and does nothing else.
  std::optional<std::string> help_text;
};

// args excludes the program name. env_seed is the value of L2MECH_SEED, used
// when --seed is absent. On failure returns InvalidArgument whose message
// lists every violation, separated by "; ".
absl::StatusOr<CliConfig> ParseArgs(const std::vector<std::string>& args,
                                    std::optional<std::string> env_seed);

// Exit status: 0 success, 1 numerical failure, 2 I/O or validation error.
int Run(const CliConfig& config, std::ostream& out, std::ostream& err);

// Parses, runs and reports usage errors as a single "error: ..." line.
int Main(const std::vector<std::string>& args,
         std::optional<std::string> env_seed, std::ostream& out,
         std::ostream& err);

}  // namespace l2mech

#endif  // L2MECH_CLI_H_
