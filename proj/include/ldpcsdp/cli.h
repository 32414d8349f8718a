// Copyright 2026 The ldpcsdp Authors.
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

// Command-line surface: config parsing, the user commands and their result
// files. Exit codes: 0 ok, 1 config error, 2 solver failure, 3 verification
// failure.

#ifndef LDPCSDP_CLI_H_
#define LDPCSDP_CLI_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "ldpcsdp/baseline_lp.h"
#include "ldpcsdp/ensemble.h"
#include "ldpcsdp/sdpcore.h"

namespace ldpcsdp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitSolver = 2;
inline constexpr int kExitVerification = 3;

enum class Command { kOptimize, kVerify, kThreshold, kBaseline, kSweep };
enum class OutputFormat { kJson, kCsv };

std::string ToString(Command command);

// Raised for malformed configs; the message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct Instance {
  DegreeDistribution rho;
  double epsilon;
};

struct RunConfig {
  Command command = Command::kOptimize;
  std::optional<DegreeDistribution> rho;
  std::optional<DegreeDistribution> lambda;
  std::optional<double> epsilon;
  int dv_max = 7;
  SolverOptions solver;
  double threshold_tol = 1e-5;
  int grid_n = 1000;
  GridScheme grid_scheme = GridScheme::kUniform;
  // sweep: either a list of instances or a list of baseline grid sizes.
  std::vector<Instance> instances;
  std::vector<int> n_values;
  std::string output;  // empty: stdout
  // Unset: csv for sweep, json otherwise. verify and threshold are json only.
  std::optional<OutputFormat> format;
  int workers = 1;
  std::string dump_sdp;  // optimize: write the SDP as text here
};

// {"2": 0.4, "3": 0.6} or "x^n". The shorthand x^n is the edge-perspective
// polynomial, i.e. the single degree n + 1.
DegreeDistribution ParseDistribution(const nlohmann::json& value,
                                     DistributionKind kind,
                                     const std::string& field);

// Strict: unknown keys, wrong types and missing required fields throw
// ConfigError. `command` is used when the document has no "command" key and
// must match it otherwise.
RunConfig ParseConfig(const nlohmann::json& doc,
                      std::optional<Command> command = std::nullopt);

struct CommandResult {
  int exit_code = kExitOk;
  std::string output;   // result file contents
  std::string message;  // diagnostics for stderr
};

CommandResult Run(const RunConfig& config);

// Full driver: subcommand, --config and flag overrides, output writing.
int Main(int argc, const char* const* argv);

}  // namespace ldpcsdp::cli

#endif  // LDPCSDP_CLI_H_
