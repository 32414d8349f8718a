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

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "ldpcsdp/cli.h"

namespace ldpcsdp::cli {
namespace {

using nlohmann::json;

struct Flags {
  std::string config;
  std::string rho;
  std::string lambda;
  double eps = 0.0;
  int dv_max = 0;
  std::string out;
  std::string format;
  std::vector<int> n_values;
  int grid_n = 0;
  std::string scheme;
  int workers = 0;
  std::string dump_sdp;
  double tol = 0.0;
};

// A distribution flag is either JSON text or the x^n shorthand.
json DistributionFlag(const std::string& text, const std::string& field) {
  if (!text.empty() && text.front() == '{') {
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigError(field, std::string("invalid JSON: ") + e.what());
    }
  }
  return text;
}

json LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", path + ": " + e.what());
  }
}

void WriteOutput(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw ConfigError("output", "cannot write " + path);
}

}  // namespace

int Main(int argc, const char* const* argv) {
  CLI::App app{"Rate-optimal LDPC degree distributions for the BEC"};
  app.require_subcommand(1);
  Flags flags;
  std::map<CLI::App*, Command> commands;
  const std::vector<std::pair<Command, std::string>> kCommands = {
      {Command::kOptimize, "Optimize lambda for a check distribution"},
      {Command::kVerify, "Check a design by density evolution"},
      {Command::kThreshold, "BP threshold of an ensemble"},
      {Command::kBaseline, "Discretized LP design"},
      {Command::kSweep, "Batch of optimizations or a baseline grid sweep"}};
  for (const auto& [command, help] : kCommands) {
    CLI::App* sub = app.add_subcommand(ToString(command), help);
    commands[sub] = command;
    sub->add_option("-c,--config", flags.config, "JSON config file");
    sub->add_option("--rho", flags.rho, "check distribution, x^n or JSON");
    sub->add_option("--lambda", flags.lambda,
                    "variable distribution, x^n or JSON");
    sub->add_option("--eps", flags.eps, "erasure probability");
    sub->add_option("--dv-max", flags.dv_max, "largest variable degree");
    sub->add_option("-o,--out", flags.out, "output file (default stdout)");
    sub->add_option("--format", flags.format, "json or csv");
    sub->add_option("--n", flags.n_values, "baseline grid sizes (sweep)");
    sub->add_option("--grid-n", flags.grid_n, "baseline grid size");
    sub->add_option("--scheme", flags.scheme, "uniform or clustered");
    sub->add_option("--workers", flags.workers, "concurrent sweep rows");
    sub->add_option("--dump-sdp", flags.dump_sdp, "write the SDP as text");
    sub->add_option("--tol", flags.tol, "threshold bisection width");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  CLI::App* sub = app.get_subcommands().front();
  const Command command = commands.at(sub);
  const auto set = [sub](const std::string& name) {
    return sub->count(name) > 0;
  };
  try {
    json doc = set("--config") ? LoadConfig(flags.config) : json::object();
    if (!doc.is_object()) throw ConfigError("config", "expected an object");
    if (set("--rho")) doc["rho"] = DistributionFlag(flags.rho, "rho");
    if (set("--lambda")) {
      doc["lambda"] = DistributionFlag(flags.lambda, "lambda");
    }
    if (set("--eps")) doc["epsilon"] = flags.eps;
    if (set("--dv-max")) doc["dv_max"] = flags.dv_max;
    if (set("--out")) doc["output"] = flags.out;
    if (set("--format")) doc["format"] = flags.format;
    if (set("--n")) doc["n_values"] = flags.n_values;
    if (set("--grid-n")) doc["grid"]["n"] = flags.grid_n;
    if (set("--scheme")) doc["grid"]["scheme"] = flags.scheme;
    if (set("--workers")) doc["workers"] = flags.workers;
    if (set("--dump-sdp")) doc["dump_sdp"] = flags.dump_sdp;
    if (set("--tol")) doc["threshold_tol"] = flags.tol;

    const RunConfig cfg = ParseConfig(doc, command);
    const CommandResult result = Run(cfg);
    if (!result.output.empty()) WriteOutput(cfg.output, result.output);
    if (!result.message.empty()) {
      std::cerr << result.message;
      if (result.message.back() != '\n') std::cerr << '\n';
    }
    return result.exit_code;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }
}

}  // namespace ldpcsdp::cli
