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

#include <cmath>
#include <map>
#include <regex>
#include <set>

#include "ldpcsdp/cli.h"

namespace ldpcsdp::cli {
namespace {

using nlohmann::json;

void CheckKeys(const json& obj, const std::set<std::string>& allowed,
               const std::string& prefix) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      throw ConfigError(prefix + key, "unknown key");
    }
  }
}

double GetNumber(const json& v, const std::string& field) {
  if (!v.is_number()) throw ConfigError(field, "expected a number");
  return v.get<double>();
}

int GetInt(const json& v, const std::string& field) {
  if (!v.is_number_integer()) throw ConfigError(field, "expected an integer");
  return v.get<int>();
}

std::string GetString(const json& v, const std::string& field) {
  if (!v.is_string()) throw ConfigError(field, "expected a string");
  return v.get<std::string>();
}

double GetEpsilon(const json& v, const std::string& field) {
  const double eps = GetNumber(v, field);
  if (!(eps > 0.0 && eps < 1.0)) {
    throw ConfigError(field, "erasure probability must lie in (0, 1)");
  }
  return eps;
}

Command ParseCommand(const std::string& name) {
  static const std::map<std::string, Command> kNames = {
      {"optimize", Command::kOptimize},
      {"verify", Command::kVerify},
      {"threshold", Command::kThreshold},
      {"baseline", Command::kBaseline},
      {"sweep", Command::kSweep}};
  const auto it = kNames.find(name);
  if (it == kNames.end()) {
    throw ConfigError("command", "unknown command \"" + name + "\"");
  }
  return it->second;
}

void Require(bool present, const std::string& field, Command command) {
  if (!present) {
    throw ConfigError(field, "required by " + ToString(command));
  }
}

}  // namespace

std::string ToString(Command command) {
  switch (command) {
    case Command::kOptimize:
      return "optimize";
    case Command::kVerify:
      return "verify";
    case Command::kThreshold:
      return "threshold";
    case Command::kBaseline:
      return "baseline";
    case Command::kSweep:
      return "sweep";
  }
  return "unknown";
}

DegreeDistribution ParseDistribution(const json& value, DistributionKind kind,
                                     const std::string& field) {
  std::map<int, double> coefficients;
  if (value.is_string()) {
    static const std::regex kShorthand(R"(\s*x\s*(?:\^\s*(\d+))?\s*)");
    std::smatch m;
    const std::string text = value.get<std::string>();
    if (!std::regex_match(text, m, kShorthand)) {
      throw ConfigError(field, "expected \"x^n\" or a degree map, got \"" +
                                   text + "\"");
    }
    const int n = m[1].matched ? std::stoi(m[1].str()) : 1;
    if (n < 1) throw ConfigError(field, "x^n needs n >= 1");
    coefficients[n + 1] = 1.0;
  } else if (value.is_object()) {
    static const std::regex kDegree(R"(\d+)");
    for (const auto& [key, v] : value.items()) {
      if (!std::regex_match(key, kDegree)) {
        throw ConfigError(field + "." + key, "degree keys must be integers");
      }
      coefficients[std::stoi(key)] = GetNumber(v, field + "." + key);
    }
  } else {
    throw ConfigError(field, "expected \"x^n\" or a degree map");
  }
  const ValidationReport report = Validate(coefficients);
  if (!report.ok()) throw ConfigError(field, report.Summary());
  return DegreeDistribution(coefficients, kind);
}

RunConfig ParseConfig(const json& doc, std::optional<Command> command) {
  if (!doc.is_object()) throw ConfigError("<root>", "expected an object");
  CheckKeys(doc,
            {"command", "rho", "lambda", "epsilon", "dv_max", "solver",
             "threshold_tol", "grid", "instances", "n_values", "output",
             "format", "workers", "dump_sdp"},
            "");
  RunConfig cfg;
  if (doc.contains("command")) {
    const Command named = ParseCommand(GetString(doc["command"], "command"));
    if (command && *command != named) {
      throw ConfigError("command", "config says " + ToString(named) +
                                       " but " + ToString(*command) +
                                       " was requested");
    }
    cfg.command = named;
  } else if (command) {
    cfg.command = *command;
  } else {
    throw ConfigError("command", "missing");
  }

  if (doc.contains("rho")) {
    cfg.rho = ParseDistribution(doc["rho"], DistributionKind::kCheck, "rho");
  }
  if (doc.contains("lambda")) {
    cfg.lambda =
        ParseDistribution(doc["lambda"], DistributionKind::kVariable, "lambda");
  }
  if (doc.contains("epsilon")) {
    cfg.epsilon = GetEpsilon(doc["epsilon"], "epsilon");
  }
  if (doc.contains("dv_max")) {
    cfg.dv_max = GetInt(doc["dv_max"], "dv_max");
    if (cfg.dv_max < 2) throw ConfigError("dv_max", "must be >= 2");
  }
  if (doc.contains("solver")) {
    const json& s = doc["solver"];
    if (!s.is_object()) throw ConfigError("solver", "expected an object");
    CheckKeys(s, {"tol_feas", "tol_gap", "max_iter"}, "solver.");
    if (s.contains("tol_feas")) {
      cfg.solver.tol_feas = GetNumber(s["tol_feas"], "solver.tol_feas");
    }
    if (s.contains("tol_gap")) {
      cfg.solver.tol_gap = GetNumber(s["tol_gap"], "solver.tol_gap");
    }
    if (s.contains("max_iter")) {
      cfg.solver.max_iter = GetInt(s["max_iter"], "solver.max_iter");
    }
    if (!(cfg.solver.tol_feas > 0.0) || !(cfg.solver.tol_gap > 0.0) ||
        cfg.solver.max_iter < 1) {
      throw ConfigError("solver", "tolerances and max_iter must be positive");
    }
  }
  if (doc.contains("threshold_tol")) {
    cfg.threshold_tol = GetNumber(doc["threshold_tol"], "threshold_tol");
    if (!(cfg.threshold_tol > 0.0)) {
      throw ConfigError("threshold_tol", "must be positive");
    }
  }
  if (doc.contains("grid")) {
    const json& g = doc["grid"];
    if (!g.is_object()) throw ConfigError("grid", "expected an object");
    CheckKeys(g, {"n", "scheme"}, "grid.");
    if (g.contains("n")) {
      cfg.grid_n = GetInt(g["n"], "grid.n");
      if (cfg.grid_n < 1) throw ConfigError("grid.n", "must be >= 1");
    }
    if (g.contains("scheme")) {
      const std::string scheme = GetString(g["scheme"], "grid.scheme");
      if (scheme == "uniform") {
        cfg.grid_scheme = GridScheme::kUniform;
      } else if (scheme == "clustered") {
        cfg.grid_scheme = GridScheme::kClustered;
      } else {
        throw ConfigError("grid.scheme", "expected uniform or clustered");
      }
    }
  }
  if (doc.contains("instances")) {
    const json& list = doc["instances"];
    if (!list.is_array()) throw ConfigError("instances", "expected a list");
    for (size_t i = 0; i < list.size(); ++i) {
      const std::string field = "instances[" + std::to_string(i) + "]";
      const json& inst = list[i];
      if (!inst.is_object()) throw ConfigError(field, "expected an object");
      CheckKeys(inst, {"rho", "epsilon"}, field + ".");
      if (!inst.contains("rho") || !inst.contains("epsilon")) {
        throw ConfigError(field, "needs rho and epsilon");
      }
      cfg.instances.push_back(Instance{
          ParseDistribution(inst["rho"], DistributionKind::kCheck,
                            field + ".rho"),
          GetEpsilon(inst["epsilon"], field + ".epsilon")});
    }
    if (cfg.instances.empty()) throw ConfigError("instances", "empty list");
  }
  if (doc.contains("n_values")) {
    const json& list = doc["n_values"];
    if (!list.is_array()) throw ConfigError("n_values", "expected a list");
    for (size_t i = 0; i < list.size(); ++i) {
      const std::string field = "n_values[" + std::to_string(i) + "]";
      const int n = GetInt(list[i], field);
      if (n < 1) throw ConfigError(field, "must be >= 1");
      cfg.n_values.push_back(n);
    }
    if (cfg.n_values.empty()) throw ConfigError("n_values", "empty list");
  }
  if (doc.contains("output")) cfg.output = GetString(doc["output"], "output");
  if (doc.contains("format")) {
    const std::string f = GetString(doc["format"], "format");
    if (f == "json") {
      cfg.format = OutputFormat::kJson;
    } else if (f == "csv") {
      cfg.format = OutputFormat::kCsv;
    } else {
      throw ConfigError("format", "expected json or csv");
    }
  }
  if (doc.contains("workers")) {
    cfg.workers = GetInt(doc["workers"], "workers");
    if (cfg.workers < 1) throw ConfigError("workers", "must be >= 1");
  }
  if (doc.contains("dump_sdp")) {
    cfg.dump_sdp = GetString(doc["dump_sdp"], "dump_sdp");
  }

  const Command c = cfg.command;
  switch (c) {
    case Command::kOptimize:
    case Command::kBaseline:
      Require(cfg.rho.has_value(), "rho", c);
      Require(cfg.epsilon.has_value(), "epsilon", c);
      break;
    case Command::kVerify:
      Require(cfg.lambda.has_value(), "lambda", c);
      Require(cfg.rho.has_value(), "rho", c);
      Require(cfg.epsilon.has_value(), "epsilon", c);
      break;
    case Command::kThreshold:
      Require(cfg.lambda.has_value(), "lambda", c);
      Require(cfg.rho.has_value(), "rho", c);
      break;
    case Command::kSweep:
      if (cfg.instances.empty() == cfg.n_values.empty()) {
        throw ConfigError("instances",
                          "sweep needs exactly one of instances or n_values");
      }
      if (!cfg.n_values.empty()) {
        Require(cfg.rho.has_value(), "rho", c);
        Require(cfg.epsilon.has_value(), "epsilon", c);
      }
      break;
  }
  if (cfg.format == OutputFormat::kCsv &&
      (c == Command::kVerify || c == Command::kThreshold)) {
    throw ConfigError("format", ToString(c) + " writes json only");
  }
  return cfg;
}

}  // namespace ldpcsdp::cli
