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

#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "ldpcsdp/cli.h"
#include "ldpcsdp/desim.h"
#include "ldpcsdp/sosrep.h"

namespace ldpcsdp::cli {
namespace {

using Json = nlohmann::ordered_json;

double Round4(double v) { return std::round(v * 1e4) / 1e4; }

std::string Num(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Json DistributionJson(const DegreeDistribution& dd, bool rounded = false) {
  Json out = Json::object();
  for (const auto& [degree, c] : dd.coefficients()) {
    if (c != 0.0) out[std::to_string(degree)] = rounded ? Round4(c) : c;
  }
  return out;
}

Json SolverJson(const SdpSolution& s) {
  return Json{{"status", ToString(s.status)},
              {"iterations", s.iterations},
              {"objective", s.objective_value},
              {"primal_residual", s.primal_residual},
              {"dual_residual", s.dual_residual},
              {"gap", s.dual_gap_estimate}};
}

Json DesignJson(const DesignResult& d) {
  return Json{{"lambda", DistributionJson(d.lambda)},
              {"rho", DistributionJson(d.rho)},
              {"epsilon", d.channel.epsilon()},
              {"rate", d.rate},
              {"capacity", d.capacity},
              {"delta", d.delta},
              {"threshold", d.threshold},
              {"certificate_ok", d.certificate_ok},
              {"grid_feasible_only", d.grid_feasible_only}};
}

Json VerificationJson(const VerificationReport& v) {
  return Json{{"passed", v.passed()},
              {"min_margin", v.min_margin},
              {"argmin_margin", v.argmin_margin},
              {"threshold", v.threshold},
              {"rate", v.rate},
              {"rate_error", v.rate_error},
              {"margin_ok", v.margin_ok},
              {"threshold_ok", v.threshold_ok},
              {"rate_ok", v.rate_ok}};
}

Json CertificateJson(const FeasibilityCertificate& c) {
  Json gram = Json::array();
  for (int i = 0; i < c.gram.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < c.gram.cols(); ++j) row.push_back(c.gram(i, j));
    gram.push_back(std::move(row));
  }
  return Json{{"basis", "trigonometric"},
              {"order", c.gram.rows() - 1},
              {"accepted", c.accepted()},
              {"min_eigenvalue", c.min_eigenvalue},
              {"reconstruction_residual", c.reconstruction_residual},
              {"gram", std::move(gram)}};
}

Json DisplayJson(const DesignResult& d) {
  return Json{{"lambda", DistributionJson(d.lambda, true)},
              {"epsilon", Round4(d.channel.epsilon())},
              {"threshold", Round4(d.threshold)},
              {"rate", Round4(d.rate)},
              {"capacity", Round4(d.capacity)},
              {"delta", Round4(d.delta)}};
}

Json InputJson(const RunConfig& cfg) {
  Json in = Json::object();
  in["command"] = ToString(cfg.command);
  if (cfg.lambda) in["lambda"] = DistributionJson(*cfg.lambda);
  if (cfg.rho) in["rho"] = DistributionJson(*cfg.rho);
  if (cfg.epsilon) in["epsilon"] = *cfg.epsilon;
  if (cfg.command == Command::kOptimize ||
      cfg.command == Command::kBaseline || cfg.command == Command::kSweep) {
    in["dv_max"] = cfg.dv_max;
  }
  return in;
}

std::string Dump(const Json& j) { return j.dump(2) + "\n"; }

std::string CsvQuote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

// One table row: lambda_2..lambda_dv_max, eps, eps_th, rate,
// capacity, delta, rho, status.
struct TableRow {
  std::optional<DesignResult> design;
  double epsilon = 0.0;
  std::string rho_json;
  std::string status;
  std::string message;
};

std::string TableHeader(int dv_max) {
  std::string h;
  for (int d = 2; d <= dv_max; ++d) h += "lambda_" + std::to_string(d) + ",";
  return h + "eps,eps_th,rate,capacity,delta,rho,status\n";
}

std::string TableLine(const TableRow& row, int dv_max) {
  std::string line;
  for (int d = 2; d <= dv_max; ++d) {
    line += (row.design ? Num(row.design->lambda.coefficient(d)) : "") + ",";
  }
  line += Num(row.epsilon) + ",";
  if (row.design) {
    line += Num(row.design->threshold) + "," + Num(row.design->rate) + "," +
            Num(row.design->capacity) + "," + Num(row.design->delta) + ",";
  } else {
    line += ",,,,";
  }
  return line + CsvQuote(row.rho_json) + "," + row.status + "\n";
}

TableRow OptimizeRow(const DegreeDistribution& rho, double epsilon,
                     const RunConfig& cfg) {
  TableRow row;
  row.epsilon = epsilon;
  row.rho_json = DistributionJson(rho).dump();
  try {
    SdpDesign sdp = OptimizeRate(rho, ErasureChannel(epsilon), cfg.dv_max,
                                 cfg.solver);
    const VerificationReport v = VerifyDesign(sdp.design);
    sdp.design.threshold = v.threshold;
    row.design = sdp.design;
    row.status = v.passed() ? "ok" : "verification_failed";
  } catch (const std::exception& e) {
    row.status = "solver_failure";
    row.message = e.what();
  }
  return row;
}

CommandResult Fail(int code, Json out, const std::string& status,
                   const std::string& message) {
  out["status"] = status;
  out["error"] = message;
  return CommandResult{code, Dump(out), message};
}

CommandResult RunOptimize(const RunConfig& cfg) {
  const ErasureChannel channel(*cfg.epsilon);
  Json out;
  out["input"] = InputJson(cfg);
  std::optional<SdpDesign> sdp;
  try {
    const RateProgram program = BuildRateSdp(*cfg.rho, channel, cfg.dv_max);
    if (!cfg.dump_sdp.empty()) {
      std::ofstream dump(cfg.dump_sdp);
      program.problem.WriteText(dump);
      if (!dump) {
        return CommandResult{kExitConfig, "",
                             "dump_sdp: cannot write " + cfg.dump_sdp};
      }
    }
    sdp = SolveRateProgram(program, cfg.solver);
  } catch (const std::exception& e) {
    return Fail(kExitSolver, out, "solver_failure", e.what());
  }
  const VerificationReport v = VerifyDesign(sdp->design);
  sdp->design.threshold = v.threshold;

  if (cfg.format == OutputFormat::kCsv) {
    TableRow row{sdp->design, *cfg.epsilon,
                 DistributionJson(*cfg.rho).dump(),
                 v.passed() ? "ok" : "verification_failed", ""};
    return CommandResult{v.passed() ? kExitOk : kExitVerification,
                         TableHeader(cfg.dv_max) + TableLine(row, cfg.dv_max),
                         ""};
  }
  out["status"] = v.passed() ? "verified" : "verification_failed";
  out["solver"] = SolverJson(sdp->solution);
  out["objective"] = sdp->objective;
  out["design"] = DesignJson(sdp->design);
  out["certificate"] = CertificateJson(sdp->certificate);
  out["verification"] = VerificationJson(v);
  out["display"] = DisplayJson(sdp->design);
  if (!v.passed()) {
    return CommandResult{kExitVerification, Dump(out),
                         "design failed density-evolution verification"};
  }
  return CommandResult{kExitOk, Dump(out), ""};
}

CommandResult RunVerify(const RunConfig& cfg) {
  DesignResult design =
      MakeDesignResult(*cfg.lambda, *cfg.rho, ErasureChannel(*cfg.epsilon));
  const VerificationReport v = VerifyDesign(design);
  design.threshold = v.threshold;
  Json out;
  out["input"] = InputJson(cfg);
  out["status"] = v.passed() ? "verified" : "verification_failed";
  out["design"] = DesignJson(design);
  out["verification"] = VerificationJson(v);
  out["display"] = DisplayJson(design);
  if (!v.passed()) {
    std::ostringstream msg;
    msg << "verification failed: min margin " << v.min_margin << " at x = "
        << v.argmin_margin << ", threshold " << v.threshold;
    return CommandResult{kExitVerification, Dump(out), msg.str()};
  }
  return CommandResult{kExitOk, Dump(out), ""};
}

CommandResult RunThreshold(const RunConfig& cfg) {
  const double th = BpThreshold(*cfg.lambda, *cfg.rho, cfg.threshold_tol);
  Json out;
  out["input"] = InputJson(cfg);
  out["tolerance"] = cfg.threshold_tol;
  out["threshold"] = th;
  out["rate"] = CodeRate(*cfg.lambda, *cfg.rho);
  out["display"] = Json{{"threshold", Round4(th)}};
  return CommandResult{kExitOk, Dump(out), ""};
}

CommandResult RunBaseline(const RunConfig& cfg) {
  const ErasureChannel channel(*cfg.epsilon);
  const DiscretizationGrid grid =
      cfg.grid_scheme == GridScheme::kUniform
          ? DiscretizationGrid::Uniform(*cfg.epsilon, cfg.grid_n)
          : DiscretizationGrid::Clustered(*cfg.epsilon, cfg.grid_n);
  Json out;
  out["input"] = InputJson(cfg);
  out["grid"] = Json{{"n", cfg.grid_n}, {"scheme", ToString(cfg.grid_scheme)}};
  std::optional<BaselineDesign> base;
  try {
    base = DiscretizedOptimize(*cfg.rho, channel, cfg.dv_max, grid,
                               cfg.solver);
  } catch (const std::exception& e) {
    return Fail(kExitSolver, out, "solver_failure", e.what());
  }
  // Grid-feasible designs may violate DE between grid points; the report is
  // informational and does not change the exit code.
  const VerificationReport v = VerifyDesign(base->design);
  base->design.threshold = v.threshold;
  if (cfg.format == OutputFormat::kCsv) {
    TableRow row{base->design, *cfg.epsilon,
                 DistributionJson(*cfg.rho).dump(), "grid_feasible", ""};
    return CommandResult{kExitOk,
                         TableHeader(cfg.dv_max) + TableLine(row, cfg.dv_max),
                         ""};
  }
  out["status"] = "grid_feasible";
  out["solver"] = SolverJson(base->solution);
  out["objective"] = base->objective;
  out["design"] = DesignJson(base->design);
  out["max_continuous_violation"] =
      MaxContinuousViolation(base->design.lambda, *cfg.rho, channel);
  out["verification"] = VerificationJson(v);
  out["display"] = DisplayJson(base->design);
  return CommandResult{kExitOk, Dump(out), ""};
}

CommandResult RunInstanceSweep(const RunConfig& cfg) {
  const size_t n = cfg.instances.size();
  std::vector<std::optional<TableRow>> rows(n);
  std::atomic<size_t> next{0};
  const auto work = [&]() {
    for (size_t i = next++; i < n; i = next++) {
      rows[i] = OptimizeRow(cfg.instances[i].rho, cfg.instances[i].epsilon,
                            cfg);
    }
  };
  const int workers = std::min<int>(cfg.workers, static_cast<int>(n));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  bool any_ok = false, any_verification = false;
  std::string message;
  for (size_t i = 0; i < n; ++i) {
    const TableRow& row = *rows[i];
    any_ok |= row.status == "ok";
    any_verification |= row.status == "verification_failed";
    if (row.status != "ok") {
      message += "row " + std::to_string(i) + ": " + row.status +
                 (row.message.empty() ? "" : " (" + row.message + ")") + "\n";
    }
  }
  const int code = any_ok ? kExitOk
                   : any_verification ? kExitVerification
                                      : kExitSolver;

  if (cfg.format == OutputFormat::kJson) {
    Json list = Json::array();
    for (const auto& row : rows) {
      Json j;
      j["rho"] = Json::parse(row->rho_json);
      j["epsilon"] = row->epsilon;
      j["status"] = row->status;
      if (row->design) {
        j["design"] = DesignJson(*row->design);
        j["display"] = DisplayJson(*row->design);
      } else {
        j["error"] = row->message;
      }
      list.push_back(std::move(j));
    }
    return CommandResult{code, Dump(Json{{"rows", std::move(list)}}),
                         message};
  }
  std::string csv = TableHeader(cfg.dv_max);
  for (const auto& row : rows) csv += TableLine(*row, cfg.dv_max);
  return CommandResult{code, csv, message};
}

CommandResult RunGridSweep(const RunConfig& cfg) {
  std::vector<SweepRow> rows;
  try {
    rows = GridSweep(*cfg.rho, ErasureChannel(*cfg.epsilon), cfg.dv_max,
                     cfg.n_values, cfg.solver);
  } catch (const std::exception& e) {
    return CommandResult{kExitSolver, "", e.what()};
  }
  if (cfg.format == OutputFormat::kJson) {
    Json list = Json::array();
    for (const SweepRow& r : rows) {
      list.push_back(Json{{"n", r.n},
                          {"objective", r.objective},
                          {"rate", r.rate},
                          {"max_violation", r.max_violation},
                          {"lambda", DistributionJson(r.lambda)}});
    }
    return CommandResult{kExitOk, Dump(Json{{"rows", std::move(list)}}), ""};
  }
  return CommandResult{kExitOk, SweepCsv(rows), ""};
}

}  // namespace

CommandResult Run(const RunConfig& config) {
  RunConfig cfg = config;
  if (!cfg.format) {
    cfg.format = cfg.command == Command::kSweep ? OutputFormat::kCsv
                                                : OutputFormat::kJson;
  }
  switch (cfg.command) {
    case Command::kOptimize:
      return RunOptimize(cfg);
    case Command::kVerify:
      return RunVerify(cfg);
    case Command::kThreshold:
      return RunThreshold(cfg);
    case Command::kBaseline:
      return RunBaseline(cfg);
    case Command::kSweep:
      if (cfg.instances.empty() && cfg.n_values.empty()) {
        return CommandResult{kExitConfig, "", "instances: empty list"};
      }
      return cfg.instances.empty() ? RunGridSweep(cfg)
                                   : RunInstanceSweep(cfg);
  }
  return CommandResult{kExitConfig, "", "command: unknown"};
}

}  // namespace ldpcsdp::cli
