// Copyright 2026 The cpe Authors
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

#include "cpe/cli.hpp"

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "cpe/algo.hpp"
#include "cpe/bench.hpp"
#include "cpe/error.hpp"
#include "cpe/hardness.hpp"
#include "cpe/oracles.hpp"
#include "cpe/problem_json.hpp"
#include "json.hpp"

namespace cpe {

namespace {

using nlohmann::json;

// CPE_LOG: 0/quiet, 1/info (default), 2/debug.
int LogLevel() {
  const char* env = std::getenv("CPE_LOG");
  if (env == nullptr) return 1;
  const std::string v(env);
  if (v == "0" || v == "quiet" || v == "off") return 0;
  if (v == "2" || v == "debug") return 2;
  return 1;
}

struct Options {
  std::string problem_path;
  std::string output_path;
  std::string format = "json";
  std::string mu_text;
  std::string nu_text;
  std::string strategy = "rcpe";
  std::string generator = "knapsack";
  std::string summary_path;
  double delta = 0.05;
  double q = 0.1;
  double noise_sd = 0.1;
  double r_constant = 0.1;
  double tol = 1e-3;
  int max_iterations = 100'000;
  std::int64_t max_rounds = 10'000'000;
  std::size_t runs = 30;
  std::size_t d = 10;
  std::size_t m = 3;
  std::size_t jobs = 1;
  std::size_t enumerate_limit = 100'000;
  std::uint64_t seed = 0;
  bool no_lower_bound = false;
  bool trace = false;
};

void ValidateConfidence(const Options& o) {
  if (!(o.delta > 0.0 && o.delta <= o.q && o.q <= 0.1)) {
    std::ostringstream msg;
    msg << "confidence parameters must satisfy 0 < delta <= q <= 0.1 (got delta="
        << o.delta << ", q=" << o.q << ")";
    Fail(ErrorKind::kValidation, msg.str());
  }
}

void ValidateFormat(const Options& o, bool csv_allowed) {
  if (o.format == "json") return;
  if (o.format == "csv" && csv_allowed) return;
  Fail(ErrorKind::kValidation,
       "unsupported --format '" + o.format + "' for this subcommand");
}

// Writes to `out`, or atomically to `path` via a sibling temporary file.
void Emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    out.flush();
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) Fail(ErrorKind::kValidation, "cannot write " + tmp.string());
    f << text;
    f.close();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      Fail(ErrorKind::kValidation, "failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    Fail(ErrorKind::kValidation, "cannot replace " + path);
  }
}

Vector RequireVector(const std::string& text, const char* flag,
                     std::size_t dim) {
  if (text.empty()) Fail(ErrorKind::kValidation, std::string(flag) + " is required");
  Vector v = ParseVectorArgument(text);
  if (v.size() != dim) {
    Fail(ErrorKind::kValidation,
         std::string(flag) + " has " + std::to_string(v.size()) +
             " entries but the problem has dimension " + std::to_string(dim));
  }
  return v;
}

OracleProblem RequireProblem(const Options& o) {
  if (o.problem_path.empty()) Fail(ErrorKind::kValidation, "--problem is required");
  return LoadProblemFile(o.problem_path);
}

GenTSConfig MakeConfig(const Options& o) {
  GenTSConfig config;
  config.delta = o.delta;
  config.q = o.q;
  config.strategy = ParseStrategy(o.strategy);
  config.max_rounds = o.max_rounds;
  config.seed = o.seed;
  config.record_trace = o.trace;
  config.Validate();
  return config;
}

json ActionJson(const Action& a) { return a.coords(); }

void DoRun(const Options& o, std::ostream& out, std::ostream& err, int log) {
  ValidateConfidence(o);
  ValidateFormat(o, false);
  const GenTSConfig config = MakeConfig(o);
  std::optional<GeneratedInstance> gen;
  if (!o.problem_path.empty()) {
    OracleProblem problem = RequireProblem(o);
    BanditInstance instance;
    instance.means = RequireVector(o.mu_text, "--mu", problem.dim());
    instance.noise_sd = o.noise_sd;
    instance.r_constant = o.r_constant;
    instance.Validate();
    gen.emplace(GeneratedInstance{std::move(instance), std::move(problem)});
  } else {
    ExperimentSpec spec;
    spec.generator = ParseGenerator(o.generator);
    Require(spec.generator != Generator::kCustom,
            "--gen custom needs --problem and --mu");
    spec.d = o.d;
    spec.m = o.m;
    spec.master_seed = o.seed;
    gen.emplace(MakeInstance(spec, 0));
  }
  if (log >= 1) {
    err << "cpe run: " << gen->problem.type_name() << " problem, d="
        << gen->problem.dim() << ", strategy=" << o.strategy << "\n";
  }
  const RunResult result = Run(gen->instance, gen->problem, config);
  const Action truth = Solve(gen->problem, gen->instance.means);

  json doc;
  doc["problem"] = ProblemToJson(gen->problem);
  doc["means"] = gen->instance.means;
  doc["strategy"] = ToString(config.strategy);
  doc["delta"] = config.delta;
  doc["q"] = config.q;
  doc["seed"] = config.seed;
  doc["output_action"] = ActionJson(result.output_action);
  doc["best_action"] = ActionJson(truth);
  doc["correct"] = ApproxEqual(result.output_action, truth);
  doc["rounds_used"] = result.rounds_used;
  doc["stopped_naturally"] = result.stopped_naturally;
  doc["per_arm_pulls"] = result.per_arm_pulls;
  if (config.record_trace) {
    json trace = json::array();
    for (const auto& r : result.trace) {
      json row = {{"t", r.t}, {"samples", r.samples}, {"max_gap", r.max_gap}};
      row["pulled_arm"] =
          r.pulled_arm ? json(*r.pulled_arm) : json(nullptr);
      trace.push_back(row);
    }
    doc["trace"] = trace;
  }
  if (log >= 1) {
    err << "cpe run: " << result.rounds_used << " pulls, "
        << (result.stopped_naturally ? "stopped" : "hit max-rounds") << "\n";
  }
  Emit(o.output_path, doc.dump(2) + "\n", out);
}

void DoCompare(const Options& o, std::ostream& out, std::ostream& err,
               int log) {
  ValidateConfidence(o);
  ValidateFormat(o, true);
  ExperimentSpec spec;
  spec.generator = ParseGenerator(o.generator);
  spec.d = o.d;
  spec.m = o.m;
  spec.runs = o.runs;
  spec.master_seed = o.seed;
  spec.jobs = o.jobs;
  spec.config = MakeConfig(o);
  Require(o.runs >= 1, "--runs must be at least 1");
  if (spec.generator == Generator::kCustom) {
    OracleProblem problem = RequireProblem(o);
    BanditInstance instance;
    instance.means = RequireVector(o.mu_text, "--mu", problem.dim());
    instance.noise_sd = o.noise_sd;
    instance.r_constant = o.r_constant;
    instance.Validate();
    spec.d = problem.dim();
    spec.custom.emplace(GeneratedInstance{std::move(instance), std::move(problem)});
  }
  if (log >= 1) {
    err << "cpe compare: " << ToString(spec.generator) << " d=" << spec.d
        << " runs=" << spec.runs << " seed=" << spec.master_seed << "\n";
  }
  if (log >= 2) {
    spec.on_run = [&err](const RunRecord& naive, const RunRecord& rcpe) {
      err << "cpe compare: run " << naive.run_index << " naive "
          << naive.rounds << " rcpe " << rcpe.rounds << " pulls\n";
    };
  }
  const ComparisonResult result = CompareStrategies(spec);
  const json summary = SummaryJson(spec, result);
  if (log >= 1) {
    err << "cpe compare: mean naive/rcpe ratio " << result.ratio_mean << " over "
        << result.ratios.size() << " runs\n";
  }
  if (o.format == "csv") {
    std::ostringstream csv;
    WriteCsv(result, csv);
    if (!o.summary_path.empty()) {
      Emit(o.summary_path, summary.dump(2) + "\n", out);
    } else if (log >= 1) {
      err << summary.dump(2) << "\n";
    }
    Emit(o.output_path, csv.str(), out);
    return;
  }
  json doc = summary;
  json records = json::array();
  for (const auto& r : result.records) {
    records.push_back({{"run_index", r.run_index},
                       {"strategy", ToString(r.strategy)},
                       {"rounds", r.rounds},
                       {"correct", r.correct},
                       {"stopped_naturally", r.stopped_naturally},
                       {"seed", r.seed}});
  }
  doc["records"] = records;
  if (!o.summary_path.empty()) Emit(o.summary_path, summary.dump(2) + "\n", out);
  Emit(o.output_path, doc.dump(2) + "\n", out);
}

void DoHardness(const Options& o, std::ostream& out, std::ostream& err,
                int log) {
  ValidateFormat(o, false);
  Require(o.tol > 0.0, "--tol must be positive");
  Require(o.max_iterations >= 1, "--max-iterations must be positive");
  const OracleProblem problem = RequireProblem(o);
  const Vector mu = RequireVector(o.mu_text, "--mu", problem.dim());
  const ActionSet actions = EnumerateActionSet(problem, o.enumerate_limit);
  if (log >= 1) {
    err << "cpe hardness: " << actions.size() << " actions in dimension "
        << actions.dim() << "\n";
  }
  HardnessReport report = ComputeHardnessMeasures(actions, mu);
  if (!o.no_lower_bound) {
    LowerBoundOptions lb;
    lb.tol = o.tol;
    lb.max_iterations = o.max_iterations;
    report.lower_bound = ComputeLowerBound(actions, mu, lb);
    if (log >= 2) {
      err << "cpe hardness: lower bound converged in "
          << report.lower_bound->iterations << " iterations\n";
    }
  }
  Emit(o.output_path, ToJson(report).dump(2) + "\n", out);
}

void DoOracle(const Options& o, std::ostream& out, std::ostream&, int) {
  ValidateFormat(o, false);
  const OracleProblem problem = RequireProblem(o);
  const Vector nu = RequireVector(o.nu_text, "--nu", problem.dim());
  const Action a = Solve(problem, nu);
  json doc;
  doc["type"] = problem.type_name();
  doc["action"] = a.ToString();
  doc["coords"] = a.coords();
  doc["value"] = a.Dot(nu);
  Emit(o.output_path, doc.dump(2) + "\n", out);
}

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kBudget:
    case ErrorKind::kConvergence:
      return kExitBudget;
    default:
      return kExitInvalid;
  }
}

}  // namespace

Vector ParseVectorArgument(const std::string& text) {
  std::string body = text;
  std::error_code ec;
  if (!text.empty() && std::filesystem::is_regular_file(text, ec)) {
    std::ifstream f(text);
    std::stringstream ss;
    ss << f.rdbuf();
    body = ss.str();
  }
  const auto first = body.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && body[first] == '[') {
    try {
      return json::parse(body).get<Vector>();
    } catch (const json::exception& e) {
      Fail(ErrorKind::kValidation, text + ": " + e.what());
    }
  }
  for (char& c : body) {
    if (c == ',' || c == '\n' || c == '\r' || c == '\t') c = ' ';
  }
  std::istringstream in(body);
  Vector out;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || !std::isfinite(v)) {
      Fail(ErrorKind::kValidation, "not a finite real number: '" + token + "'");
    }
    out.push_back(v);
  }
  Require(!out.empty(), "empty vector argument");
  return out;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Combinatorial pure exploration with real-valued actions", "cpe"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--problem", o.problem_path, "Problem JSON file");
    sub->add_option("--output,-o", o.output_path,
                    "Write results here instead of stdout");
    sub->add_option("--format", o.format, "json or csv");
  };
  auto add_algorithm = [&](CLI::App* sub) {
    sub->add_option("--delta", o.delta, "Confidence parameter");
    sub->add_option("--q", o.q, "Perturbation quantile parameter");
    sub->add_option("--max-rounds", o.max_rounds, "Cap on total pulls");
    sub->add_option("--seed", o.seed, "Master seed");
    sub->add_option("--mu", o.mu_text, "True means (list or file)");
    sub->add_option("--noise-sd", o.noise_sd, "Observation noise sd");
    sub->add_option("--r", o.r_constant, "Sub-Gaussian constant R");
    sub->add_option("--gen", o.generator, "knapsack, production or custom");
    sub->add_option("--d", o.d, "Number of arms for generated instances");
    sub->add_option("--m", o.m, "Materials for the production generator");
  };

  CLI::App* run = app.add_subcommand("run", "Run the algorithm once");
  add_common(run);
  add_algorithm(run);
  run->add_option("--strategy", o.strategy, "naive or rcpe");
  run->add_flag("--trace", o.trace, "Include a per-round trace");

  CLI::App* compare =
      app.add_subcommand("compare", "Compare naive and R-CPE arm selection");
  add_common(compare);
  add_algorithm(compare);
  compare->add_option("--runs", o.runs, "Number of instances");
  compare->add_option("--jobs", o.jobs, "Worker threads");
  compare->add_option("--summary", o.summary_path,
                      "Also write the JSON summary to this file");

  CLI::App* hardness =
      app.add_subcommand("hardness", "Hardness measures of an instance");
  add_common(hardness);
  hardness->add_option("--mu", o.mu_text, "True means (list or file)");
  hardness->add_option("--tol", o.tol, "Relative gap for the lower bound");
  hardness->add_option("--max-iterations", o.max_iterations,
                       "Iteration cap for the lower bound");
  hardness->add_option("--limit", o.enumerate_limit,
                       "Maximum number of enumerated actions");
  hardness->add_flag("--no-lower-bound", o.no_lower_bound,
                     "Skip the allocation lower bound");

  CLI::App* oracle = app.add_subcommand("oracle", "Solve one oracle query");
  add_common(oracle);
  oracle->add_option("--nu", o.nu_text, "Query direction (list or file)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  const int log = LogLevel();
  try {
    if (run->parsed()) DoRun(o, out, err, log);
    if (compare->parsed()) DoCompare(o, out, err, log);
    if (hardness->parsed()) DoHardness(o, out, err, log);
    if (oracle->parsed()) DoOracle(o, out, err, log);
  } catch (const Error& e) {
    err << "cpe: " << ToString(e.kind()) << " error: " << e.what() << "\n";
    return ExitCodeFor(e.kind());
  } catch (const json::exception& e) {
    err << "cpe: json error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "cpe: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitOk;
}

int RunCli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return RunCli(args, std::cout, std::cerr);
}

}  // namespace cpe
