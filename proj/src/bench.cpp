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

#include "cpe/bench.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "cpe/algo.hpp"
#include "cpe/error.hpp"

namespace cpe {

namespace {

constexpr std::uint64_t kInstanceTag = 0x696e7374616e6365ULL;

constexpr std::int64_t kKnapsackCapacity = 50;
constexpr std::int64_t kMaxItemWeight = 50;
constexpr double kValueNoiseSd = 0.1;
constexpr double kObservationSd = 0.1;
constexpr double kSubGaussianR = 0.1;
constexpr double kMaterialLimit = 30.0;
constexpr int kMaxRequirement = 4;

// Uniform integer on {lo, ..., hi}.
std::int64_t UniformInt(Xoshiro256& rng, std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<double>(hi - lo + 1);
  return lo + static_cast<std::int64_t>(std::floor(rng.Uniform() * span));
}

void MeanAndStd(const Vector& xs, double& mean, double& sd) {
  mean = 0.0;
  sd = 0.0;
  if (xs.empty()) return;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

StrategyStats Summarize(const std::vector<RunRecord>& records,
                        Strategy strategy) {
  StrategyStats stats;
  Vector rounds;
  std::size_t total = 0, correct = 0;
  for (const auto& r : records) {
    if (r.strategy != strategy) continue;
    ++total;
    correct += r.correct ? 1 : 0;
    if (!r.stopped_naturally) ++stats.capped;
    rounds.push_back(static_cast<double>(r.rounds));
  }
  MeanAndStd(rounds, stats.mean_rounds, stats.std_rounds);
  if (total > 0) {
    stats.correct_fraction =
        static_cast<double>(correct) / static_cast<double>(total);
  }
  return stats;
}

nlohmann::json StatsJson(const StrategyStats& s) {
  return {{"mean_rounds", s.mean_rounds},
          {"std_rounds", s.std_rounds},
          {"correct_fraction", s.correct_fraction},
          {"capped_runs", s.capped}};
}

}  // namespace

GeneratedInstance GenerateKnapsack(std::size_t d, Xoshiro256& rng) {
  Require(d >= 1, "knapsack generator needs d >= 1");
  KnapsackProblem problem;
  BanditInstance instance;
  for (std::size_t s = 0; s < d; ++s) {
    const std::int64_t w = UniformInt(rng, 1, kMaxItemWeight);
    problem.weights.push_back(w);
    // Negative values are kept; the oracle never selects them.
    instance.means.push_back(static_cast<double>(w) *
                             (1.0 + kValueNoiseSd * rng.Normal()));
  }
  problem.capacity = kKnapsackCapacity;
  instance.noise_sd = kObservationSd;
  instance.r_constant = kSubGaussianR;
  return {std::move(instance), OracleProblem(std::move(problem))};
}

GeneratedInstance GenerateProduction(std::size_t d, std::size_t m,
                                     Xoshiro256& rng) {
  Require(d >= 1 && m >= 1, "production generator needs d, m >= 1");
  ProductionProblem problem;
  problem.requirements.assign(m, Vector(d, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t s = 0; s < d; ++s) {
      problem.requirements[i][s] =
          static_cast<double>(UniformInt(rng, 1, kMaxRequirement));
    }
  }
  problem.limits.assign(m, kMaterialLimit);
  BanditInstance instance;
  for (std::size_t s = 0; s < d; ++s) {
    double column = 0.0;
    for (std::size_t i = 0; i < m; ++i) column += problem.requirements[i][s];
    instance.means.push_back(column + rng.Normal());
  }
  instance.noise_sd = kObservationSd;
  instance.r_constant = kSubGaussianR;
  return {std::move(instance), OracleProblem(std::move(problem))};
}

const char* ToString(Generator generator) {
  switch (generator) {
    case Generator::kKnapsack: return "knapsack";
    case Generator::kProduction: return "production";
    case Generator::kCustom: return "custom";
  }
  return "unknown";
}

Generator ParseGenerator(const std::string& name) {
  if (name == "knapsack") return Generator::kKnapsack;
  if (name == "production") return Generator::kProduction;
  if (name == "custom") return Generator::kCustom;
  Fail(ErrorKind::kValidation, "unknown generator '" + name +
                                   "' (expected knapsack, production or custom)");
}

GeneratedInstance MakeInstance(const ExperimentSpec& spec, std::size_t run) {
  Xoshiro256 rng(DeriveSeed(spec.master_seed, run, kInstanceTag));
  switch (spec.generator) {
    case Generator::kKnapsack: return GenerateKnapsack(spec.d, rng);
    case Generator::kProduction: return GenerateProduction(spec.d, spec.m, rng);
    case Generator::kCustom:
      Require(spec.custom.has_value(), "custom experiment needs an instance");
      return *spec.custom;
  }
  Fail(ErrorKind::kLogic, "unhandled generator");
}

ComparisonResult CompareStrategies(const ExperimentSpec& spec) {
  Require(spec.runs >= 1, "experiment needs at least one run");
  Require(spec.d >= 1, "experiment needs d >= 1");
  spec.config.Validate();

  constexpr Strategy kStrategies[] = {Strategy::kNaive, Strategy::kRCpe};
  std::vector<RunRecord> records(2 * spec.runs);
  std::mutex progress_mutex;

  auto do_run = [&](std::size_t r) {
    const GeneratedInstance gen = MakeInstance(spec, r);
    const Action truth = Solve(gen.problem, gen.instance.means);
    for (std::size_t i = 0; i < 2; ++i) {
      GenTSConfig config = spec.config;
      config.strategy = kStrategies[i];
      config.seed = DeriveSeed(spec.master_seed, r, i + 1);
      const RunResult result = Run(gen.instance, gen.problem, config);
      RunRecord& rec = records[2 * r + i];
      rec.run_index = r;
      rec.strategy = kStrategies[i];
      rec.rounds = result.rounds_used;
      rec.correct = ApproxEqual(result.output_action, truth);
      rec.stopped_naturally = result.stopped_naturally;
      rec.seed = config.seed;
    }
    if (spec.on_run) {
      std::lock_guard<std::mutex> lock(progress_mutex);
      spec.on_run(records[2 * r], records[2 * r + 1]);
    }
  };

  const std::size_t jobs = std::clamp<std::size_t>(spec.jobs, 1, spec.runs);
  if (jobs == 1) {
    for (std::size_t r = 0; r < spec.runs; ++r) do_run(r);
  } else {
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> workers;
    for (std::size_t j = 0; j < jobs; ++j) {
      workers.emplace_back([&, j] {
        try {
          for (std::size_t r = j; r < spec.runs; r += jobs) do_run(r);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (auto& w : workers) w.join();
    if (failure) std::rethrow_exception(failure);
  }

  ComparisonResult result;
  result.records = std::move(records);
  for (std::size_t r = 0; r < spec.runs; ++r) {
    const RunRecord& naive = result.records[2 * r];
    const RunRecord& rcpe = result.records[2 * r + 1];
    if (naive.stopped_naturally && rcpe.stopped_naturally) {
      result.ratios.push_back(static_cast<double>(naive.rounds) /
                              static_cast<double>(rcpe.rounds));
    } else {
      ++result.excluded_runs;
    }
  }
  MeanAndStd(result.ratios, result.ratio_mean, result.ratio_std);
  result.naive = Summarize(result.records, Strategy::kNaive);
  result.rcpe = Summarize(result.records, Strategy::kRCpe);
  return result;
}

void WriteCsv(const ComparisonResult& result, std::ostream& out) {
  out << "run_index,strategy,rounds,correct,seed\n";
  for (const auto& r : result.records) {
    out << r.run_index << ',' << ToString(r.strategy) << ',' << r.rounds << ','
        << (r.correct ? 1 : 0) << ',' << r.seed << '\n';
  }
}

nlohmann::json SummaryJson(const ExperimentSpec& spec,
                           const ComparisonResult& result) {
  nlohmann::json doc;
  doc["generator"] = ToString(spec.generator);
  doc["d"] = spec.d;
  if (spec.generator == Generator::kProduction) doc["m"] = spec.m;
  doc["runs"] = spec.runs;
  doc["master_seed"] = spec.master_seed;
  doc["delta"] = spec.config.delta;
  doc["q"] = spec.config.q;
  doc["max_rounds"] = spec.config.max_rounds;
  doc["naive"] = StatsJson(result.naive);
  doc["rcpe"] = StatsJson(result.rcpe);
  nlohmann::json ratio;
  ratio["mean"] = result.ratio_mean;
  ratio["std"] = result.ratio_std;
  ratio["count"] = result.ratios.size();
  if (!result.ratios.empty()) {
    ratio["min"] = *std::min_element(result.ratios.begin(), result.ratios.end());
    ratio["max"] = *std::max_element(result.ratios.begin(), result.ratios.end());
  }
  ratio["values"] = result.ratios;
  doc["ratio"] = ratio;
  doc["excluded_runs"] = result.excluded_runs;
  return doc;
}

}  // namespace cpe
