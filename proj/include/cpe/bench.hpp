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

// Experiment generators and the seeded naive-vs-R-CPE comparison harness.
//
// Seeding: run r of an experiment with master seed S generates its instance
// from DeriveSeed(S, r, kInstance) and runs strategy i (0 = naive, 1 = rcpe)
// with algorithm seed DeriveSeed(S, r, i + 1). Both strategies therefore see
// the same instance but independent observation and perturbation streams.

#ifndef CPE_BENCH_HPP_
#define CPE_BENCH_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cpe/model.hpp"
#include "cpe/oracles.hpp"
#include "json.hpp"

namespace cpe {

struct GeneratedInstance {
  BanditInstance instance;
  OracleProblem problem;
};

// Knapsack benchmark: weights uniform on {1, ..., 50}, values
// w_s (1 + x) with x ~ N(0, 0.1^2), capacity 50, noise sd 0.1, R = 0.1.
GeneratedInstance GenerateKnapsack(std::size_t d, Xoshiro256& rng);

// Production planning benchmark: requirements uniform on {1, 2, 3, 4},
// limits 30 per material, means sum_i M_is + N(0, 1), noise sd 0.1, R = 0.1.
GeneratedInstance GenerateProduction(std::size_t d, std::size_t m,
                                     Xoshiro256& rng);

enum class Generator { kKnapsack, kProduction, kCustom };

const char* ToString(Generator generator);
Generator ParseGenerator(const std::string& name);

struct RunRecord {
  std::size_t run_index = 0;
  Strategy strategy = Strategy::kNaive;
  std::int64_t rounds = 0;
  bool correct = false;
  bool stopped_naturally = false;
  std::uint64_t seed = 0;
};

struct ExperimentSpec {
  Generator generator = Generator::kKnapsack;
  std::size_t d = 10;
  std::size_t m = 3;
  std::size_t runs = 30;
  GenTSConfig config;
  std::uint64_t master_seed = 0;
  // Required for Generator::kCustom; every run reuses it.
  std::optional<GeneratedInstance> custom;
  // Worker threads. Results do not depend on this value.
  std::size_t jobs = 1;
  // Called once per finished run with its naive and rcpe records, in
  // completion order. Calls are serialized.
  std::function<void(const RunRecord& naive, const RunRecord& rcpe)> on_run;
};

GeneratedInstance MakeInstance(const ExperimentSpec& spec, std::size_t run);

struct StrategyStats {
  double mean_rounds = 0.0;
  double std_rounds = 0.0;
  double correct_fraction = 0.0;
  std::size_t capped = 0;
};

struct ComparisonResult {
  std::vector<RunRecord> records;  // ordered by (run_index, strategy)
  // naive_rounds / rcpe_rounds for runs where both stopped naturally.
  Vector ratios;
  double ratio_mean = 0.0;
  double ratio_std = 0.0;
  std::size_t excluded_runs = 0;
  StrategyStats naive;
  StrategyStats rcpe;
};

ComparisonResult CompareStrategies(const ExperimentSpec& spec);

void WriteCsv(const ComparisonResult& result, std::ostream& out);
nlohmann::json SummaryJson(const ExperimentSpec& spec,
                           const ComparisonResult& result);

}  // namespace cpe

#endif  // CPE_BENCH_HPP_
