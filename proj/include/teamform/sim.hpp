// Copyright 2026 The teamform Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "teamform/model.hpp"

namespace teamform::sim {

/// Spreads are standard deviations. Rates are events per minute.
struct SimConfig {
  double duration_minutes = 1440.0;
  double worker_arrival_rate = 5.0;
  double task_arrival_rate = 0.1;
  std::size_t initial_workers = 100;
  double skill_mean = 0.8;
  double skill_spread = 0.15;
  double wage_mean = 0.8;
  double wage_spread = 0.15;
  double task_skill_mean = 15.0;
  double task_skill_spread = 1.0;
  double cost_factor = 1.0;  // budget = cost_factor * sum of thresholds
  std::size_t domains = 1;
  std::size_t critical_mass = 7;
  std::size_t embedding_dimension = 2;
  std::uint64_t seed = 1;
};

/// Throws InputError on negative rates, spreads or duration.
void validate(const SimConfig& cfg);

/// Missing keys keep their defaults; unknown keys are rejected.
SimConfig config_from_json(const nlohmann::json& doc);
nlohmann::ordered_json config_to_json(const SimConfig& cfg);

struct Population {
  std::vector<Worker> workers;
  std::vector<std::vector<double>> points;  // unit hypercube positions
};

/// Skills and wages ~ normal(mean, spread) clamped to [0.01, 1].
Population generate_population(const SimConfig& cfg, std::size_t count, std::uint64_t seed);

struct TimedTask {
  double arrival_minute = 0.0;
  Task task;
};

/// Poisson task arrivals over [0, horizon); thresholds ~ normal truncated at 0.
std::vector<TimedTask> generate_tasks(const SimConfig& cfg, double horizon, std::uint64_t seed);

enum class SimAlgorithm { grp_split, greedy_baseline, exact_overall };

std::string sim_algorithm_name(SimAlgorithm a);
std::optional<SimAlgorithm> parse_sim_algorithm(const std::string& name);

struct MetricsRow {
  std::size_t task_id = 0;
  double arrival_min = 0.0;
  std::string algorithm;
  std::optional<double> objective;  // empty when no assembly was produced
  double wall_ms = 0.0;
  std::size_t group_size = 0;
  std::size_t subgroups = 0;
  bool feasible = false;
};

/// Discrete-event run: workers arrive and stay, each task is solved against
/// everyone present at its arrival. Identical (cfg, algorithm, seed) give
/// identical rows apart from wall_ms.
std::vector<MetricsRow> run_simulation(const SimConfig& cfg, SimAlgorithm algorithm,
                                       std::uint64_t seed);

/// Header task_id,arrival_min,algorithm,objective,wall_ms,group_size,subgroups,feasible.
/// Missing objectives are written as NA. With timing off wall_ms is written as 0.
void write_metrics_csv(std::ostream& out, const std::vector<MetricsRow>& rows,
                       bool timing = true);

/// Mean objective over rows that produced an assembly; nullopt if none did.
std::optional<double> mean_objective(const std::vector<MetricsRow>& rows);

}  // namespace teamform::sim
