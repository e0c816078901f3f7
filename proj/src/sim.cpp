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
#include "teamform/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>
#include <set>

#include "teamform/affinity.hpp"
#include "teamform/pipeline.hpp"

namespace teamform::sim {

void validate(const SimConfig& cfg) {
  auto need = [](bool ok, const char* what) {
    if (!ok) throw InputError(std::string("simulation config: ") + what);
  };
  need(cfg.duration_minutes >= 0.0, "duration_minutes must be >= 0");
  need(cfg.worker_arrival_rate >= 0.0, "worker_arrival_rate must be >= 0");
  need(cfg.task_arrival_rate >= 0.0, "task_arrival_rate must be >= 0");
  need(cfg.skill_spread >= 0.0 && cfg.wage_spread >= 0.0 && cfg.task_skill_spread >= 0.0,
       "spreads must be >= 0");
  need(cfg.cost_factor >= 0.0, "cost_factor must be >= 0");
  need(cfg.domains >= 1, "domains must be >= 1");
  need(cfg.critical_mass >= 1, "critical_mass must be >= 1");
  need(cfg.embedding_dimension >= 1, "embedding_dimension must be >= 1");
}

namespace {

template <typename Fn>
void for_each_field(SimConfig& cfg, Fn&& fn) {
  fn("duration_minutes", cfg.duration_minutes);
  fn("worker_arrival_rate", cfg.worker_arrival_rate);
  fn("task_arrival_rate", cfg.task_arrival_rate);
  fn("initial_workers", cfg.initial_workers);
  fn("skill_mean", cfg.skill_mean);
  fn("skill_spread", cfg.skill_spread);
  fn("wage_mean", cfg.wage_mean);
  fn("wage_spread", cfg.wage_spread);
  fn("task_skill_mean", cfg.task_skill_mean);
  fn("task_skill_spread", cfg.task_skill_spread);
  fn("cost_factor", cfg.cost_factor);
  fn("domains", cfg.domains);
  fn("critical_mass", cfg.critical_mass);
  fn("embedding_dimension", cfg.embedding_dimension);
  fn("seed", cfg.seed);
}

// Independent generator per purpose so adding draws to one stream never
// shifts another.
std::mt19937_64 stream(std::uint64_t seed, std::uint64_t purpose) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(purpose)};
  return std::mt19937_64(seq);
}

enum Stream : std::uint64_t { kPopulation = 1, kWorkerArrivals = 2, kTasks = 3, kSolver = 4 };

std::vector<double> poisson_times(double rate, double horizon, std::mt19937_64& rng) {
  std::vector<double> times;
  if (rate <= 0.0) return times;
  std::exponential_distribution<double> gap(rate);
  for (double t = gap(rng); t < horizon; t += gap(rng)) times.push_back(t);
  return times;
}

}  // namespace

SimConfig config_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InputError("simulation config must be a JSON object");
  SimConfig cfg;
  std::set<std::string> known;
  for_each_field(cfg, [&](const char* key, auto& slot) {
    known.insert(key);
    if (!doc.contains(key)) return;
    try {
      slot = doc.at(key).get<std::remove_reference_t<decltype(slot)>>();
    } catch (const nlohmann::json::exception& e) {
      throw InputError(std::string("simulation config field \"") + key + "\": " + e.what());
    }
  });
  for (const auto& [key, _] : doc.items()) {
    if (!known.contains(key)) throw InputError("unknown simulation config field \"" + key + "\"");
  }
  validate(cfg);
  return cfg;
}

nlohmann::ordered_json config_to_json(const SimConfig& cfg_in) {
  SimConfig cfg = cfg_in;
  nlohmann::ordered_json doc;
  for_each_field(cfg, [&](const char* key, auto& slot) { doc[key] = slot; });
  return doc;
}

Population generate_population(const SimConfig& cfg, std::size_t count, std::uint64_t seed) {
  auto rng = stream(seed, kPopulation);
  std::normal_distribution<double> skill(cfg.skill_mean, cfg.skill_spread);
  std::normal_distribution<double> wage(cfg.wage_mean, cfg.wage_spread);
  std::uniform_real_distribution<double> coord(0.0, 1.0);
  auto clamp = [](double v) { return std::clamp(v, 0.01, 1.0); };

  Population pop;
  pop.workers.reserve(count);
  pop.points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Worker w;
    w.skills.resize(cfg.domains);
    for (auto& s : w.skills) s = clamp(skill(rng));
    w.wage = clamp(wage(rng));
    std::vector<double> p(cfg.embedding_dimension);
    for (auto& c : p) c = coord(rng);
    pop.workers.push_back(std::move(w));
    pop.points.push_back(std::move(p));
  }
  return pop;
}

std::vector<TimedTask> generate_tasks(const SimConfig& cfg, double horizon, std::uint64_t seed) {
  auto rng = stream(seed, kTasks);
  const auto times = poisson_times(cfg.task_arrival_rate, horizon, rng);
  std::normal_distribution<double> threshold(cfg.task_skill_mean, cfg.task_skill_spread);
  std::vector<TimedTask> tasks;
  tasks.reserve(times.size());
  for (double t : times) {
    TimedTask tt;
    tt.arrival_minute = t;
    double total = 0.0;
    for (std::size_t i = 0; i < cfg.domains; ++i) {
      const double q = std::max(0.0, threshold(rng));
      tt.task.thresholds.push_back(q);
      total += q;
    }
    tt.task.budget = cfg.cost_factor * total;
    tt.task.critical_mass = cfg.critical_mass;
    tasks.push_back(std::move(tt));
  }
  return tasks;
}

std::string sim_algorithm_name(SimAlgorithm a) {
  switch (a) {
    case SimAlgorithm::grp_split: return "grp_split";
    case SimAlgorithm::greedy_baseline: return "greedy_baseline";
    case SimAlgorithm::exact_overall: return "exact_overall";
  }
  return "unknown";
}

std::optional<SimAlgorithm> parse_sim_algorithm(const std::string& name) {
  if (name == "grp-split" || name == "grp_split") return SimAlgorithm::grp_split;
  if (name == "greedy" || name == "greedy-baseline" || name == "greedy_baseline")
    return SimAlgorithm::greedy_baseline;
  if (name == "exact" || name == "exact-overall" || name == "exact_overall")
    return SimAlgorithm::exact_overall;
  return std::nullopt;
}

std::vector<MetricsRow> run_simulation(const SimConfig& cfg, SimAlgorithm algorithm,
                                       std::uint64_t seed) {
  validate(cfg);
  std::vector<MetricsRow> rows;
  if (cfg.duration_minutes <= 0.0) return rows;

  auto arrivals_rng = stream(seed, kWorkerArrivals);
  const auto arrivals = poisson_times(cfg.worker_arrival_rate, cfg.duration_minutes, arrivals_rng);
  const auto pop = generate_population(cfg, cfg.initial_workers + arrivals.size(), seed);
  const auto tasks = generate_tasks(cfg, cfg.duration_minutes, seed);
  auto solver_rng = stream(seed, kSolver);

  Algorithm alg = Algorithm::grp_split;
  if (algorithm == SimAlgorithm::greedy_baseline) alg = Algorithm::greedy;
  if (algorithm == SimAlgorithm::exact_overall) alg = Algorithm::exact;

  std::size_t present = 0;
  std::size_t next_arrival = 0;
  Instance inst;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    const auto& tt = tasks[t];
    while (next_arrival < arrivals.size() && arrivals[next_arrival] <= tt.arrival_minute)
      ++next_arrival;
    const std::size_t now_present = cfg.initial_workers + next_arrival;
    if (now_present != present || t == 0) {
      present = now_present;
      inst.workers.assign(pop.workers.begin(), pop.workers.begin() + static_cast<std::ptrdiff_t>(present));
      std::vector<std::vector<double>> pts(pop.points.begin(),
                                           pop.points.begin() + static_cast<std::ptrdiff_t>(present));
      inst.distances = euclidean_distance(pts);
    }
    inst.task = tt.task;

    SolveOptions opts;
    opts.seed = solver_rng();
    MetricsRow row;
    row.task_id = t;
    row.arrival_min = tt.arrival_minute;
    row.algorithm = sim_algorithm_name(algorithm);
    const auto start = std::chrono::steady_clock::now();
    std::optional<SolveReport> report;
    try {
      report = solve(inst, alg, opts);
    } catch (const GuardExceeded&) {
      report.reset();  // refusal is recorded as a row without an assembly
    }
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (report && report->assembly) {
      row.objective = report->objective_value;
      row.group_size = report->assembly->group.size();
      row.subgroups = report->assembly->subgroups.size();
      row.feasible = report->feasibility.all();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_metrics_csv(std::ostream& out, const std::vector<MetricsRow>& rows, bool timing) {
  out << "task_id,arrival_min,algorithm,objective,wall_ms,group_size,subgroups,feasible\n";
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::setprecision(10);
  for (const auto& r : rows) {
    out << r.task_id << ',' << r.arrival_min << ',' << r.algorithm << ',';
    if (r.objective) {
      out << *r.objective;
    } else {
      out << "NA";
    }
    out << ',' << (timing ? r.wall_ms : 0.0) << ',' << r.group_size << ',' << r.subgroups << ','
        << (r.feasible ? 1 : 0) << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

std::optional<double> mean_objective(const std::vector<MetricsRow>& rows) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& r : rows) {
    if (!r.objective) continue;
    sum += *r.objective;
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

}  // namespace teamform::sim
