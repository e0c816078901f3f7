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
#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "teamform/affinity.hpp"
#include "teamform/exact.hpp"
#include "teamform/io.hpp"
#include "teamform/objective.hpp"
#include "teamform/sim.hpp"
#include "teamform/splt.hpp"

namespace teamform::cli {

namespace {

constexpr int kOk = 0;
constexpr int kInfeasible = 1;
constexpr int kInputError = 2;

const std::vector<std::string> kAlgorithms{"exact",  "opt-grp",    "apprx-grp",   "grp-split",
                                           "greedy", "cons-k-opt", "cons-k-apprx"};
const std::vector<std::string> kSimAlgorithms{"grp-split", "greedy", "exact"};
const std::vector<std::string> kAggregations{"dia", "sum"};
const std::vector<std::string> kMethods{"min-star", "greedy", "balanced", "unrestricted"};

Aggregation to_aggregation(const std::string& s) {
  return s == "sum" ? Aggregation::Sum : Aggregation::Dia;
}

PartitionMethod to_method(const std::string& s) {
  if (s == "greedy") return PartitionMethod::greedy;
  if (s == "balanced") return PartitionMethod::balanced;
  if (s == "unrestricted") return PartitionMethod::unrestricted;
  return PartitionMethod::min_star;
}

std::string method_name(PartitionMethod m) {
  switch (m) {
    case PartitionMethod::min_star: return "min-star";
    case PartitionMethod::greedy: return "greedy";
    case PartitionMethod::balanced: return "balanced";
    case PartitionMethod::unrestricted: return "unrestricted";
  }
  return "unknown";
}

// Writes to the named file, or to out when the name is empty.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& out) : out_(&out) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw InputError("cannot write " + path);
    out_ = &file_;
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

Instance load_checked(const std::string& path) {
  Instance inst = load_instance(path);
  const auto problems = validate_instance(inst);
  if (!problems.empty()) {
    std::string msg = path + " is not a valid instance:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw InputError(msg);
  }
  return inst;
}

void print_json(std::ostream& out, const nlohmann::ordered_json& j) { out << j.dump(2) << '\n'; }

int run_solve(const Command& c, std::ostream& out) {
  const Instance inst = load_checked(c.input);
  SolveOptions opts;
  opts.spec = c.spec;
  opts.k_buckets = c.k_buckets;
  opts.seed = c.seed.value_or(0);
  opts.center_set_limit = c.limit_centers;
  auto report = solve(inst, c.algorithm, opts);
  Sink sink(c.output, out);
  if (!report || !report->assembly) {
    nlohmann::ordered_json j;
    j["algorithm"] = std::string(algorithm_name(c.algorithm));
    j["feasible"] = false;
    print_json(sink.stream(), j);
    return kInfeasible;
  }
  if (!c.timing) report->wall_time = std::chrono::duration<double, std::milli>(0);
  print_json(sink.stream(), report_to_json(*report));
  return kOk;
}

int run_partition(const Command& c, std::ostream& out) {
  const Instance inst = load_checked(c.input);
  Group group = c.group;
  if (group.empty()) {
    group.resize(inst.workers.size());
    for (std::size_t i = 0; i < group.size(); ++i) group[i] = i;
  }
  for (auto id : group) {
    if (id >= inst.workers.size()) throw InputError("worker id " + std::to_string(id) + " out of range");
  }
  normalize(group);
  const std::size_t k = c.k.value_or(inst.task.critical_mass);
  if (k == 0) throw InputError("--k must be at least 1");

  PartitionResult result;
  switch (c.method) {
    case PartitionMethod::min_star: {
      MinStarOptions mo;
      mo.center_set_limit = c.limit_centers;
      result = min_star_partition(group, k, inst.distances, mo);
      break;
    }
    case PartitionMethod::greedy:
      result = greedy_partition(group, k, inst.distances);
      break;
    case PartitionMethod::balanced:
    case PartitionMethod::unrestricted:
      result = best_partition(group, k, inst.distances, c.spec.inter,
                              c.method == PartitionMethod::balanced);
      break;
  }

  nlohmann::ordered_json j;
  j["method"] = method_name(c.method);
  j["k"] = k;
  j["group"] = group;
  j["subgroups"] = result.subgroups;
  j["inter"] = partition_inter(result.subgroups, inst.distances, c.spec.inter);
  j["fell_back"] = result.fell_back;
  Sink sink(c.output, out);
  print_json(sink.stream(), j);
  return kOk;
}

int run_simulate(const Command& c, std::ostream& out) {
  sim::SimConfig cfg;
  if (!c.input.empty()) {
    std::ifstream in(c.input);
    if (!in) throw InputError("cannot open " + c.input);
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw InputError(c.input + ": " + e.what());
    }
    cfg = sim::config_from_json(doc);
  }
  const auto algo = sim::parse_sim_algorithm(c.sim_algorithm);
  if (!algo) throw InputError("unknown simulation algorithm " + c.sim_algorithm);
  const auto rows = sim::run_simulation(cfg, *algo, c.seed.value_or(cfg.seed));
  Sink sink(c.output, out);
  sim::write_metrics_csv(sink.stream(), rows, c.timing);
  return kOk;
}

int run_check_metric(const Command& c, std::ostream& out) {
  const Instance inst = load_instance(c.input);
  const auto violations = metric_violations(inst.distances, c.tol);
  nlohmann::ordered_json j;
  j["metric"] = violations.empty();
  j["violations"] = nlohmann::ordered_json::array();
  for (const auto& v : violations) j["violations"].push_back({v.i, v.j, v.k});
  Sink sink(c.output, out);
  print_json(sink.stream(), j);
  return violations.empty() ? kOk : kInfeasible;
}

int run_emit_ilp(const Command& c, std::ostream& out) {
  const Instance inst = load_checked(c.input);
  Sink sink(c.output, out);
  sink.stream() << emit_ilp_text(inst.workers, inst.task, inst.distances);
  return kOk;
}

int run_gen(const Command& c, std::ostream& out) {
  if (c.critical_mass == 0) throw InputError("--critical-mass must be at least 1");
  if (c.domains == 0) throw InputError("--domains must be at least 1");
  sim::SimConfig cfg;
  cfg.domains = c.domains;
  auto pop = sim::generate_population(cfg, c.workers, c.seed.value_or(1));

  Instance inst;
  inst.workers = std::move(pop.workers);
  inst.distances = euclidean_distance(pop.points);
  std::vector<double> totals(c.domains, 0.0);
  double wages = 0.0;
  for (const auto& w : inst.workers) {
    for (std::size_t i = 0; i < c.domains; ++i) totals[i] += w.skills[i];
    wages += w.wage;
  }
  for (double t : totals) inst.task.thresholds.push_back(c.threshold_fraction * t);
  inst.task.budget = c.budget_fraction * wages;
  inst.task.critical_mass = c.critical_mass;
  Sink sink(c.output, out);
  print_json(sink.stream(), instance_to_json(inst));
  return kOk;
}

}  // namespace

ParseOutcome parse_args(const std::vector<std::string>& args, std::ostream& out,
                        std::ostream& err) {
  CLI::App app{"Team formation: group selection, subgroup splitting and crowd simulation",
               "teamform"};
  app.require_subcommand(1);

  Command c;
  std::string algo = "grp-split";
  std::string intra = "dia";
  std::string inter = "sum";
  std::string method = "min-star";
  bool no_timing = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-o,--output", c.output, "Write here instead of standard output");
  };
  auto add_objective = [&](CLI::App* sub) {
    sub->add_option("--intra", intra, "Intra-group aggregation")->check(CLI::IsMember(kAggregations));
    sub->add_option("--inter", inter, "Inter-subgroup aggregation")->check(CLI::IsMember(kAggregations));
  };

  auto* solve_cmd = app.add_subcommand("solve", "Solve one instance and print a JSON report");
  solve_cmd->add_option("instance", c.input, "Instance JSON file")->required();
  solve_cmd->add_option("--algo", algo, "Algorithm")->check(CLI::IsMember(kAlgorithms));
  add_objective(solve_cmd);
  solve_cmd->add_option("--k-buckets", c.k_buckets, "Wage buckets for cons-k variants")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--seed", c.seed, "Seed for the greedy baseline");
  solve_cmd->add_option("--limit-centers", c.limit_centers, "Center-set limit for min-star");
  solve_cmd->add_flag("--no-timing", no_timing, "Report wall_ms as 0");
  add_common(solve_cmd);

  auto* part_cmd = app.add_subcommand("partition", "Split a given group into subgroups");
  part_cmd->add_option("instance", c.input, "Instance JSON file")->required();
  part_cmd->add_option("--k", c.k, "Upper critical mass (default: the instance's)");
  part_cmd->add_option("--group", c.group, "Worker ids, comma separated (default: everyone)")
      ->delimiter(',');
  part_cmd->add_option("--method", method, "Partitioning method")->check(CLI::IsMember(kMethods));
  part_cmd->add_option("--inter", inter, "Aggregation for the reported value")
      ->check(CLI::IsMember(kAggregations));
  part_cmd->add_option("--limit-centers", c.limit_centers, "Center-set limit for min-star");
  add_common(part_cmd);

  auto* sim_cmd = app.add_subcommand("simulate", "Run the crowd simulator and write metrics CSV");
  sim_cmd->add_option("--config", c.input, "SimConfig JSON file (default: built-in defaults)");
  sim_cmd->add_option("--algo", c.sim_algorithm, "Pipeline")->check(CLI::IsMember(kSimAlgorithms));
  sim_cmd->add_option("--seed", c.seed, "Seed (default: the config's)");
  sim_cmd->add_flag("--no-timing", no_timing, "Write wall_ms as 0");
  add_common(sim_cmd);

  auto* metric_cmd = app.add_subcommand("check-metric", "List triangle-inequality violations");
  metric_cmd->add_option("instance", c.input, "Instance JSON file")->required();
  metric_cmd->add_option("--tol", c.tol, "Tolerance")->check(CLI::NonNegativeNumber);
  add_common(metric_cmd);

  auto* ilp_cmd = app.add_subcommand("emit-ilp", "Write the exact model as LP text");
  ilp_cmd->add_option("instance", c.input, "Instance JSON file")->required();
  add_common(ilp_cmd);

  auto* gen_cmd = app.add_subcommand("gen", "Generate a random metric instance");
  gen_cmd->add_option("--workers", c.workers, "Worker count");
  gen_cmd->add_option("--domains", c.domains, "Skill domains");
  gen_cmd->add_option("--critical-mass", c.critical_mass, "Upper critical mass");
  gen_cmd->add_option("--threshold-fraction", c.threshold_fraction,
                      "Threshold as a fraction of the pool's total skill")
      ->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--budget-fraction", c.budget_fraction,
                      "Budget as a fraction of the pool's total wage")
      ->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--seed", c.seed, "Seed");
  add_common(gen_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return {std::nullopt, kOk};
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return {std::nullopt, kOk};
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return {std::nullopt, kInputError};
  }

  auto* chosen = app.get_subcommands().front();
  if (chosen == solve_cmd) c.sub = Subcommand::solve;
  if (chosen == part_cmd) c.sub = Subcommand::partition;
  if (chosen == sim_cmd) c.sub = Subcommand::simulate;
  if (chosen == metric_cmd) c.sub = Subcommand::check_metric;
  if (chosen == ilp_cmd) c.sub = Subcommand::emit_ilp;
  if (chosen == gen_cmd) c.sub = Subcommand::gen;

  c.algorithm = *parse_algorithm(algo);
  c.spec.intra = to_aggregation(intra);
  c.spec.inter = to_aggregation(inter);
  c.method = to_method(method);
  c.timing = !no_timing;
  return {c, kOk};
}

int run_command(const Command& c, std::ostream& out, std::ostream& err) {
  try {
    switch (c.sub) {
      case Subcommand::solve: return run_solve(c, out);
      case Subcommand::partition: return run_partition(c, out);
      case Subcommand::simulate: return run_simulate(c, out);
      case Subcommand::check_metric: return run_check_metric(c, out);
      case Subcommand::emit_ilp: return run_emit_ilp(c, out);
      case Subcommand::gen: return run_gen(c, out);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const GuardExceeded& e) {
    err << "error: " << e.what() << '\n';
  }
  return kInputError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto parsed = parse_args(args, out, err);
  if (!parsed.command) return parsed.exit_code;
  return run_command(*parsed.command, out, err);
}

}  // namespace teamform::cli
