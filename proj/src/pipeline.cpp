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
#include "teamform/pipeline.hpp"

#include <array>
#include <chrono>
#include <utility>

#include "teamform/exact.hpp"
#include "teamform/grp.hpp"
#include "teamform/objective.hpp"
#include "teamform/splt.hpp"

namespace teamform {

namespace {

constexpr std::array<std::pair<Algorithm, std::string_view>, 7> kNames{{
    {Algorithm::exact, "exact"},
    {Algorithm::opt_grp, "opt-grp"},
    {Algorithm::apprx_grp, "apprx-grp"},
    {Algorithm::grp_split, "grp-split"},
    {Algorithm::greedy, "greedy"},
    {Algorithm::cons_k_opt, "cons-k-opt"},
    {Algorithm::cons_k_apprx, "cons-k-apprx"},
}};

SolveReport finish(Algorithm a, Assembly assembly, double objective, const Instance& inst,
                   std::chrono::steady_clock::time_point start) {
  SolveReport r;
  r.algorithm = std::string(algorithm_name(a));
  r.feasibility = check_feasibility(assembly, inst.workers, inst.task);
  r.objective_value = objective;
  r.assembly = std::move(assembly);
  r.wall_time = std::chrono::steady_clock::now() - start;
  return r;
}

Assembly unsplit(Group g) {
  Assembly a;
  if (!g.empty()) a.subgroups.push_back(g);
  a.group = std::move(g);
  return a;
}

}  // namespace

std::string_view algorithm_name(Algorithm a) {
  for (const auto& [alg, name] : kNames)
    if (alg == a) return name;
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (const auto& [alg, n] : kNames)
    if (n == name) return alg;
  return std::nullopt;
}

std::optional<SolveReport> solve(const Instance& inst, Algorithm algorithm,
                                 const SolveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const auto& workers = inst.workers;
  const auto& task = inst.task;
  const auto& d = inst.distances;

  GrpOptions grp;
  grp.exec = options.exec;
  if (algorithm == Algorithm::cons_k_opt || algorithm == Algorithm::cons_k_apprx) {
    grp.buckets = bucketize_wages(workers, options.k_buckets);
  }

  switch (algorithm) {
    case Algorithm::exact: {
      ExactOptions eo;
      eo.exec = options.exec;
      auto r = exact_overall(workers, task, d, options.spec, eo);
      if (r) r->wall_time = std::chrono::steady_clock::now() - start;
      return r;
    }
    case Algorithm::opt_grp:
    case Algorithm::cons_k_opt: {
      auto g = opt_grp(workers, task, d, options.spec.intra, grp);
      if (!g) return std::nullopt;
      return finish(algorithm, unsplit(std::move(g->group)), g->value, inst, start);
    }
    case Algorithm::apprx_grp:
    case Algorithm::cons_k_apprx: {
      auto g = apprx_grp(workers, task, d, grp);
      if (!g) return std::nullopt;
      const double v = intra_distance(g->group, d, options.spec.intra);
      auto r = finish(algorithm, unsplit(std::move(g->group)), v, inst, start);
      r.notes.push_back("alpha=" + std::to_string(g->alpha));
      return r;
    }
    case Algorithm::grp_split: {
      auto g = apprx_grp(workers, task, d, grp);
      if (!g) return std::nullopt;
      MinStarOptions mo;
      mo.center_set_limit = options.center_set_limit;
      mo.exec = options.exec;
      auto split = min_star_partition(g->group, task.critical_mass, d, mo);
      Assembly a = make_assembly(std::move(split.subgroups));
      if (a.group.empty()) a.group = g->group;
      const double v = total_objective(a, d, options.spec);
      auto r = finish(algorithm, std::move(a), v, inst, start);
      if (split.fell_back) r.notes.push_back("center-set limit exceeded; greedy split used");
      return r;
    }
    case Algorithm::greedy: {
      auto g = random_feasible_group(workers, task, options.seed);
      if (!g) return std::nullopt;
      auto split = greedy_partition(*g, task.critical_mass, d);
      Assembly a = make_assembly(std::move(split.subgroups));
      const double v = total_objective(a, d, options.spec);
      return finish(algorithm, std::move(a), v, inst, start);
    }
  }
  return std::nullopt;
}

}  // namespace teamform
