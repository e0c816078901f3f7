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
#include "teamform/exact.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <chrono>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>

#include "teamform/grp.hpp"
#include "teamform/objective.hpp"
#include "teamform/splt.hpp"

namespace teamform {

namespace {

struct Best {
  double value = std::numeric_limits<double>::infinity();
  std::optional<Assembly> assembly;

  bool beaten_by(double v, const Group& g) const {
    if (!assembly) return true;
    if (v != value) return v < value;
    if (g.size() != assembly->group.size()) return g.size() < assembly->group.size();
    return g < assembly->group;
  }
};

// Best split of one group, or nothing when its intra term alone already loses.
std::optional<std::pair<double, Assembly>> evaluate_group(const Group& g, const DistanceMatrix& d,
                                                          const ObjectiveSpec& spec,
                                                          std::size_t K, double bound) {
  const double intra = intra_distance(g, d, spec.intra);
  if (intra > bound) return std::nullopt;
  auto split = best_partition(g, K, d, spec.inter, false);
  Assembly a;
  a.group = g;
  a.subgroups = std::move(split.subgroups);
  const double v = total_objective(a, d, spec);
  return std::make_pair(v, std::move(a));
}

}  // namespace

std::optional<SolveReport> exact_overall(std::span<const Worker> workers, const Task& task,
                                         const DistanceMatrix& d, const ObjectiveSpec& spec,
                                         const ExactOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  if (workers.size() > options.max_workers) {
    throw GuardExceeded("exact solver refuses " + std::to_string(workers.size()) +
                        " workers (limit " + std::to_string(options.max_workers) + ")");
  }
  std::vector<WorkerId> all(workers.size());
  std::iota(all.begin(), all.end(), WorkerId{0});
  const auto found = grp_candidate_search(workers, task, SearchMode::all_valid,
                                          descending_wage_order(workers, all));
  for (const auto& g : found.groups) {
    if (g.size() > options.max_group) {
      throw GuardExceeded("exact solver refuses a feasible group of " + std::to_string(g.size()) +
                          " workers (limit " + std::to_string(options.max_group) + ")");
    }
  }
  if (found.groups.empty()) return std::nullopt;

  const std::size_t K = task.critical_mass;
  Best best;
  if (options.exec == Exec::serial) {
    for (const auto& g : found.groups) {
      auto r = evaluate_group(g, d, spec, K, best.value);
      if (r && best.beaten_by(r->first, g)) best = Best{r->first, std::move(r->second)};
    }
  } else {
    // Pruning only drops groups whose intra term strictly exceeds a value
    // already attained, so the winner does not depend on scheduling.
    std::mutex mu;
    const auto count = static_cast<std::ptrdiff_t>(found.groups.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t idx = 0; idx < count; ++idx) {
      const auto& g = found.groups[idx];
      double bound;
      {
        std::lock_guard lock(mu);
        bound = best.value;
      }
      auto r = evaluate_group(g, d, spec, K, bound);
      if (!r) continue;
      std::lock_guard lock(mu);
      if (best.beaten_by(r->first, g)) best = Best{r->first, std::move(r->second)};
    }
  }

  SolveReport report;
  report.algorithm = "exact";
  report.objective_value = best.value;
  report.feasibility = check_feasibility(*best.assembly, workers, task);
  report.assembly = std::move(best.assembly);
  report.wall_time = std::chrono::steady_clock::now() - start;
  return report;
}

namespace {

std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

class LpRow {
 public:
  explicit LpRow(std::string name) : name_(std::move(name)) {}

  LpRow& term(double coef, const std::string& var) {
    if (terms_.empty()) {
      os_ << (coef < 0 ? "- " : "") << num(std::abs(coef)) << ' ' << var;
    } else {
      os_ << (coef < 0 ? " - " : " + ") << num(std::abs(coef)) << ' ' << var;
    }
    terms_.push_back(var);
    return *this;
  }

  std::string finish(const char* sense, double rhs) const {
    return " " + name_ + ": " + os_.str() + ' ' + sense + ' ' + num(rhs) + '\n';
  }
  std::string objective() const { return " " + name_ + ": " + os_.str() + '\n'; }

 private:
  std::string name_;
  std::ostringstream os_;
  std::vector<std::string> terms_;
};

std::string u_var(std::size_t i, std::size_t j) {
  return "u_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
}
std::string pair_var(char prefix, std::size_t i, std::size_t k) {
  return std::string(1, prefix) + "_" + std::to_string(i + 1) + "_" + std::to_string(k + 1);
}

}  // namespace

std::string emit_ilp_text(std::span<const Worker> workers, const Task& task,
                          const DistanceMatrix& d) {
  const std::size_t n = workers.size();
  const std::size_t m = task.thresholds.size();
  std::string out;
  out += "\\ teamform model: " + std::to_string(n) + " workers, " + std::to_string(m) +
         " domains, " + std::to_string(n) + " subgroup slots\n";

  out += "Minimize\n";
  {
    LpRow obj("obj");
    obj.term(1.0, "t");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = i + 1; k < n; ++k) obj.term(d(i, k), pair_var('c', i, k));
    out += obj.objective();
  }

  out += "Subject To\n";
  for (std::size_t l = 0; l < m; ++l) {
    LpRow row("skill_" + std::to_string(l + 1));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) row.term(workers[i].skills[l], u_var(i, j));
    if (n == 0) row.term(0.0, "t");
    out += row.finish(">=", task.thresholds[l]);
  }
  {
    LpRow row("cost");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) row.term(workers[i].wage, u_var(i, j));
    if (n == 0) row.term(0.0, "t");
    out += row.finish("<=", task.budget);
  }
  for (std::size_t j = 0; j < n; ++j) {
    LpRow row("mass_" + std::to_string(j + 1));
    for (std::size_t i = 0; i < n; ++i) row.term(1.0, u_var(i, j));
    out += row.finish("<=", static_cast<double>(task.critical_mass));
  }
  for (std::size_t i = 0; i < n; ++i) {
    LpRow row("member_" + std::to_string(i + 1));
    for (std::size_t j = 0; j < n; ++j) row.term(1.0, u_var(i, j));
    out += row.finish("<=", 1.0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      const std::string tag = std::to_string(i + 1) + "_" + std::to_string(k + 1);
      const double dist = d(i, k);
      if (dist > 0.0) {
        // t >= dist when both workers are selected.
        LpRow row("diam_" + tag);
        row.term(1.0, "t");
        for (std::size_t j = 0; j < n; ++j) row.term(-dist, u_var(i, j));
        for (std::size_t j = 0; j < n; ++j) row.term(-dist, u_var(k, j));
        out += row.finish(">=", -dist);
      }
      // e_i_k may be 1 only when i is selected and k shares i's slot.
      for (std::size_t j = 0; j < n; ++j) {
        LpRow row("same_" + tag + "_" + std::to_string(j + 1));
        row.term(1.0, pair_var('e', i, k)).term(1.0, u_var(i, j)).term(-1.0, u_var(k, j));
        out += row.finish("<=", 1.0);
      }
      {
        LpRow row("sel_" + tag);
        row.term(1.0, pair_var('e', i, k));
        for (std::size_t j = 0; j < n; ++j) row.term(-1.0, u_var(i, j));
        out += row.finish("<=", 0.0);
      }
      // c_i_k >= selected_i + selected_k - 1 - e_i_k.
      {
        LpRow row("cross_" + tag);
        row.term(1.0, pair_var('c', i, k)).term(1.0, pair_var('e', i, k));
        for (std::size_t j = 0; j < n; ++j) row.term(-1.0, u_var(i, j));
        for (std::size_t j = 0; j < n; ++j) row.term(-1.0, u_var(k, j));
        out += row.finish(">=", -1.0);
      }
    }
  }

  out += "Bounds\n t >= 0\n";
  out += "Binary\n";
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out += " " + u_var(i, j) + "\n";
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k)
      out += " " + pair_var('e', i, k) + "\n " + pair_var('c', i, k) + "\n";
  out += "End\n";
  return out;
}

}  // namespace teamform
