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
#include "teamform/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace teamform {

DistanceMatrix::DistanceMatrix(std::size_t n, double fill) : n_(n), data_(n * n, fill) {
  for (std::size_t i = 0; i < n; ++i) data_[i * n + i] = 0.0;
}

DistanceMatrix DistanceMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  DistanceMatrix d;
  d.n_ = rows.size();
  d.data_.reserve(d.n_ * d.n_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw InputError("distance matrix row " + std::to_string(i) + " has " +
                       std::to_string(rows[i].size()) + " entries, expected " +
                       std::to_string(rows.size()));
    }
    d.data_.insert(d.data_.end(), rows[i].begin(), rows[i].end());
  }
  return d;
}

std::vector<std::vector<double>> DistanceMatrix::to_rows() const {
  std::vector<std::vector<double>> rows(n_);
  for (std::size_t i = 0; i < n_; ++i) rows[i].assign(row(i).begin(), row(i).end());
  return rows;
}

DistanceMatrix DistanceMatrix::submatrix(std::span<const WorkerId> ids) const {
  DistanceMatrix sub(ids.size());
  for (std::size_t a = 0; a < ids.size(); ++a)
    for (std::size_t b = 0; b < ids.size(); ++b) sub.at(a, b) = (*this)(ids[a], ids[b]);
  return sub;
}

void normalize(Group& group) {
  std::ranges::sort(group);
  group.erase(std::unique(group.begin(), group.end()), group.end());
}

Assembly make_assembly(std::vector<Group> subgroups) {
  Assembly a;
  for (auto& g : subgroups) {
    normalize(g);
    a.group.insert(a.group.end(), g.begin(), g.end());
  }
  normalize(a.group);
  a.subgroups = std::move(subgroups);
  return a;
}

bool Feasibility::skill_ok() const noexcept {
  return std::ranges::all_of(skill, [](bool b) { return b; });
}

std::vector<std::string> validate_instance(std::span<const Worker> workers, const Task& task,
                                           const DistanceMatrix& distances) {
  std::vector<std::string> out;
  auto report = [&out](auto&&... parts) {
    std::ostringstream os;
    (os << ... << parts);
    out.push_back(os.str());
  };

  const std::size_t m = task.thresholds.size();
  if (m == 0) report("task has no skill domains");
  for (std::size_t i = 0; i < m; ++i) {
    if (!(task.thresholds[i] >= 0.0)) report("threshold ", i, " is negative");
  }
  if (!(task.budget >= 0.0)) report("budget is negative");
  if (task.critical_mass < 1) report("critical mass must be at least 1");

  for (std::size_t w = 0; w < workers.size(); ++w) {
    const auto& worker = workers[w];
    if (worker.skills.size() != m) {
      report("worker ", w, " has ", worker.skills.size(), " skills, expected ", m);
    }
    for (std::size_t i = 0; i < worker.skills.size(); ++i) {
      if (!(worker.skills[i] >= 0.0)) report("worker ", w, " skill ", i, " is negative");
    }
    if (!(worker.wage >= 0.0)) report("worker ", w, " wage is negative");
  }

  const std::size_t n = distances.size();
  if (n != workers.size()) {
    report("distance matrix is ", n, "x", n, " but there are ", workers.size(), " workers");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (distances(i, i) != 0.0) report("distance diagonal (", i, ",", i, ") is not zero");
    for (std::size_t j = 0; j < n; ++j) {
      const double d = distances(i, j);
      if (!(d >= 0.0 && d <= 1.0)) report("distance (", i, ",", j, ") = ", d, " outside [0,1]");
      if (j > i && d != distances(j, i)) report("distance (", i, ",", j, ") is not symmetric");
    }
  }
  return out;
}

Feasibility check_feasibility(const Assembly& assembly, std::span<const Worker> workers,
                              const Task& task) {
  const std::size_t m = task.thresholds.size();
  std::vector<double> skill(m, 0.0);
  double cost = 0.0;
  for (WorkerId id : assembly.group) {
    if (id >= workers.size()) {
      throw InputError("worker id " + std::to_string(id) + " out of range");
    }
    const auto& w = workers[id];
    for (std::size_t i = 0; i < m && i < w.skills.size(); ++i) skill[i] += w.skills[i];
    cost += w.wage;
  }

  Feasibility f;
  f.skill.resize(m);
  for (std::size_t i = 0; i < m; ++i) f.skill[i] = skill[i] >= task.thresholds[i] - kTolerance;
  f.cost = cost <= task.budget + kTolerance;
  for (const auto& sub : assembly.subgroups) {
    for (WorkerId id : sub) {
      if (id >= workers.size()) {
        throw InputError("worker id " + std::to_string(id) + " out of range");
      }
    }
    if (sub.size() > task.critical_mass) f.mass = false;
  }
  return f;
}

bool satisfies_skill_and_cost(std::span<const WorkerId> group, std::span<const Worker> workers,
                              const Task& task) {
  Assembly a;
  a.group.assign(group.begin(), group.end());
  const auto f = check_feasibility(a, workers, task);
  return f.skill_ok() && f.cost;
}

}  // namespace teamform
