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

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace teamform {

/// Dense 0-based worker ordinal. All tie-breaking uses ascending id.
using WorkerId = std::size_t;

/// A set of workers, kept sorted ascending without duplicates.
using Group = std::vector<WorkerId>;

/// Tolerance applied on every threshold, budget and alpha boundary.
inline constexpr double kTolerance = 1e-9;

/// Malformed input: bad ids, inconsistent shapes, impossible parameters.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exhaustive routine was asked to run above its configured size guard.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Worker {
  std::vector<double> skills;  // one entry per skill domain
  double wage = 0.0;
};

struct Task {
  std::vector<double> thresholds;  // Q_i per domain
  double budget = 0.0;             // C
  std::size_t critical_mass = 1;   // K
};

/// Square matrix of pairwise worker distances stored row-major.
///
/// The matrix does not enforce symmetry or range on construction so that
/// validate_instance() can report violations instead of throwing.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n, double fill = 0.0);

  /// Throws InputError when rows are ragged or not square.
  static DistanceMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }
  double& at(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
  void set_symmetric(std::size_t i, std::size_t j, double v) noexcept {
    at(i, j) = v;
    at(j, i) = v;
  }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * n_, n_};
  }
  std::vector<std::vector<double>> to_rows() const;

  /// Restriction to the given ids, in the given order.
  DistanceMatrix submatrix(std::span<const WorkerId> ids) const;

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

struct Instance {
  std::vector<Worker> workers;
  Task task;
  DistanceMatrix distances;

  std::size_t domains() const noexcept { return task.thresholds.size(); }
};

/// A selected group and its split into subgroups.
struct Assembly {
  Group group;
  std::vector<Group> subgroups;

  friend bool operator==(const Assembly&, const Assembly&) = default;
};

/// Builds an assembly from subgroups; group is their sorted union.
Assembly make_assembly(std::vector<Group> subgroups);

enum class Aggregation { Dia, Sum };

struct ObjectiveSpec {
  Aggregation intra = Aggregation::Dia;
  Aggregation inter = Aggregation::Sum;
};

struct Feasibility {
  std::vector<bool> skill;  // per domain
  bool cost = true;
  bool mass = true;

  bool skill_ok() const noexcept;
  bool all() const noexcept { return skill_ok() && cost && mass; }
};

struct SolveReport {
  std::string algorithm;
  std::optional<Assembly> assembly;
  double objective_value = 0.0;
  Feasibility feasibility;
  std::chrono::duration<double, std::milli> wall_time{0};
  std::vector<std::string> notes;
};

/// Lists every broken type invariant; empty means the instance is valid.
std::vector<std::string> validate_instance(std::span<const Worker> workers, const Task& task,
                                           const DistanceMatrix& distances);
inline std::vector<std::string> validate_instance(const Instance& instance) {
  return validate_instance(instance.workers, instance.task, instance.distances);
}

/// Evaluates skill, cost and critical-mass constraints for an assembly.
/// Throws InputError if any id is out of range.
Feasibility check_feasibility(const Assembly& assembly, std::span<const Worker> workers,
                              const Task& task);

/// Skill and cost only; the group is treated as unsplit.
bool satisfies_skill_and_cost(std::span<const WorkerId> group, std::span<const Worker> workers,
                              const Task& task);

/// Sorts and deduplicates in place.
void normalize(Group& group);

}  // namespace teamform
