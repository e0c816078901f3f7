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

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "teamform/model.hpp"
#include "teamform/parallel.hpp"

namespace teamform {

struct ExactOptions {
  std::size_t max_workers = 12;
  std::size_t max_group = 12;
  Exec exec = Exec::parallel;
};

/// Exhaustive optimum of the full problem: every skill/cost-feasible group,
/// every split into parts of at most K workers. Ties go to the smaller group,
/// then the lexicographically smaller group, then the first split found.
///
/// Returns nullopt when no feasible group exists. Throws GuardExceeded when
/// the pool or a feasible group is above the configured size.
std::optional<SolveReport> exact_overall(std::span<const Worker> workers, const Task& task,
                                         const DistanceMatrix& d, const ObjectiveSpec& spec = {},
                                         const ExactOptions& options = {});

/// Writes the (Dia, Sum) model as CPLEX LP text.
///
/// Variables: u_i_j (worker i in subgroup slot j, n slots), e_i_k (i and k
/// share a slot), c_i_k (both selected and in different slots), t (diameter).
/// Rows: skill_l, cost, mass_j, member_i, diam_i_k, same_i_k_j, cross_i_k.
/// Output is byte-identical for identical input.
std::string emit_ilp_text(std::span<const Worker> workers, const Task& task,
                          const DistanceMatrix& d);

}  // namespace teamform
