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

#include <span>

#include "teamform/model.hpp"

namespace teamform {

/// Dia: largest pairwise distance. Sum: sum over unordered pairs. 0 for fewer than two workers.
double intra_distance(std::span<const WorkerId> group, const DistanceMatrix& d, Aggregation mode);

/// Cross-pair max or sum between two disjoint groups. Throws InputError on overlap.
double inter_distance(std::span<const WorkerId> g1, std::span<const WorkerId> g2,
                      const DistanceMatrix& d, Aggregation mode);

/// Sum (or max) of inter_distance over every pair of subgroups; 0 for one subgroup.
double partition_inter(std::span<const Group> subgroups, const DistanceMatrix& d,
                       Aggregation mode);

/// intra_distance(group, spec.intra) + partition_inter(subgroups, spec.inter).
double total_objective(const Assembly& assembly, const DistanceMatrix& d,
                       const ObjectiveSpec& spec = {});

}  // namespace teamform
