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
#include "teamform/objective.hpp"

#include <algorithm>

namespace teamform {

double intra_distance(std::span<const WorkerId> group, const DistanceMatrix& d, Aggregation mode) {
  double acc = 0.0;
  for (std::size_t a = 0; a < group.size(); ++a) {
    for (std::size_t b = a + 1; b < group.size(); ++b) {
      const double v = d(group[a], group[b]);
      acc = mode == Aggregation::Dia ? std::max(acc, v) : acc + v;
    }
  }
  return acc;
}

double inter_distance(std::span<const WorkerId> g1, std::span<const WorkerId> g2,
                      const DistanceMatrix& d, Aggregation mode) {
  double acc = 0.0;
  for (WorkerId a : g1) {
    for (WorkerId b : g2) {
      if (a == b) throw InputError("subgroups overlap on worker " + std::to_string(a));
      const double v = d(a, b);
      acc = mode == Aggregation::Dia ? std::max(acc, v) : acc + v;
    }
  }
  return acc;
}

double partition_inter(std::span<const Group> subgroups, const DistanceMatrix& d,
                       Aggregation mode) {
  double acc = 0.0;
  for (std::size_t i = 0; i < subgroups.size(); ++i) {
    for (std::size_t j = i + 1; j < subgroups.size(); ++j) {
      const double v = inter_distance(subgroups[i], subgroups[j], d, mode);
      acc = mode == Aggregation::Dia ? std::max(acc, v) : acc + v;
    }
  }
  return acc;
}

double total_objective(const Assembly& assembly, const DistanceMatrix& d,
                       const ObjectiveSpec& spec) {
  return intra_distance(assembly.group, d, spec.intra) +
         partition_inter(assembly.subgroups, d, spec.inter);
}

}  // namespace teamform
