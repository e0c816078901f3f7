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
#include <optional>
#include <string_view>

#include "teamform/model.hpp"
#include "teamform/parallel.hpp"

namespace teamform {

enum class Algorithm {
  exact,         // exhaustive assembly optimum
  opt_grp,       // exact group only
  apprx_grp,     // 2-approximate group only
  grp_split,     // apprx_grp then min_star_partition
  greedy,        // random feasible group then greedy_partition
  cons_k_opt,    // opt_grp over bucketed wages
  cons_k_apprx,  // apprx_grp over bucketed wages
};

std::string_view algorithm_name(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);

struct SolveOptions {
  ObjectiveSpec spec;
  std::size_t k_buckets = 15;
  std::uint64_t seed = 0;
  std::size_t center_set_limit = 1'000'000;
  Exec exec = Exec::parallel;
};

/// Runs one algorithm end to end. Group-only algorithms report the group as a
/// single subgroup and use the intra term as the objective. Returns nullopt
/// when no feasible group is found; exceptions from size guards propagate.
std::optional<SolveReport> solve(const Instance& instance, Algorithm algorithm,
                                 const SolveOptions& options = {});

}  // namespace teamform
