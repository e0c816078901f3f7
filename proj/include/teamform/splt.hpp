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
#include <vector>

#include "teamform/model.hpp"
#include "teamform/parallel.hpp"

namespace teamform {

/// ceil(n'/K) subgroup sizes: K everywhere except the last slot.
std::vector<std::size_t> balanced_sizes(std::size_t n_prime, std::size_t K);

/// Star centers and the size of the subgroup each one roots. Center j belongs to subgroup j.
struct CenterSet {
  std::vector<WorkerId> centers;
  std::vector<std::size_t> sizes;
};

/// How a non-center v assigned to subgroup j is charged in the Min-Star surrogate.
enum class StarWeighting {
  own_center,  // (n' - k_j) * dist(u_j, v)
  literal,     // sum over i != j of k_i * dist(u_i, v)
};

/// Min-Star surrogate: star-edge term plus sum_{i<j} k_i k_j dist(u_i, u_j).
/// Throws InputError when the partition does not match the center set.
double star_cost(const CenterSet& centers, std::span<const Group> partition,
                 const DistanceMatrix& d, StarWeighting weighting = StarWeighting::own_center);

/// Rows are non-centers, columns are subgroups.
struct TransportationInstance {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> costs;  // row-major rows x cols
  std::vector<std::size_t> capacities;

  double cost(std::size_t r, std::size_t c) const { return costs[r * cols + c]; }
};

TransportationInstance build_transportation(const CenterSet& centers,
                                            std::span<const WorkerId> non_centers,
                                            const DistanceMatrix& d,
                                            StarWeighting weighting = StarWeighting::own_center);

/// Exact capacity-respecting min-cost assignment (successive shortest paths
/// over the column graph). Returns the column of each row. Throws InputError
/// unless capacities sum to the row count.
std::vector<std::size_t> solve_transportation(const TransportationInstance& inst);

double assignment_cost(const TransportationInstance& inst, std::span<const std::size_t> assignment);

struct PartitionResult {
  std::vector<Group> subgroups;
  double value = 0.0;  // aggregated inter distance (Sum)
  bool fell_back = false;
  std::size_t center_sets = 0;
};

struct MinStarOptions {
  std::size_t center_set_limit = 1'000'000;
  StarWeighting weighting = StarWeighting::own_center;
  Exec exec = Exec::parallel;
};

/// Number of (center subset, slot arrangement) pairs min_star_partition would try.
/// Saturates at SIZE_MAX.
std::size_t min_star_center_sets(std::size_t n_prime, std::size_t K);

/// Tries every center subset and every size-distinct arrangement of the
/// centers over the balanced slots, solves the transportation problem for the
/// rest and keeps the partition with the lowest true aggregated inter distance.
/// Falls back to greedy_partition when the center-set count exceeds the limit.
PartitionResult min_star_partition(std::span<const WorkerId> group, std::size_t K,
                                   const DistanceMatrix& d, const MinStarOptions& options = {});

/// Each worker, in order, joins the open subgroup minimizing its summed
/// distance to current members; balanced sizes. Order defaults to ascending id.
PartitionResult greedy_partition(std::span<const WorkerId> group, std::size_t K,
                                 const DistanceMatrix& d,
                                 std::optional<std::vector<WorkerId>> order = std::nullopt);

inline constexpr std::size_t kBruteForceLimit = 12;

/// Exact optimum over partitions with parts <= K (or exactly the balanced
/// sizes). Throws GuardExceeded above kBruteForceLimit workers.
PartitionResult brute_force_partition(std::span<const WorkerId> group, std::size_t K,
                                      const DistanceMatrix& d, bool balanced_only);

/// Exhaustive optimum of partition_inter under either aggregation, parts <= K.
/// Shared by brute_force_partition and the exact solver; pruned by the best
/// value found so far. An empty group yields no subgroups.
PartitionResult best_partition(std::span<const WorkerId> group, std::size_t K,
                               const DistanceMatrix& d, Aggregation mode, bool balanced_only);

}  // namespace teamform
