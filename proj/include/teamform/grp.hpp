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
#include <span>
#include <vector>

#include "teamform/model.hpp"
#include "teamform/parallel.hpp"

namespace teamform {

/// Equal-width wage buckets. Bucket b holds wages in (boundaries[b-1], boundaries[b]];
/// bucket 0 also holds everything at or below its boundary.
struct BucketConfig {
  std::size_t k = 1;
  std::vector<double> boundaries;      // strictly ascending upper cutoffs
  std::vector<double> representative;  // wage charged for any member of the bucket

  /// Throws InputError for wages above the last boundary.
  std::size_t bucket_of(double wage) const;
};

/// Worker ids in the order the include/exclude tree branches on them.
using SearchOrder = std::vector<WorkerId>;

enum class SearchMode { first_valid, all_valid };

struct SearchStats {
  std::size_t nodes = 0;   // tree nodes visited, root included
  std::size_t leaves = 0;  // complete root-to-leaf paths reached
  std::size_t pruned = 0;  // subtrees cut by a bound
};

struct CandidateSearchResult {
  std::vector<Group> groups;
  SearchStats stats;
};

/// Descending wage, ties by ascending id.
SearchOrder descending_wage_order(std::span<const Worker> workers,
                                  std::span<const WorkerId> candidates);

/// Bounds at a tree node: the first included.size() workers of order are decided.
struct PathBounds {
  double cost_lower = 0.0;          // LB_C: wages of included workers
  std::vector<double> skill_upper;  // UB_{d_i}: included plus undecided skills
};
PathBounds path_bounds(std::span<const Worker> workers, std::size_t domains,
                       const SearchOrder& order, const std::vector<bool>& included);

/// Branch-and-bound over include/exclude decisions on the workers of order.
///
/// A subtree is cut when LB_C > C or UB_{d_i} < Q_i for some domain. In
/// all_valid mode the tree is walked depth-first and every feasible group is
/// returned. In first_valid mode nodes are expanded best-first by a cost lower
/// bound (LB_C plus the fractional cost of covering the remaining skill
/// deficit), so the single group returned is a cheapest feasible one.
///
/// With buckets, levels are wage buckets instead of workers: each level picks
/// how many of the bucket's workers to take, most skilled first, and costs use
/// the bucket representative wage.
CandidateSearchResult grp_candidate_search(std::span<const Worker> workers, const Task& task,
                                           SearchMode mode, const SearchOrder& order,
                                           const BucketConfig* buckets = nullptr);

struct GrpOptions {
  std::optional<BucketConfig> buckets;
  Exec exec = Exec::parallel;
};

struct GroupValue {
  Group group;
  double value = 0.0;
};

/// Exhaustive optimum of the intra distance over all skill/cost-feasible groups.
/// Ties go to the smaller group, then the lexicographically smaller one.
std::optional<GroupValue> opt_grp(std::span<const Worker> workers, const Task& task,
                                  const DistanceMatrix& d, Aggregation intra_mode,
                                  const GrpOptions& options = {});

/// {center} plus every worker within alpha of it, ascending.
Group star_members(const DistanceMatrix& d, WorkerId center, double alpha);

/// First feasible group found inside the star of some center, centers tried
/// in ascending id. Under the triangle inequality its diameter is <= 2*alpha.
std::optional<Group> grp_dia(std::span<const Worker> workers, const Task& task,
                             const DistanceMatrix& d, double alpha,
                             const GrpOptions& options = {});

/// Sorted unique distance values, diagonal zero included.
std::vector<double> distance_levels(const DistanceMatrix& d);

struct ApprxResult {
  Group group;
  double alpha = 0.0;
  std::size_t dia_calls = 0;
};

/// Binary search over distance_levels() for the smallest alpha at which
/// grp_dia succeeds. Diameter is within twice the optimum on metric input.
std::optional<ApprxResult> apprx_grp(std::span<const Worker> workers, const Task& task,
                                     const DistanceMatrix& d, const GrpOptions& options = {});

/// Equal-width wage buckets over [min wage, max wage]. Throws InputError for k == 0.
BucketConfig bucketize_wages(std::span<const Worker> workers, std::size_t k);

/// Baseline: shuffle, take workers until every threshold is met, retry when
/// over budget. Gives up after 1000 attempts.
std::optional<Group> random_feasible_group(std::span<const Worker> workers, const Task& task,
                                           std::uint64_t seed);

}  // namespace teamform
