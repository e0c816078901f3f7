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
#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "support.hpp"
#include "teamform/grp.hpp"
#include "teamform/objective.hpp"

namespace teamform {
namespace {

using testing::table_instance;

Group all_ids(std::size_t n) {
  Group g(n);
  std::iota(g.begin(), g.end(), 0);
  return g;
}

TEST(DescendingWageOrder, TiesByAscendingId) {
  const auto inst = table_instance();
  const auto order = descending_wage_order(inst.workers, all_ids(6));
  EXPECT_EQ(order, (SearchOrder{3, 5, 2, 4, 0, 1}));
}

TEST(PathBounds, PrunedNodeFromTheSearchTree) {
  // Include u4, u6, u3, u5, u1; u2 still undecided.
  const auto inst = table_instance();
  const auto order = descending_wage_order(inst.workers, all_ids(6));
  const auto b = path_bounds(inst.workers, 3, order, {true, true, true, true, true});
  EXPECT_NEAR(b.cost_lower, 3.2, 1e-12);
  EXPECT_GT(b.cost_lower, inst.task.budget);
  EXPECT_NEAR(b.skill_upper[0], 2.32, 1e-12);
}

TEST(CandidateSearch, AllValidOnTable) {
  const auto inst = table_instance();
  const auto order = descending_wage_order(inst.workers, all_ids(6));
  auto found = grp_candidate_search(inst.workers, inst.task, SearchMode::all_valid, order).groups;
  std::ranges::sort(found);
  auto expected = testing::naive_feasible_groups(inst);
  std::ranges::sort(expected);
  EXPECT_EQ(found, expected);
  EXPECT_EQ(found, (std::vector<Group>{{0, 1, 2, 3, 4}, {0, 1, 2, 3, 5}, {0, 1, 2, 4, 5}}));
}

TEST(CandidateSearch, FirstValidReturnsACheapestGroup) {
  const auto inst = table_instance();
  const auto order = descending_wage_order(inst.workers, all_ids(6));
  const auto r = grp_candidate_search(inst.workers, inst.task, SearchMode::first_valid, order);
  ASSERT_EQ(r.groups.size(), 1U);
  EXPECT_TRUE(satisfies_skill_and_cost(r.groups[0], inst.workers, inst.task));
  double cheapest = 1e9;
  for (const auto& g : testing::naive_feasible_groups(inst)) {
    double c = 0.0;
    for (auto id : g) c += inst.workers[id].wage;
    cheapest = std::min(cheapest, c);
  }
  double c = 0.0;
  for (auto id : r.groups[0]) c += inst.workers[id].wage;
  EXPECT_NEAR(c, cheapest, 1e-12);
}

TEST(CandidateSearch, BucketedTreeHasAtMostSixteenPrefixBranches) {
  auto inst = table_instance();
  for (auto& w : inst.workers) w.skills.resize(1);
  inst.task.thresholds = {1.8};
  const auto buckets = bucketize_wages(inst.workers, 2);
  const auto order = descending_wage_order(inst.workers, all_ids(6));
  const auto r =
      grp_candidate_search(inst.workers, inst.task, SearchMode::all_valid, order, &buckets);
  EXPECT_LE(r.stats.leaves, 16U);
  EXPECT_LE(r.stats.nodes, 1U + 4U + 16U);
  EXPECT_FALSE(r.groups.empty());
  for (const auto& g : r.groups) EXPECT_TRUE(satisfies_skill_and_cost(g, inst.workers, inst.task));
}

TEST(CandidateSearch, OrderIdsValidated) {
  const auto inst = table_instance();
  EXPECT_THROW(grp_candidate_search(inst.workers, inst.task, SearchMode::all_valid, {0, 7}),
               InputError);
}

TEST(OptGrp, TableDiameterIsOne) {
  const auto inst = table_instance();
  const auto r = opt_grp(inst.workers, inst.task, inst.distances, Aggregation::Dia);
  ASSERT_TRUE(r);
  EXPECT_NEAR(r->value, 1.0, 1e-9);
  EXPECT_TRUE(satisfies_skill_and_cost(r->group, inst.workers, inst.task));
}

TEST(OptGrp, VacuousTaskGivesEmptyGroup) {
  auto inst = table_instance();
  inst.task.thresholds = {0.0, 0.0, 0.0};
  inst.task.budget = 0.0;
  const auto r = opt_grp(inst.workers, inst.task, inst.distances, Aggregation::Dia);
  ASSERT_TRUE(r);
  EXPECT_TRUE(r->group.empty());
  EXPECT_EQ(r->value, 0.0);
}

TEST(OptGrp, TightBudgetIsInfeasible) {
  auto inst = table_instance();
  inst.task.budget = 0.5;
  EXPECT_TRUE(testing::naive_feasible_groups(inst).empty());
  EXPECT_FALSE(opt_grp(inst.workers, inst.task, inst.distances, Aggregation::Dia));
}

TEST(OptGrp, SumModeMatchesEnumeration) {
  const auto inst = table_instance();
  double best = 1e9;
  for (const auto& g : testing::naive_feasible_groups(inst))
    best = std::min(best, testing::naive_sum(g, inst.distances));
  const auto r = opt_grp(inst.workers, inst.task, inst.distances, Aggregation::Sum);
  ASSERT_TRUE(r);
  EXPECT_NEAR(r->value, best, 1e-12);
}

TEST(StarMembers, TableStars) {
  const auto d = table_instance().distances;
  EXPECT_EQ(star_members(d, 2, 0.66), all_ids(6));
  EXPECT_EQ(star_members(d, 0, 0.66), (Group{0, 2, 3, 5}));
  EXPECT_EQ(star_members(d, 3, 0.0), (Group{3, 5}));
}

TEST(GrpDia, SucceedsAtSixtySixHundredths) {
  const auto inst = table_instance();
  // The u1 star has too little skill in d1 and the u2 star too little in d2.
  EXPECT_FALSE(satisfies_skill_and_cost(star_members(inst.distances, 0, 0.66), inst.workers,
                                        inst.task));
  const auto g = grp_dia(inst.workers, inst.task, inst.distances, 0.66);
  ASSERT_TRUE(g);
  EXPECT_TRUE(satisfies_skill_and_cost(*g, inst.workers, inst.task));
  EXPECT_LE(intra_distance(*g, inst.distances, Aggregation::Dia), 1.32 + 1e-9);
}

TEST(GrpDia, SingletonStarsFail) {
  const auto inst = table_instance();
  EXPECT_FALSE(grp_dia(inst.workers, inst.task, inst.distances, 0.0));
}

TEST(DistanceLevels, Table) {
  EXPECT_EQ(distance_levels(table_instance().distances),
            (std::vector<double>{0.0, 0.4, 0.66, 0.85, 1.0}));
}

TEST(ApprxGrp, TableSmallestAlpha) {
  const auto inst = table_instance();
  const auto r = apprx_grp(inst.workers, inst.task, inst.distances);
  ASSERT_TRUE(r);
  EXPECT_DOUBLE_EQ(r->alpha, 0.66);
  EXPECT_TRUE(satisfies_skill_and_cost(r->group, inst.workers, inst.task));
  EXPECT_LE(intra_distance(r->group, inst.distances, Aggregation::Dia), 1.32 + 1e-9);
  EXPECT_LE(r->dia_calls, 4U);  // ceil(log2(5)) + 1
  EXPECT_FALSE(grp_dia(inst.workers, inst.task, inst.distances, 0.4));
}

TEST(ApprxGrp, InfeasibleTask) {
  auto inst = table_instance();
  inst.task.thresholds[0] = 10.0;
  EXPECT_FALSE(apprx_grp(inst.workers, inst.task, inst.distances));
}

TEST(BucketizeWages, TwoBucketsOnTable) {
  const auto inst = table_instance();
  const auto b = bucketize_wages(inst.workers, 2);
  ASSERT_EQ(b.boundaries.size(), 2U);
  EXPECT_NEAR(b.boundaries[0], 0.55, 1e-12);
  EXPECT_NEAR(b.boundaries[1], 0.8, 1e-12);
  std::vector<std::size_t> got;
  for (const auto& w : inst.workers) got.push_back(b.bucket_of(w.wage));
  EXPECT_EQ(got, (std::vector<std::size_t>{0, 0, 1, 1, 0, 1}));
  EXPECT_EQ(b.representative, b.boundaries);
}

TEST(BucketizeWages, OneBucketHoldsEveryone) {
  const auto inst = table_instance();
  const auto b = bucketize_wages(inst.workers, 1);
  for (const auto& w : inst.workers) EXPECT_EQ(b.bucket_of(w.wage), 0U);
}

TEST(BucketizeWages, SingleWorkerThreeBuckets) {
  const std::vector<Worker> one{{{0.5}, 0.7}};
  const auto b = bucketize_wages(one, 3);
  ASSERT_EQ(b.boundaries.size(), 3U);
  EXPECT_EQ(b.bucket_of(0.7), 0U);
  EXPECT_DOUBLE_EQ(b.representative[0], 0.7);
}

TEST(BucketizeWages, ZeroBucketsRejected) {
  EXPECT_THROW(bucketize_wages(table_instance().workers, 0), InputError);
}

TEST(BucketizeWages, WageAboveRangeRejected) {
  const auto b = bucketize_wages(table_instance().workers, 2);
  EXPECT_THROW(b.bucket_of(0.9), InputError);
}

TEST(RandomFeasibleGroup, TableAnySeed) {
  const auto inst = table_instance();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = random_feasible_group(inst.workers, inst.task, seed);
    ASSERT_TRUE(g) << seed;
    EXPECT_TRUE(satisfies_skill_and_cost(*g, inst.workers, inst.task));
  }
}

TEST(RandomFeasibleGroup, ZeroThresholdAndInfeasible) {
  auto inst = table_instance();
  auto vacuous = inst.task;
  vacuous.thresholds = {0.0, 0.0, 0.0};
  const auto g = random_feasible_group(inst.workers, vacuous, 1);
  ASSERT_TRUE(g);
  EXPECT_TRUE(g->empty());
  inst.task.budget = 0.5;
  EXPECT_FALSE(random_feasible_group(inst.workers, inst.task, 1));
}

TEST(RandomFeasibleGroup, DeterministicPerSeed) {
  std::mt19937_64 rng(4);
  const auto inst = testing::random_instance(rng, 30, 2);
  EXPECT_EQ(random_feasible_group(inst.workers, inst.task, 77),
            random_feasible_group(inst.workers, inst.task, 77));
}

TEST(GrpParallel, SerialAndParallelAgree) {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 30; ++rep) {
    const auto inst = testing::random_instance(rng, 11, 2);
    GrpOptions serial, parallel;
    serial.exec = Exec::serial;
    parallel.exec = Exec::parallel;
    for (double alpha : distance_levels(inst.distances)) {
      EXPECT_EQ(grp_dia(inst.workers, inst.task, inst.distances, alpha, serial),
                grp_dia(inst.workers, inst.task, inst.distances, alpha, parallel));
    }
    const auto a = opt_grp(inst.workers, inst.task, inst.distances, Aggregation::Dia, serial);
    const auto b = opt_grp(inst.workers, inst.task, inst.distances, Aggregation::Dia, parallel);
    ASSERT_EQ(a.has_value(), b.has_value());
    if (a) {
      EXPECT_EQ(a->group, b->group);
      EXPECT_EQ(a->value, b->value);
    }
  }
}

}  // namespace
}  // namespace teamform
