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

#include <random>

#include "support.hpp"
#include "teamform/model.hpp"

namespace teamform {
namespace {

using testing::table_instance;

TEST(ValidateInstance, TableInstanceIsValid) {
  EXPECT_TRUE(validate_instance(table_instance()).empty());
}

TEST(ValidateInstance, ReportsOneAsymmetry) {
  auto inst = table_instance();
  inst.distances.at(0, 1) = 0.5;
  inst.distances.at(1, 0) = 0.6;
  const auto problems = validate_instance(inst);
  ASSERT_EQ(problems.size(), 1U);
  EXPECT_NE(problems[0].find("symmetric"), std::string::npos);
}

TEST(ValidateInstance, ReportsNonzeroDiagonal) {
  auto inst = table_instance();
  inst.distances.at(2, 2) = 0.1;
  const auto problems = validate_instance(inst);
  ASSERT_EQ(problems.size(), 1U);
  EXPECT_NE(problems[0].find("diagonal"), std::string::npos);
}

TEST(ValidateInstance, EmptyPoolWithOneDomainIsLegal) {
  Task t;
  t.thresholds = {0.5};
  EXPECT_TRUE(validate_instance({}, t, DistanceMatrix{}).empty());
}

TEST(ValidateInstance, CatchesShapeAndSignProblems) {
  auto inst = table_instance();
  inst.workers[1].skills.pop_back();
  inst.workers[2].wage = -1.0;
  inst.task.budget = -0.5;
  inst.distances.set_symmetric(0, 5, 1.5);
  const auto problems = validate_instance(inst);
  EXPECT_EQ(problems.size(), 5U);  // skill count, wage, budget, two out-of-range entries
}

TEST(ValidateInstance, SizeMismatch) {
  auto inst = table_instance();
  inst.workers.pop_back();
  EXPECT_EQ(validate_instance(inst).size(), 1U);
}

TEST(DistanceMatrix, RaggedRowsRejected) {
  EXPECT_THROW(DistanceMatrix::from_rows({{0.0, 1.0}, {1.0}}), InputError);
}

TEST(DistanceMatrix, SubmatrixKeepsRequestedOrder) {
  const auto d = table_instance().distances;
  const std::vector<WorkerId> ids{4, 0};
  const auto s = d.submatrix(ids);
  ASSERT_EQ(s.size(), 2U);
  EXPECT_DOUBLE_EQ(s(0, 1), 0.85);
  EXPECT_DOUBLE_EQ(s(0, 0), 0.0);
}

TEST(CheckFeasibility, TableAssemblyIsFeasible) {
  const auto inst = table_instance();
  const auto a = make_assembly({{0, 1, 3}, {2, 5}});
  EXPECT_EQ(a.group, (Group{0, 1, 2, 3, 5}));
  const auto f = check_feasibility(a, inst.workers, inst.task);
  EXPECT_TRUE(f.all());
  EXPECT_EQ(f.skill, (std::vector<bool>{true, true, true}));
}

TEST(CheckFeasibility, CostExactlyAtBudgetPasses) {
  const auto inst = table_instance();
  // 0.4 + 0.3 + 0.7 + 0.8 + 0.8 sums to 3.0 only up to rounding.
  const auto f = check_feasibility(make_assembly({{0, 1, 2, 3, 5}}), inst.workers, inst.task);
  EXPECT_TRUE(f.cost);
  EXPECT_FALSE(f.mass);
}

TEST(CheckFeasibility, VacuousTask) {
  Task t;
  t.thresholds = {0.0, 0.0, 0.0};
  t.budget = 0.0;
  t.critical_mass = 1;
  const auto f = check_feasibility(Assembly{}, table_instance().workers, t);
  EXPECT_TRUE(f.all());
}

TEST(CheckFeasibility, SkillShortfallOnFirstDomain) {
  const auto inst = table_instance();
  const auto f = check_feasibility(make_assembly({{0, 2, 3, 5}}), inst.workers, inst.task);
  EXPECT_FALSE(f.skill[0]);
}

TEST(CheckFeasibility, OutOfRangeIdThrows) {
  const auto inst = table_instance();
  EXPECT_THROW(check_feasibility(make_assembly({{0, 9}}), inst.workers, inst.task), InputError);
  Assembly bad;
  bad.group = {0};
  bad.subgroups = {{0, 7}};
  EXPECT_THROW(check_feasibility(bad, inst.workers, inst.task), InputError);
}

TEST(CheckFeasibility, SkillMonotoneAndCostAntitone) {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 50; ++rep) {
    const auto inst = testing::random_instance(rng, 8, 2);
    std::uniform_int_distribution<std::uint32_t> mask(0, 255);
    const auto bits = mask(rng);
    Group g;
    for (WorkerId i = 0; i < 8; ++i)
      if (bits >> i & 1U) g.push_back(i);
    const auto before = check_feasibility(make_assembly({g}), inst.workers, inst.task);
    for (WorkerId extra = 0; extra < 8; ++extra) {
      if (std::ranges::find(g, extra) != g.end()) continue;
      Group h = g;
      h.push_back(extra);
      normalize(h);
      const auto after = check_feasibility(make_assembly({h}), inst.workers, inst.task);
      for (std::size_t i = 0; i < before.skill.size(); ++i) {
        if (before.skill[i]) EXPECT_TRUE(after.skill[i]);
      }
      if (!before.cost) EXPECT_FALSE(after.cost);
    }
  }
}

TEST(Normalize, SortsAndDeduplicates) {
  Group g{5, 1, 3, 1, 5};
  normalize(g);
  EXPECT_EQ(g, (Group{1, 3, 5}));
}

}  // namespace
}  // namespace teamform
