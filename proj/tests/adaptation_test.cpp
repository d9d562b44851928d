// Copyright 2026 The vcsched Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "test_util.hpp"
#include "vcsched/vcsched.hpp"

namespace vcsched {
namespace {

using testing::make_allocation;
using testing::make_instance;

AdaptationInstance three_job_case(double budget) {
  AdaptationInstance a;
  a.inst = make_instance(2, {{0.9, 0.1}, {0.9, 0.1}, {0.2, 0.1}});
  a.previous = {{0}, {0}, {1}};
  a.budget = budget;
  return a;
}

// Brute-force optimum restricted to assignments within the budget.
std::optional<double> oracle_adapt(const AdaptationInstance& a) {
  const auto tasks = oracle::tasks_of(a.inst);
  std::vector<std::size_t> prev;
  for (const auto& job : a.previous) {
    for (std::size_t h : job) prev.push_back(h);
  }
  return oracle::max_min_yield(a.inst, [&](const std::vector<std::size_t>& hosts) {
    double cost = 0.0;
    for (std::size_t t = 0; t < hosts.size(); ++t) {
      if (prev[t] != kUnplaced && prev[t] != hosts[t]) cost += move_cost(a, tasks[t].job);
    }
    return cost <= a.budget + 1e-9;
  });
}

TEST(MigrationCost, Basics) {
  auto a = three_job_case(0.0);
  EXPECT_DOUBLE_EQ(migration_cost(a, make_allocation({0, 0, 1}, {0.5, 0.5, 0.2})), 0.0);
  a.inst.jobs[1].mem_need = 0.3;
  EXPECT_DOUBLE_EQ(migration_cost(a, make_allocation({0, 1, 1}, {0.5, 0.5, 0.2})), 0.3);
  auto fresh = AdaptationInstance::all_new(a.inst);
  EXPECT_DOUBLE_EQ(migration_cost(fresh, make_allocation({1, 1, 0}, {0.5, 0.5, 0.2})), 0.0);
  a.mode = BudgetMode::kCount;
  EXPECT_DOUBLE_EQ(migration_cost(a, make_allocation({1, 1, 0}, {0.5, 0.5, 0.2})), 3.0);
}

TEST(MigrationCost, BudgetFromBytes) {
  EXPECT_DOUBLE_EQ(budget_from_bytes(2e9, 8e9), 0.25);
  EXPECT_THROW(budget_from_bytes(1.0, 0.0), std::invalid_argument);
}

TEST(ExactAdapt, ZeroBudgetKeepsPlacement) {
  auto a = three_job_case(0.0);
  auto s = exact_adapt_solve(a, {}, Phase2Mode::kOff);
  ASSERT_TRUE(s.outcome.success);
  EXPECT_EQ(placement_of(a.inst, s.allocation), (std::vector<std::size_t>{0, 0, 1}));
  EXPECT_NEAR(s.outcome.min_yield, 1.0 / 1.8, 1e-12);
}

TEST(ExactAdapt, SingleMoveWithinBudget) {
  auto a = three_job_case(0.1);
  auto s = exact_adapt_solve(a);
  ASSERT_TRUE(s.outcome.success);
  EXPECT_NEAR(s.outcome.min_yield, *oracle_adapt(a), 1e-12);
  EXPECT_NEAR(s.outcome.min_yield, 1.0 / 1.1, 1e-12);
  EXPECT_LE(migration_cost(a, s.allocation), 0.1 + 1e-12);
  EXPECT_EQ(placement_of(a.inst, s.allocation), (std::vector<std::size_t>{0, 1, 1}));
}

TEST(ExactAdapt, LargeBudgetMatchesExact) {
  auto a = three_job_case(0.3);
  EXPECT_NEAR(exact_adapt_solve(a).outcome.min_yield, exact_solve(a.inst).outcome.min_yield, 1e-12);
}

TEST(ExactAdapt, NewTasksMoveFreely) {
  auto a = three_job_case(0.0);
  a.previous[2][0] = kUnplaced;
  a.previous[1][0] = kUnplaced;
  auto s = exact_adapt_solve(a, {}, Phase2Mode::kOff);
  ASSERT_TRUE(s.outcome.success);
  EXPECT_EQ(s.allocation.jobs[0][0].host, 0u);
  EXPECT_NEAR(s.outcome.min_yield, 1.0 / 1.1, 1e-12);
}

TEST(ExactAdapt, NoAdmissiblePlacementFails) {
  AdaptationInstance a;
  a.inst = make_instance(2, {{0.2, 0.6}, {0.2, 0.6}});
  a.previous = {{0}, {0}};
  a.budget = 0.0;
  EXPECT_FALSE(exact_adapt_solve(a).outcome.success);
  a.budget = 0.6;
  EXPECT_TRUE(exact_adapt_solve(a).outcome.success);
}

TEST(ExactAdapt, StructuralChecks) {
  auto a = three_job_case(0.1);
  a.previous[0][0] = 5;
  EXPECT_THROW(exact_adapt_solve(a), StructuralError);
  a = three_job_case(-1.0);
  EXPECT_THROW(exact_adapt_solve(a), std::invalid_argument);
}

AdaptationInstance random_adaptation(std::mt19937_64& rng) {
  AdaptationInstance a;
  a.inst = testing::random_small_instance(rng, 3, 7, true);
  std::uniform_int_distribution<std::size_t> host(0, a.inst.host_count - 1);
  std::bernoulli_distribution fresh(0.15);
  for (const auto& j : a.inst.jobs) {
    std::vector<std::size_t> prev;
    for (std::size_t k = 0; k < j.task_count; ++k) prev.push_back(fresh(rng) ? kUnplaced : host(rng));
    a.previous.push_back(prev);
  }
  return a;
}

TEST(ExactAdaptProperty, MatchesBudgetedOracleAndIsMonotone) {
  std::mt19937_64 rng(71);
  for (int rep = 0; rep < 100; ++rep) {
    auto a = random_adaptation(rng);
    const double total = a.inst.total_mem_demand();
    std::optional<double> last;
    for (double f : {0.0, 0.2, 0.4, 0.7, 1.0}) {
      a.budget = f * total;
      auto s = exact_adapt_solve(a);
      auto o = oracle_adapt(a);
      ASSERT_EQ(s.outcome.success, o.has_value()) << "rep " << rep << " f " << f;
      if (!o) continue;
      EXPECT_NEAR(s.outcome.min_yield, *o, 1e-9);
      EXPECT_LE(migration_cost(a, s.allocation), a.budget + 1e-9);
      EXPECT_TRUE(check_feasible(a.inst, s.allocation).empty());
      if (last) {
        EXPECT_GE(s.outcome.min_yield, *last - 1e-12);
      }
      last = s.outcome.min_yield;
    }
    auto ex = exact_solve(a.inst);
    ASSERT_EQ(ex.outcome.success, last.has_value());
    if (last) {
      EXPECT_NEAR(*last, ex.outcome.min_yield, 1e-12);
    }
  }
}

}  // namespace
}  // namespace vcsched
