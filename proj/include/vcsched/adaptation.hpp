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

// Schedule adaptation under a migration budget. Tasks that already run keep
// their previous host unless moving them fits in the budget; new tasks are
// free to go anywhere and cost nothing.

#ifndef VCSCHED_ADAPTATION_HPP_
#define VCSCHED_ADAPTATION_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "vcsched/bounds.hpp"
#include "vcsched/model.hpp"
#include "vcsched/solution.hpp"

namespace vcsched {

// kMemory: a move costs the task's mem_need (host-memory fractions).
// kCount: a move costs 1, so the budget bounds the number of migrations.
enum class BudgetMode { kMemory, kCount };

struct AdaptationInstance {
  ProblemInstance inst;
  // [job][task] -> previous host, or kUnplaced for a newly arrived task.
  std::vector<std::vector<std::size_t>> previous;
  double budget = 0.0;
  BudgetMode mode = BudgetMode::kMemory;

  static AdaptationInstance all_new(ProblemInstance inst, double budget = 0.0) {
    AdaptationInstance a;
    for (const auto& j : inst.jobs) a.previous.emplace_back(j.task_count, kUnplaced);
    a.inst = std::move(inst);
    a.budget = budget;
    return a;
  }

  void validate() const {
    inst.validate();
    if (!(budget >= 0.0)) throw std::invalid_argument("migration budget must be >= 0");
    if (previous.size() != inst.jobs.size()) {
      throw StructuralError("previous placement does not list every job");
    }
    for (std::size_t i = 0; i < previous.size(); ++i) {
      if (previous[i].size() != inst.jobs[i].task_count) {
        throw StructuralError("previous placement of job " + std::to_string(i) +
                              " does not list every task");
      }
      for (std::size_t h : previous[i]) {
        if (h != kUnplaced && h >= inst.host_count) {
          throw StructuralError("previous placement references host " + std::to_string(h));
        }
      }
    }
  }
};

// Converts a byte budget to host-memory fractions.
inline double budget_from_bytes(double bytes, double host_mem_bytes) {
  if (!(host_mem_bytes > 0.0)) throw std::invalid_argument("host memory size must be > 0");
  return bytes / host_mem_bytes;
}

inline double move_cost(const AdaptationInstance& a, std::size_t job) {
  return a.mode == BudgetMode::kCount ? 1.0 : a.inst.jobs[job].mem_need;
}

inline double migration_cost(const AdaptationInstance& a, const Allocation& alloc) {
  a.validate();
  check_structure(a.inst, alloc);
  double cost = 0.0;
  for (std::size_t i = 0; i < a.previous.size(); ++i) {
    for (std::size_t k = 0; k < a.previous[i].size() && k < alloc.jobs[i].size(); ++k) {
      const std::size_t before = a.previous[i][k];
      const std::size_t now = alloc.jobs[i][k].host;
      if (before != kUnplaced && now != kUnplaced && now != before) cost += move_cost(a, i);
    }
  }
  return cost;
}

// Exhaustive search over placements that are memory-feasible and whose
// migration cost stays within the budget, maximizing the minimum yield.
inline Solution exact_adapt_solve(const AdaptationInstance& a,
                                  const EnumerationLimits& limits = {},
                                  Phase2Mode phase2 = Phase2Mode::kPerTask) {
  a.validate();
  const auto items = expand_tasks(a.inst);
  detail::check_enumeration_size(a.inst.host_count, items.size(), limits);
  Stopwatch clock;

  std::vector<std::size_t> previous;
  std::vector<double> cost;
  previous.reserve(items.size());
  cost.reserve(items.size());
  for (const auto& it : items) {
    previous.push_back(a.previous[it.job][it.task]);
    cost.push_back(move_cost(a, it.job));
  }
  bool any_previous = false;
  for (std::size_t h : previous) any_previous = any_previous || h != kUnplaced;

  detail::PlacementSearch p;
  p.items = items;
  p.host_count = a.inst.host_count;
  p.interchangeable_hosts = !any_previous;
  p.previous = previous;
  p.move_cost = cost;
  p.budget = a.budget;
  const auto res = detail::search_max_min(p, limits);
  const double seconds = clock.seconds();
  if (!res.found) {
    return failed_solution(a.inst, "no placement within memory and migration budget", seconds);
  }
  auto s = finish_placement(a.inst, items, res.hosts, res.y, phase2, seconds);
  s.outcome.message = "nodes=" + std::to_string(res.nodes);
  return s;
}

}  // namespace vcsched

#endif  // VCSCHED_ADAPTATION_HPP_
