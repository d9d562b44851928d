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

// Parallel jobs. The min-yield solvers work on the task-level view from
// expand_tasks(); every task of job i gets y * cpu_need at a common y, so the
// tasks of a job come out uniform without extra constraints.

#ifndef VCSCHED_PARALLEL_HPP_
#define VCSCHED_PARALLEL_HPP_

#include <algorithm>
#include <cstddef>

#include "vcsched/model.hpp"

namespace vcsched {

// Lowers every task of a multi-task job to the job's smallest task share.
inline Allocation enforce_uniformity(const ProblemInstance& inst, Allocation alloc) {
  check_structure(inst, alloc);
  for (auto& tasks : alloc.jobs) {
    if (tasks.size() < 2) continue;
    double lowest = tasks.front().share;
    for (const auto& t : tasks) lowest = std::min(lowest, t.share);
    for (auto& t : tasks) t.share = lowest;
  }
  return alloc;
}

// True when every multi-task job's shares agree within tol.
inline bool is_uniform(const Allocation& alloc, double tol = kDefaultTolerance) {
  for (const auto& tasks : alloc.jobs) {
    for (const auto& t : tasks) {
      if (std::abs(t.share - tasks.front().share) > tol) return false;
    }
  }
  return true;
}

}  // namespace vcsched

#endif  // VCSCHED_PARALLEL_HPP_
