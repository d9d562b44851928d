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

// Average-yield maximization with placements frozen. Both variants start every
// task at cpu_need * floor_y, so the minimum yield found by the first phase is
// never lost, and hand out leftover host CPU afterwards.

#ifndef VCSCHED_PHASE2_HPP_
#define VCSCHED_PHASE2_HPP_

#include <algorithm>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "vcsched/model.hpp"

namespace vcsched {

enum class Phase2Mode { kOff, kPerTask, kPerJob };

inline const char* to_string(Phase2Mode m) {
  switch (m) {
    case Phase2Mode::kOff: return "off";
    case Phase2Mode::kPerTask: return "per-task";
    case Phase2Mode::kPerJob: return "per-job";
  }
  return "unknown";
}

inline Phase2Mode parse_phase2_mode(const std::string& s) {
  if (s == "off") return Phase2Mode::kOff;
  if (s == "per-task") return Phase2Mode::kPerTask;
  if (s == "per-job") return Phase2Mode::kPerJob;
  throw std::invalid_argument("unknown phase-2 mode: " + s);
}

namespace detail {

// Same placement, every share reset to cpu_need * floor_y. Throws if that
// starting point is infeasible.
inline Allocation floor_allocation(const ProblemInstance& inst, const Allocation& alloc,
                                   double floor_y, double tol) {
  if (!(floor_y >= 0.0 && floor_y <= 1.0 + tol)) {
    throw std::invalid_argument("phase 2 floor yield must lie in [0, 1]");
  }
  floor_y = std::min(floor_y, 1.0);
  check_structure(inst, alloc);
  Allocation out = Allocation::unplaced_for(inst);
  for (std::size_t i = 0; i < inst.jobs.size(); ++i) {
    for (std::size_t k = 0; k < alloc.jobs[i].size(); ++k) {
      out.jobs[i][k] = {alloc.jobs[i][k].host, inst.jobs[i].cpu_need * floor_y};
    }
  }
  const auto violations = check_feasible(inst, out, tol);
  if (!violations.empty()) {
    throw std::invalid_argument("phase 2 input infeasible at floor yield: " +
                                violations.front().describe());
  }
  return out;
}

}  // namespace detail

// For each host, tasks are raised to their full need in ascending cpu_need
// order (ties by job, then task index) until the host runs out of CPU.
inline Allocation maximize_avg_yield_per_task(const ProblemInstance& inst,
                                              const Allocation& alloc, double floor_y,
                                              double tol = kDefaultTolerance) {
  Allocation out = detail::floor_allocation(inst, alloc, floor_y, tol);

  struct Ref {
    std::size_t job, task;
  };
  std::vector<std::vector<Ref>> by_host(inst.host_count);
  std::vector<double> used(inst.host_count, 0.0);
  for (std::size_t i = 0; i < inst.jobs.size(); ++i) {
    for (std::size_t k = 0; k < out.jobs[i].size(); ++k) {
      const auto& slot = out.jobs[i][k];
      by_host[slot.host].push_back({i, k});
      used[slot.host] += slot.share;
    }
  }
  for (std::size_t h = 0; h < inst.host_count; ++h) {
    auto& refs = by_host[h];
    std::stable_sort(refs.begin(), refs.end(), [&](const Ref& a, const Ref& b) {
      return inst.jobs[a.job].cpu_need < inst.jobs[b.job].cpu_need;
    });
    double remaining = std::max(0.0, 1.0 - used[h]);
    for (const auto& r : refs) {
      if (remaining <= 0.0) break;
      auto& share = out.jobs[r.job][r.task].share;
      const double raise = std::min(inst.jobs[r.job].cpu_need - share, remaining);
      if (raise <= 0.0) continue;
      share += raise;
      remaining -= raise;
    }
  }
  return out;
}

// Water-filling on whole jobs: repeatedly take the unsaturated job with the
// smallest total demand task_count * cpu_need that can still grow on every
// host it touches, and raise all its tasks together until it saturates or one
// of those hosts fills. Stops when no job can be raised.
inline Allocation maximize_avg_yield_per_job(const ProblemInstance& inst,
                                             const Allocation& alloc, double floor_y,
                                             double tol = kDefaultTolerance) {
  Allocation out = detail::floor_allocation(inst, alloc, floor_y, tol);
  const std::size_t n_jobs = inst.jobs.size();

  std::vector<double> remaining(inst.host_count, 1.0);
  // touched[i] holds (host, number of tasks of job i on that host).
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> touched(n_jobs);
  for (std::size_t i = 0; i < n_jobs; ++i) {
    for (const auto& slot : out.jobs[i]) {
      remaining[slot.host] -= slot.share;
      auto it = std::find_if(touched[i].begin(), touched[i].end(),
                             [&](const auto& p) { return p.first == slot.host; });
      if (it == touched[i].end()) {
        touched[i].emplace_back(slot.host, 1);
      } else {
        ++it->second;
      }
    }
  }

  std::vector<std::size_t> order(n_jobs);
  for (std::size_t i = 0; i < n_jobs; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return static_cast<double>(inst.jobs[a].task_count) * inst.jobs[a].cpu_need <
           static_cast<double>(inst.jobs[b].task_count) * inst.jobs[b].cpu_need;
  });

  std::vector<bool> saturated(n_jobs, false);
  for (std::size_t i = 0; i < n_jobs; ++i) {
    if (out.jobs[i].empty() || inst.jobs[i].cpu_need - out.jobs[i].front().share <= tol) {
      saturated[i] = true;
    }
  }

  for (;;) {
    std::size_t pick = kUnplaced;
    double step = 0.0;
    for (std::size_t i : order) {
      if (saturated[i]) continue;
      double d = inst.jobs[i].cpu_need - out.jobs[i].front().share;
      for (const auto& [h, count] : touched[i]) {
        d = std::min(d, remaining[h] / static_cast<double>(count));
      }
      if (d > tol) {
        pick = i;
        step = d;
        break;
      }
    }
    if (pick == kUnplaced) break;

    for (auto& slot : out.jobs[pick]) slot.share += step;
    for (const auto& [h, count] : touched[pick]) {
      remaining[h] -= step * static_cast<double>(count);
    }
    if (inst.jobs[pick].cpu_need - out.jobs[pick].front().share <= tol) saturated[pick] = true;
  }
  return out;
}

inline Allocation apply_phase2(const ProblemInstance& inst, const Allocation& alloc,
                               double floor_y, Phase2Mode mode,
                               double tol = kDefaultTolerance) {
  switch (mode) {
    case Phase2Mode::kOff: return alloc;
    case Phase2Mode::kPerTask: return maximize_avg_yield_per_task(inst, alloc, floor_y, tol);
    case Phase2Mode::kPerJob: return maximize_avg_yield_per_job(inst, alloc, floor_y, tol);
  }
  return alloc;
}

}  // namespace vcsched

#endif  // VCSCHED_PHASE2_HPP_
