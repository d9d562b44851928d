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

// Test-only brute-force references. None of these share code paths with the
// solvers they check: plain odometer enumeration, no pruning, no symmetry.

#ifndef VCSCHED_TESTS_ORACLES_HPP_
#define VCSCHED_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "vcsched/model.hpp"

namespace vcsched::oracle {

struct Task {
  std::size_t job;
  double cpu;
  double mem;
};

inline std::vector<Task> tasks_of(const ProblemInstance& inst) {
  std::vector<Task> out;
  for (std::size_t i = 0; i < inst.jobs.size(); ++i) {
    for (std::size_t k = 0; k < inst.jobs[i].task_count; ++k) {
      out.push_back({i, inst.jobs[i].cpu_need, inst.jobs[i].mem_need});
    }
  }
  return out;
}

// Visits every assignment of n tasks to h hosts (h^n of them).
inline void for_each_assignment(std::size_t n, std::size_t h,
                                const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> a(n, 0);
  for (;;) {
    f(a);
    std::size_t d = 0;
    while (d < n && ++a[d] == h) a[d++] = 0;
    if (d == n) return;
  }
}

// Max over memory-feasible assignments of min(1, 1/max load), optionally
// restricted by an extra predicate. nullopt when nothing is feasible.
inline std::optional<double> max_min_yield(
    const ProblemInstance& inst,
    const std::function<bool(const std::vector<std::size_t>&)>& admissible = nullptr) {
  const auto tasks = tasks_of(inst);
  std::optional<double> best;
  for_each_assignment(tasks.size(), inst.host_count, [&](const std::vector<std::size_t>& a) {
    std::vector<double> load(inst.host_count, 0.0), mem(inst.host_count, 0.0);
    for (std::size_t t = 0; t < tasks.size(); ++t) {
      load[a[t]] += tasks[t].cpu;
      mem[a[t]] += tasks[t].mem;
    }
    for (double m : mem) {
      if (m > 1.0 + 1e-9) return;
    }
    if (admissible && !admissible(a)) return;
    double y = 1.0;
    for (double l : load) {
      if (l > 0.0) y = std::min(y, 1.0 / l);
    }
    if (!best || y > *best) best = y;
  });
  return best;
}

// Best average of share/need over the tasks of a single host when each share
// lies in [floor*need, need] and shares sum to at most 1. Enumerates LP
// vertices: every task at a bound except possibly one that absorbs the rest.
inline double host_best_yield_sum(const std::vector<double>& needs, double floor_y) {
  const std::size_t n = needs.size();
  double best = -1.0;
  // state: 0 = at lower bound, 1 = at upper bound, 2 = free
  std::vector<int> s(n, 0);
  for (;;) {
    std::size_t free_count = 0, free_idx = 0;
    double used = 0.0, value = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (s[i] == 2) {
        ++free_count;
        free_idx = i;
      } else {
        const double share = s[i] == 0 ? floor_y * needs[i] : needs[i];
        used += share;
        value += needs[i] > 0.0 ? share / needs[i] : 1.0;
      }
    }
    if (free_count <= 1) {
      bool ok = true;
      if (free_count == 1) {
        const double share = 1.0 - used;
        const double need = needs[free_idx];
        if (share < floor_y * need - 1e-12 || share > need + 1e-12) ok = false;
        value += need > 0.0 ? share / need : 1.0;
        used += share;
      }
      if (ok && used <= 1.0 + 1e-12) best = std::max(best, value);
    }
    std::size_t d = 0;
    while (d < n && ++s[d] == 3) s[d++] = 0;
    if (d == n) break;
  }
  return best;
}

// Optimal per-task average yield for a fixed placement (hosts indexed like
// tasks_of(inst)) with every task kept at or above floor_y.
inline double best_avg_task_yield(const ProblemInstance& inst,
                                  const std::vector<std::size_t>& hosts, double floor_y) {
  const auto tasks = tasks_of(inst);
  std::vector<std::vector<double>> needs(inst.host_count);
  for (std::size_t t = 0; t < tasks.size(); ++t) needs[hosts[t]].push_back(tasks[t].cpu);
  double total = 0.0;
  for (const auto& n : needs) {
    if (!n.empty()) total += host_best_yield_sum(n, floor_y);
  }
  return total / static_cast<double>(tasks.size());
}

}  // namespace vcsched::oracle

#endif  // VCSCHED_TESTS_ORACLES_HPP_
