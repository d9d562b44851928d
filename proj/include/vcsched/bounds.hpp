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

// Reference solutions: the closed-form optimum of the fractional relaxation,
// explicit fractional solutions achieving it, and an exhaustive exact solver
// for small instances.

#ifndef VCSCHED_BOUNDS_HPP_
#define VCSCHED_BOUNDS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "vcsched/model.hpp"
#include "vcsched/phase2.hpp"
#include "vcsched/solution.hpp"

namespace vcsched {

// Total memory demand exceeds total memory: not even a fractional solution.
class RelaxedInfeasibleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The instance has too many placements for exhaustive search.
class TooLargeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline double relaxed_optimum(const ProblemInstance& inst, double tol = kDefaultTolerance) {
  const double hosts = static_cast<double>(inst.host_count);
  if (inst.total_mem_demand() > hosts + tol) {
    throw RelaxedInfeasibleError("total memory demand exceeds host memory");
  }
  const double cpu = inst.total_cpu_demand();
  if (cpu <= 0.0) return 1.0;
  return std::min(hosts / cpu, 1.0);
}

enum class SeedMode { kUniform, kSparse };

inline const char* to_string(SeedMode m) {
  return m == SeedMode::kUniform ? "uniform" : "sparse";
}

// Fractional placement. Rows are task items in expand_tasks() order (one row
// per job for sequential instances), columns are hosts.
struct RelaxedSolution {
  double y_opt = 0.0;
  SeedMode mode = SeedMode::kUniform;
  std::vector<std::vector<double>> fractional_e;
  std::vector<std::vector<double>> fractional_alpha;

  std::size_t nonzero_count() const {
    std::size_t n = 0;
    for (const auto& row : fractional_e) {
      n += static_cast<std::size_t>(std::count_if(row.begin(), row.end(),
                                                  [](double v) { return v > 0.0; }));
    }
    return n;
  }
};

namespace detail {

inline RelaxedSolution uniform_relaxed(const ProblemInstance& inst,
                                       const std::vector<TaskItem>& items, double y) {
  RelaxedSolution sol;
  sol.y_opt = y;
  sol.mode = SeedMode::kUniform;
  const double h = static_cast<double>(inst.host_count);
  for (const auto& it : items) {
    sol.fractional_e.emplace_back(inst.host_count, 1.0 / h);
    sol.fractional_alpha.emplace_back(inst.host_count, it.cpu * y / h);
  }
  return sol;
}

}  // namespace detail

// Uniform mode spreads every task evenly over all hosts. Sparse mode is a
// fractional first-fit: tasks in order, each poured into hosts in index order
// until its CPU share cpu*y_opt and its memory are covered, splitting where a
// host runs out of either resource. If the sweep cannot cover every task the
// uniform solution is returned instead (mode reports which one was built).
inline RelaxedSolution relaxed_solution(const ProblemInstance& inst, SeedMode mode,
                                        double tol = kDefaultTolerance) {
  const double y = relaxed_optimum(inst, tol);
  const auto items = expand_tasks(inst);
  if (mode == SeedMode::kUniform) return detail::uniform_relaxed(inst, items, y);

  RelaxedSolution sol;
  sol.y_opt = y;
  sol.mode = SeedMode::kSparse;
  std::vector<double> cpu_left(inst.host_count, 1.0);
  std::vector<double> mem_left(inst.host_count, 1.0);
  constexpr double kInf = std::numeric_limits<double>::infinity();

  for (const auto& it : items) {
    std::vector<double> e(inst.host_count, 0.0);
    const double cpu = it.cpu * y;
    double left = 1.0;
    for (std::size_t h = 0; h < inst.host_count && left > 0.0; ++h) {
      const double by_cpu = cpu > 0.0 ? cpu_left[h] / cpu : kInf;
      const double by_mem = it.mem > 0.0 ? mem_left[h] / it.mem : kInf;
      double f = std::min({left, by_cpu, by_mem});
      if (f <= tol) continue;
      if (left - f <= tol) f = left;
      e[h] = f;
      left -= f;
      cpu_left[h] = std::max(0.0, cpu_left[h] - f * cpu);
      mem_left[h] = std::max(0.0, mem_left[h] - f * it.mem);
    }
    if (left > tol) return detail::uniform_relaxed(inst, items, y);
    std::vector<double> a(inst.host_count, 0.0);
    for (std::size_t h = 0; h < inst.host_count; ++h) a[h] = e[h] * cpu;
    sol.fractional_e.push_back(std::move(e));
    sol.fractional_alpha.push_back(std::move(a));
  }
  return sol;
}

// Fractional feasibility of a relaxed solution, including that every task
// reaches y_opt.
inline bool relaxed_is_feasible(const ProblemInstance& inst, const RelaxedSolution& sol,
                                double tol = 1e-9) {
  const auto items = expand_tasks(inst);
  if (sol.fractional_e.size() != items.size() || sol.fractional_alpha.size() != items.size()) {
    return false;
  }
  std::vector<double> cpu(inst.host_count, 0.0), mem(inst.host_count, 0.0);
  for (std::size_t t = 0; t < items.size(); ++t) {
    const auto& e = sol.fractional_e[t];
    const auto& a = sol.fractional_alpha[t];
    if (e.size() != inst.host_count || a.size() != inst.host_count) return false;
    double row = 0.0, got = 0.0;
    for (std::size_t h = 0; h < inst.host_count; ++h) {
      if (e[h] < -tol || e[h] > 1.0 + tol) return false;
      if (a[h] < -tol || a[h] > e[h] + tol) return false;
      row += e[h];
      got += a[h];
      cpu[h] += a[h];
      mem[h] += e[h] * items[t].mem;
    }
    if (std::abs(row - 1.0) > tol) return false;
    if (got > items[t].cpu + tol) return false;
    if (yield_of(got, items[t].cpu) < sol.y_opt - tol) return false;
  }
  for (std::size_t h = 0; h < inst.host_count; ++h) {
    if (cpu[h] > 1.0 + tol || mem[h] > 1.0 + tol) return false;
  }
  return true;
}

struct EnumerationLimits {
  std::uint64_t max_nodes = 100'000'000;
};

namespace detail {

// Exhaustive max-min search over integral placements. Hosts are only
// interchangeable when nothing distinguishes them (no previous placement).
struct PlacementSearch {
  std::span<const TaskItem> items;
  std::size_t host_count = 1;
  bool interchangeable_hosts = true;
  // Optional migration accounting, indexed like items. kUnplaced = new task.
  std::span<const std::size_t> previous;
  std::span<const double> move_cost;
  double budget = std::numeric_limits<double>::infinity();
  double tol = kDefaultTolerance;
};

struct SearchResult {
  bool found = false;
  double y = 0.0;
  std::vector<std::size_t> hosts;  // indexed like items
  std::uint64_t nodes = 0;
};

inline void check_enumeration_size(std::size_t hosts, std::size_t tasks,
                                   const EnumerationLimits& limits) {
  double size = std::pow(static_cast<double>(hosts), static_cast<double>(tasks));
  if (size > static_cast<double>(limits.max_nodes)) {
    throw TooLargeError("instance too large for exact search: " + std::to_string(hosts) +
                        "^" + std::to_string(tasks) + " placements exceed budget " +
                        std::to_string(limits.max_nodes));
  }
}

inline SearchResult search_max_min(const PlacementSearch& p, const EnumerationLimits& limits) {
  const std::size_t n = p.items.size();
  const bool track_cost = !p.previous.empty();

  // Largest CPU demands first so the load bound bites early.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return p.items[a].cpu > p.items[b].cpu;
  });

  double total_cpu = 0.0;
  for (const auto& it : p.items) total_cpu += it.cpu;
  const double ceiling =
      total_cpu > 0.0 ? std::min(1.0, static_cast<double>(p.host_count) / total_cpu) : 1.0;

  SearchResult best;
  std::vector<double> load(p.host_count, 0.0), mem(p.host_count, 0.0);
  std::vector<std::size_t> current(n, kUnplaced);
  bool done = false;

  auto ub_of = [](double max_load) { return max_load > 1.0 ? 1.0 / max_load : 1.0; };

  std::function<void(std::size_t, std::size_t, double, double)> dfs =
      [&](std::size_t depth, std::size_t opened, double max_load, double cost) {
        if (done) return;
        if (depth == n) {
          const double y = ub_of(max_load);
          if (!best.found || y > best.y) {
            best.found = true;
            best.y = y;
            best.hosts = current;
            if (y >= ceiling - 1e-15) done = true;
          }
          return;
        }
        const std::size_t t = order[depth];
        const auto& it = p.items[t];
        const std::size_t limit =
            p.interchangeable_hosts ? std::min(p.host_count, opened + 1) : p.host_count;
        for (std::size_t h = 0; h < limit && !done; ++h) {
          if (++best.nodes > limits.max_nodes) {
            throw TooLargeError("exact search exceeded node budget " +
                                std::to_string(limits.max_nodes));
          }
          if (mem[h] + it.mem > 1.0 + p.tol) continue;
          double next_cost = cost;
          if (track_cost && p.previous[t] != kUnplaced && p.previous[t] != h) {
            next_cost += p.move_cost[t];
            if (next_cost > p.budget + p.tol) continue;
          }
          const double next_max = std::max(max_load, load[h] + it.cpu);
          if (best.found && ub_of(next_max) <= best.y) continue;
          load[h] += it.cpu;
          mem[h] += it.mem;
          current[t] = h;
          dfs(depth + 1, std::max(opened, h + 1), next_max, next_cost);
          current[t] = kUnplaced;
          load[h] -= it.cpu;
          mem[h] -= it.mem;
        }
      };
  dfs(0, 0, 0.0, 0.0);
  return best;
}

}  // namespace detail

// Exhaustive exact solver for small instances. Every memory-feasible placement
// is considered (up to host symmetry and bound pruning); its best minimum yield
// is min(1, 1/max host load). Throws TooLargeError when
// host_count^total_tasks exceeds the node budget.
inline Solution exact_solve(const ProblemInstance& inst, const EnumerationLimits& limits = {},
                            Phase2Mode phase2 = Phase2Mode::kPerTask) {
  inst.validate();
  const auto items = expand_tasks(inst);
  detail::check_enumeration_size(inst.host_count, items.size(), limits);
  Stopwatch clock;
  detail::PlacementSearch p;
  p.items = items;
  p.host_count = inst.host_count;
  const auto res = detail::search_max_min(p, limits);
  const double seconds = clock.seconds();
  if (!res.found) return failed_solution(inst, "no memory-feasible placement", seconds);
  auto s = finish_placement(inst, items, res.hosts, res.y, phase2, seconds);
  s.outcome.message = "nodes=" + std::to_string(res.nodes);
  return s;
}

}  // namespace vcsched

#endif  // VCSCHED_BOUNDS_HPP_
