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

// Greedy placement: GR, SG (memory-sorted), GB (backtracking) and SGB.
//
// Each task goes to the least-loaded host whose memory admits it, where load
// is the sum of cpu_need of what the host already holds. With backtracking the
// ranked host list becomes a depth-first search, bounded by a total number of
// (task, host) admission tests.

#ifndef VCSCHED_GREEDY_HPP_
#define VCSCHED_GREEDY_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "vcsched/model.hpp"
#include "vcsched/solution.hpp"

namespace vcsched {

struct GreedyConfig {
  bool sort_by_memory_desc = false;
  bool backtracking = false;
  std::uint64_t max_placement_attempts = 500'000;

  static GreedyConfig gr() { return {false, false}; }
  static GreedyConfig sg() { return {true, false}; }
  static GreedyConfig gb() { return {false, true}; }
  static GreedyConfig sgb() { return {true, true}; }
};

namespace detail {

class GreedyPlacer {
 public:
  GreedyPlacer(std::span<const TaskItem> items, std::size_t host_count,
               const GreedyConfig& cfg, double tol)
      : items_(items), cfg_(cfg), tol_(tol), load_(host_count, 0.0), mem_(host_count, 0.0),
        hosts_(items.size(), kUnplaced) {
    order_.resize(items.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    if (cfg.sort_by_memory_desc) {
      std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
        return items_[a].mem > items_[b].mem;
      });
    }
  }

  bool run() {
    if (cfg_.backtracking) return place_from(0);
    for (std::size_t t : order_) {
      const std::size_t h = first_admissible(t);
      if (h == kUnplaced) return false;
      assign(t, h);
    }
    return true;
  }

  const std::vector<std::size_t>& hosts() const { return hosts_; }
  std::uint64_t attempts() const { return attempts_; }
  bool exhausted() const { return exhausted_; }

 private:
  std::vector<std::size_t> ranked_hosts() const {
    std::vector<std::size_t> r(load_.size());
    std::iota(r.begin(), r.end(), std::size_t{0});
    std::stable_sort(r.begin(), r.end(),
                     [&](std::size_t a, std::size_t b) { return load_[a] < load_[b]; });
    return r;
  }

  // One admission test; false once the attempt bound is spent.
  bool admits(std::size_t t, std::size_t h) {
    if (attempts_ >= cfg_.max_placement_attempts) {
      exhausted_ = true;
      return false;
    }
    ++attempts_;
    return mem_[h] + items_[t].mem <= 1.0 + tol_;
  }

  std::size_t first_admissible(std::size_t t) {
    for (std::size_t h : ranked_hosts()) {
      if (admits(t, h)) return h;
      if (exhausted_) break;
    }
    return kUnplaced;
  }

  void assign(std::size_t t, std::size_t h) {
    hosts_[t] = h;
    load_[h] += items_[t].cpu;
    mem_[h] += items_[t].mem;
  }

  void unassign(std::size_t t) {
    const std::size_t h = hosts_[t];
    load_[h] -= items_[t].cpu;
    mem_[h] -= items_[t].mem;
    hosts_[t] = kUnplaced;
  }

  bool place_from(std::size_t depth) {
    if (depth == order_.size()) return true;
    const std::size_t t = order_[depth];
    for (std::size_t h : ranked_hosts()) {
      if (!admits(t, h)) {
        if (exhausted_) return false;
        continue;
      }
      assign(t, h);
      if (place_from(depth + 1)) return true;
      unassign(t);
      if (exhausted_) return false;
    }
    return false;
  }

  std::span<const TaskItem> items_;
  GreedyConfig cfg_;
  double tol_;
  std::vector<double> load_;
  std::vector<double> mem_;
  std::vector<std::size_t> hosts_;
  std::vector<std::size_t> order_;
  std::uint64_t attempts_ = 0;
  bool exhausted_ = false;
};

}  // namespace detail

inline Solution greedy_solve(const ProblemInstance& inst, const GreedyConfig& cfg = {},
                             Phase2Mode phase2 = Phase2Mode::kPerTask,
                             double tol = kDefaultTolerance) {
  if (cfg.max_placement_attempts < 1) {
    throw std::invalid_argument("max_placement_attempts must be at least 1");
  }
  inst.validate();
  const auto items = expand_tasks(inst);
  Stopwatch clock;
  detail::GreedyPlacer placer(items, inst.host_count, cfg, tol);
  const bool ok = placer.run();
  double y = 0.0;
  if (ok) y = placement_min_yield(inst, items, placer.hosts());
  const double seconds = clock.seconds();
  if (!ok) {
    return failed_solution(inst,
                           placer.exhausted() ? "placement attempt bound exhausted"
                                              : "no host admits a task",
                           seconds);
  }
  auto s = finish_placement(inst, items, placer.hosts(), y, phase2, seconds);
  s.outcome.message = "attempts=" + std::to_string(placer.attempts());
  return s;
}

}  // namespace vcsched

#endif  // VCSCHED_GREEDY_HPP_
