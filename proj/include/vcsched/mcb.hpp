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

// Two-dimensional multi-capacity bin packing driven by a binary search on the
// yield.
//
// Fixing a yield y turns every task into a rigid item (y * cpu_need, mem_need).
// Items are split into a CPU-heavy list (cpu >= mem) and a memory-heavy list,
// each sorted by the variant's key. Hosts are filled one at a time: a fresh
// host takes the first fitting item of the CPU-heavy list (falling back to the
// other list); afterwards the list that counters the host's current imbalance
// is scanned first. A host is closed when neither list has a fitting item.

#ifndef VCSCHED_MCB_HPP_
#define VCSCHED_MCB_HPP_

#include <algorithm>
#include <array>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vcsched/model.hpp"
#include "vcsched/solution.hpp"

namespace vcsched {

enum class SortKey { kSum, kDiff, kRatio, kMax };
enum class SortOrder { kAscending, kDescending };

struct McbVariant {
  SortKey key = SortKey::kMax;
  SortOrder order = SortOrder::kDescending;

  // MCB1..MCB8.
  static McbVariant numbered(int n) {
    if (n < 1 || n > 8) throw std::invalid_argument("MCB variant must be 1..8");
    static constexpr std::array<SortKey, 4> keys = {SortKey::kSum, SortKey::kDiff,
                                                    SortKey::kRatio, SortKey::kMax};
    return {keys[static_cast<std::size_t>((n - 1) % 4)],
            n <= 4 ? SortOrder::kAscending : SortOrder::kDescending};
  }

  int number() const {
    return static_cast<int>(key) + 1 + (order == SortOrder::kDescending ? 4 : 0);
  }

  std::string name() const { return "mcb" + std::to_string(number()); }

  friend bool operator==(const McbVariant&, const McbVariant&) = default;
};

struct BinarySearchConfig {
  double tolerance = 1e-4;
  int max_iterations = 64;
};

inline double sort_key_value(SortKey key, double cpu, double mem) {
  const double hi = std::max(cpu, mem);
  const double lo = std::min(cpu, mem);
  switch (key) {
    case SortKey::kSum: return cpu + mem;
    case SortKey::kDiff: return hi - lo;
    case SortKey::kRatio:
      return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
    case SortKey::kMax: return hi;
  }
  return 0.0;
}

namespace detail {

struct McbList {
  std::vector<std::size_t> items;
  std::size_t next_open = 0;  // items before this index are all placed
};

}  // namespace detail

// Packs every task at demand (y * cpu_need, mem_need). Returns the per-item
// hosts (expand_tasks order) on success, nullopt when tasks remain after the
// last host.
inline std::optional<std::vector<std::size_t>> mcb_pack_hosts(
    const ProblemInstance& inst, std::span<const TaskItem> items, double y,
    const McbVariant& variant, double tol = kDefaultTolerance) {
  if (!(y >= 0.0 && y <= 1.0)) throw std::invalid_argument("yield must lie in [0, 1]");
  const std::size_t n = items.size();
  std::vector<double> cpu(n), key(n);
  for (std::size_t t = 0; t < n; ++t) {
    cpu[t] = y * items[t].cpu;
    key[t] = sort_key_value(variant.key, cpu[t], items[t].mem);
  }

  detail::McbList cpu_heavy, mem_heavy;
  for (std::size_t t = 0; t < n; ++t) {
    (cpu[t] >= items[t].mem ? cpu_heavy : mem_heavy).items.push_back(t);
  }
  const bool desc = variant.order == SortOrder::kDescending;
  auto by_key = [&](std::size_t a, std::size_t b) {
    return desc ? key[a] > key[b] : key[a] < key[b];
  };
  std::stable_sort(cpu_heavy.items.begin(), cpu_heavy.items.end(), by_key);
  std::stable_sort(mem_heavy.items.begin(), mem_heavy.items.end(), by_key);

  std::vector<std::size_t> hosts(n, kUnplaced);
  std::size_t placed = 0;

  auto take_first_fit = [&](detail::McbList& list, double cpu_left, double mem_left,
                            std::size_t host) -> std::optional<std::size_t> {
    auto& v = list.items;
    while (list.next_open < v.size() && hosts[v[list.next_open]] != kUnplaced) ++list.next_open;
    for (std::size_t p = list.next_open; p < v.size(); ++p) {
      const std::size_t t = v[p];
      if (hosts[t] != kUnplaced) continue;
      if (cpu[t] <= cpu_left + tol && items[t].mem <= mem_left + tol) {
        hosts[t] = host;
        return t;
      }
    }
    return std::nullopt;
  };

  for (std::size_t h = 0; h < inst.host_count && placed < n; ++h) {
    double cpu_left = 1.0, mem_left = 1.0;
    for (;;) {
      const bool cpu_first = cpu_left >= mem_left;
      auto& first = cpu_first ? cpu_heavy : mem_heavy;
      auto& second = cpu_first ? mem_heavy : cpu_heavy;
      auto t = take_first_fit(first, cpu_left, mem_left, h);
      if (!t) t = take_first_fit(second, cpu_left, mem_left, h);
      if (!t) break;
      cpu_left -= cpu[*t];
      mem_left -= items[*t].mem;
      ++placed;
    }
  }
  if (placed < n) return std::nullopt;
  return hosts;
}

// Allocation form of mcb_pack_hosts: each task's share is exactly y * cpu_need.
inline std::optional<Allocation> mcb_pack_at_yield(const ProblemInstance& inst, double y,
                                                   const McbVariant& variant,
                                                   double tol = kDefaultTolerance) {
  const auto items = expand_tasks(inst);
  auto hosts = mcb_pack_hosts(inst, items, y, variant, tol);
  if (!hosts) return std::nullopt;
  return allocation_at_yield(inst, items, *hosts, y);
}

struct McbProbe {
  double y;
  bool packed;
};

// Probes, in order, made by the last mcb_solve call that was given a trace.
using McbTrace = std::vector<McbProbe>;

// Binary search for the largest packable yield on [0, U], with
// U = min(1, hosts / total cpu demand). U itself is probed first; otherwise
// the search starts at U/2. Packability is not assumed monotone: the best
// packed yield among all probes is kept.
inline Solution mcb_solve(const ProblemInstance& inst, const McbVariant& variant,
                          const BinarySearchConfig& cfg = {},
                          Phase2Mode phase2 = Phase2Mode::kPerTask,
                          McbTrace* trace = nullptr, double tol = kDefaultTolerance) {
  if (!(cfg.tolerance > 0.0)) throw std::invalid_argument("binary search tolerance must be > 0");
  inst.validate();
  const auto items = expand_tasks(inst);
  Stopwatch clock;

  const double total_cpu = inst.total_cpu_demand();
  const double upper =
      total_cpu > 0.0 ? std::min(1.0, static_cast<double>(inst.host_count) / total_cpu) : 1.0;

  double best_y = 0.0;
  std::vector<std::size_t> best_hosts;
  auto probe = [&](double y) {
    auto hosts = mcb_pack_hosts(inst, items, y, variant, tol);
    const bool packed = hosts.has_value();
    if (trace) trace->push_back({y, packed});
    if (packed && (best_hosts.empty() || y > best_y)) {
      best_y = y;
      best_hosts = std::move(*hosts);
    }
    return packed;
  };

  if (!probe(upper)) {
    double lo = 0.0, hi = upper;
    double y = upper / 2.0;
    for (int it = 0; it < cfg.max_iterations && hi - lo >= cfg.tolerance; ++it) {
      if (probe(y)) {
        lo = y;
      } else {
        hi = y;
      }
      y = (lo + hi) / 2.0;
    }
  }
  const double seconds = clock.seconds();
  if (best_hosts.empty()) return failed_solution(inst, "no probed yield packs", seconds);
  return finish_placement(inst, items, best_hosts, best_y, phase2, seconds);
}

}  // namespace vcsched

#endif  // VCSCHED_MCB_HPP_
