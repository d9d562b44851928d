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

// Randomized rounding of a fractional placement (RRND), and the variant that
// gives every zero entry a small weight epsilon (RRNZ).
//
// Each task in order draws a host with probability proportional to its
// fractional weight. A drawn host without room for the task has its weight
// zeroed and the draw is repeated over the rest; that is the same as drawing
// once among the hosts that have room, which is what is done here. One uniform
// number is consumed from the primary stream per task. RRNZ splits its
// distribution into the part RRND would see and the epsilon part, and picks
// between the two with a second, independent stream, so with a shared seed it
// takes the same decisions as RRND except where the epsilon part is chosen.

#ifndef VCSCHED_ROUNDING_HPP_
#define VCSCHED_ROUNDING_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "vcsched/bounds.hpp"
#include "vcsched/model.hpp"
#include "vcsched/random.hpp"
#include "vcsched/solution.hpp"

namespace vcsched {

struct RoundingConfig {
  double epsilon = 0.01;
  std::uint64_t rng_seed = 0;
  SeedMode seed_mode = SeedMode::kSparse;
};

struct RoundingTrace {
  std::size_t epsilon_picks = 0;  // RRNZ draws that landed on a zero-weight host
  std::size_t failed_task = kUnplaced;
};

namespace detail {

// Index of the entry where the running sum of w over `candidates` passes
// target; the last candidate absorbs rounding.
inline std::size_t pick_weighted(const std::vector<std::size_t>& candidates,
                                 const std::vector<double>& w, double target) {
  double acc = 0.0;
  for (std::size_t c : candidates) {
    acc += w[c];
    if (target < acc) return c;
  }
  return candidates.back();
}

inline std::optional<std::vector<std::size_t>> round_placement(
    const ProblemInstance& inst, std::span<const TaskItem> items, const RelaxedSolution& seed,
    bool no_zero, const RoundingConfig& cfg, RoundingTrace* trace, double tol) {
  if (seed.fractional_e.size() != items.size()) {
    throw std::invalid_argument("seed solution does not cover every task");
  }
  if (no_zero && !(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
  std::mt19937_64 primary(cfg.rng_seed);
  std::mt19937_64 branch(splitmix64(cfg.rng_seed));
  std::vector<double> mem(inst.host_count, 0.0);
  std::vector<std::size_t> hosts(items.size(), kUnplaced);
  std::vector<std::size_t> positive, zero;

  for (std::size_t t = 0; t < items.size(); ++t) {
    const auto& w = seed.fractional_e[t];
    if (w.size() != inst.host_count) throw std::invalid_argument("seed row has wrong width");
    const double u = unit_draw(primary);
    positive.clear();
    zero.clear();
    double mass = 0.0;
    for (std::size_t h = 0; h < inst.host_count; ++h) {
      if (mem[h] + items[t].mem > 1.0 + tol) continue;
      if (w[h] > 0.0) {
        positive.push_back(h);
        mass += w[h];
      } else {
        zero.push_back(h);
      }
    }
    const double eps_mass = no_zero ? cfg.epsilon * static_cast<double>(zero.size()) : 0.0;
    if (mass + eps_mass <= 0.0) {
      if (trace) trace->failed_task = t;
      return std::nullopt;
    }
    std::size_t h;
    const bool use_zero = no_zero && !zero.empty() &&
                          (positive.empty() || unit_draw(branch) * (mass + eps_mass) < eps_mass);
    if (use_zero) {
      const auto idx = std::min(zero.size() - 1,
                                static_cast<std::size_t>(u * static_cast<double>(zero.size())));
      h = zero[idx];
      if (trace) ++trace->epsilon_picks;
    } else {
      h = pick_weighted(positive, w, u * mass);
    }
    hosts[t] = h;
    mem[h] += items[t].mem;
  }
  return hosts;
}

inline Solution rounding_solve(const ProblemInstance& inst, const RelaxedSolution& seed,
                               bool no_zero, const RoundingConfig& cfg, Phase2Mode phase2,
                               RoundingTrace* trace, double tol, const Stopwatch& clock) {
  const auto items = expand_tasks(inst);
  auto hosts = round_placement(inst, items, seed, no_zero, cfg, trace, tol);
  if (!hosts) {
    return failed_solution(inst, "a task fits on no host with positive weight",
                           clock.seconds());
  }
  const double y = placement_min_yield(inst, items, *hosts);
  return finish_placement(inst, items, *hosts, y, phase2, clock.seconds());
}

}  // namespace detail

inline Solution rrnd_solve(const ProblemInstance& inst, const RelaxedSolution& seed,
                           const RoundingConfig& cfg = {},
                           Phase2Mode phase2 = Phase2Mode::kPerTask,
                           RoundingTrace* trace = nullptr, double tol = kDefaultTolerance) {
  inst.validate();
  Stopwatch clock;
  return detail::rounding_solve(inst, seed, false, cfg, phase2, trace, tol, clock);
}

inline Solution rrnz_solve(const ProblemInstance& inst, const RelaxedSolution& seed,
                           const RoundingConfig& cfg = {},
                           Phase2Mode phase2 = Phase2Mode::kPerTask,
                           RoundingTrace* trace = nullptr, double tol = kDefaultTolerance) {
  inst.validate();
  Stopwatch clock;
  return detail::rounding_solve(inst, seed, true, cfg, phase2, trace, tol, clock);
}

// Builds the seed with relaxed_solution(cfg.seed_mode) inside the timed
// region. Fails when the instance has no fractional solution at all.
inline Solution rounding_solve_from_scratch(const ProblemInstance& inst, bool no_zero,
                                            const RoundingConfig& cfg = {},
                                            Phase2Mode phase2 = Phase2Mode::kPerTask,
                                            double tol = kDefaultTolerance) {
  inst.validate();
  Stopwatch clock;
  RelaxedSolution seed;
  try {
    seed = relaxed_solution(inst, cfg.seed_mode, tol);
  } catch (const RelaxedInfeasibleError& e) {
    return failed_solution(inst, e.what(), clock.seconds());
  }
  return detail::rounding_solve(inst, seed, no_zero, cfg, phase2, nullptr, tol, clock);
}

}  // namespace vcsched

#endif  // VCSCHED_ROUNDING_HPP_
