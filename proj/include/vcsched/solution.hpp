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

#ifndef VCSCHED_SOLUTION_HPP_
#define VCSCHED_SOLUTION_HPP_

#include <chrono>
#include <span>

#include "vcsched/model.hpp"
#include "vcsched/parallel.hpp"
#include "vcsched/phase2.hpp"

namespace vcsched {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Turns a successful placement at minimum yield `y` into a Solution: shares
// y * cpu_need, then the requested phase 2. `seconds` is the min-yield phase
// time and is reported as is; phase 2 is not timed. Multi-task jobs leave
// with equal shares whatever the mode.
inline Solution finish_placement(const ProblemInstance& inst, std::span<const TaskItem> items,
                                 std::span<const std::size_t> hosts, double y,
                                 Phase2Mode phase2, double seconds) {
  Solution s;
  s.allocation = allocation_at_yield(inst, items, hosts, y);
  if (phase2 == Phase2Mode::kPerJob) s.allocation = enforce_uniformity(inst, std::move(s.allocation));
  s.allocation = apply_phase2(inst, s.allocation, y, phase2);
  if (phase2 == Phase2Mode::kPerTask && inst.is_parallel()) {
    s.allocation = enforce_uniformity(inst, std::move(s.allocation));
  }
  const auto report = evaluate(inst, s.allocation);
  s.outcome.success = true;
  s.outcome.min_yield = report.min_yield;
  s.outcome.avg_task_yield = report.avg_task_yield;
  s.outcome.avg_job_yield = report.avg_job_yield;
  s.outcome.wall_seconds = seconds;
  return s;
}

}  // namespace vcsched

#endif  // VCSCHED_SOLUTION_HPP_
