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

// Core domain types: jobs, instances, allocations, and the yield and
// feasibility primitives every solver shares.
//
// Hosts are identical and normalized to 1.0 CPU and 1.0 memory. A job i asks
// for a fraction cpu_need of one host's compute power and a fraction mem_need
// of one host's memory; a parallel job has task_count identical tasks. Each
// task lives on exactly one host and receives a CPU share there. The yield of
// a task is share / cpu_need.

#ifndef VCSCHED_MODEL_HPP_
#define VCSCHED_MODEL_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace vcsched {

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr std::size_t kUnplaced = std::numeric_limits<std::size_t>::max();

// Raised when an allocation references a job, task or host that does not
// exist. Distinct from a constraint violation, which check_feasible reports
// as data.
class StructuralError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

struct JobSpec {
  double cpu_need = 0.0;
  double mem_need = 0.0;
  std::size_t task_count = 1;

  friend bool operator==(const JobSpec&, const JobSpec&) = default;
};

struct ProblemInstance {
  std::size_t host_count = 1;
  std::vector<JobSpec> jobs;

  std::size_t total_tasks() const {
    std::size_t n = 0;
    for (const auto& j : jobs) n += j.task_count;
    return n;
  }

  // Sum over tasks of cpu_need.
  double total_cpu_demand() const {
    double s = 0.0;
    for (const auto& j : jobs) s += static_cast<double>(j.task_count) * j.cpu_need;
    return s;
  }

  double total_mem_demand() const {
    double s = 0.0;
    for (const auto& j : jobs) s += static_cast<double>(j.task_count) * j.mem_need;
    return s;
  }

  bool is_parallel() const {
    return std::any_of(jobs.begin(), jobs.end(),
                       [](const JobSpec& j) { return j.task_count > 1; });
  }

  // Throws std::invalid_argument when an invariant does not hold.
  void validate() const {
    if (host_count < 1) throw std::invalid_argument("instance needs at least one host");
    if (jobs.empty()) throw std::invalid_argument("instance needs at least one job");
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      const auto& j = jobs[i];
      if (!(j.cpu_need >= 0.0 && j.cpu_need <= 1.0) ||
          !(j.mem_need >= 0.0 && j.mem_need <= 1.0) || j.task_count < 1) {
        throw std::invalid_argument("job " + std::to_string(i) +
                                    " violates 0<=cpu<=1, 0<=mem<=1, tasks>=1");
      }
    }
  }

  friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;
};

struct TaskSlot {
  std::size_t host = kUnplaced;
  double share = 0.0;

  bool placed() const { return host != kUnplaced; }
  friend bool operator==(const TaskSlot&, const TaskSlot&) = default;
};

// Placement and CPU share of every task, indexed [job][task]. Only the share on
// the placed host is stored; every other entry of the job-by-host share matrix
// is zero.
struct Allocation {
  std::vector<std::vector<TaskSlot>> jobs;

  static Allocation unplaced_for(const ProblemInstance& inst) {
    Allocation a;
    a.jobs.reserve(inst.jobs.size());
    for (const auto& j : inst.jobs) a.jobs.emplace_back(j.task_count);
    return a;
  }

  TaskSlot& at(std::size_t job, std::size_t task) { return jobs.at(job).at(task); }
  const TaskSlot& at(std::size_t job, std::size_t task) const {
    return jobs.at(job).at(task);
  }

  friend bool operator==(const Allocation&, const Allocation&) = default;
};

// One (job, task) pair with the demands it inherits from its job.
struct TaskItem {
  std::size_t job = 0;
  std::size_t task = 0;
  double cpu = 0.0;
  double mem = 0.0;
};

// Flattened task-level view in (job, task) order; sum of task_count items.
inline std::vector<TaskItem> expand_tasks(const ProblemInstance& inst) {
  std::vector<TaskItem> items;
  items.reserve(inst.total_tasks());
  for (std::size_t i = 0; i < inst.jobs.size(); ++i) {
    const auto& j = inst.jobs[i];
    for (std::size_t k = 0; k < j.task_count; ++k) {
      items.push_back({i, k, j.cpu_need, j.mem_need});
    }
  }
  return items;
}

enum class ViolationKind {
  kUnplacedTask,
  kCpuCapacity,
  kMemCapacity,
  kShareAboveNeed,
  kNegativeShare,
  kNonUniformJob,
};

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::kUnplacedTask: return "unplaced-task";
    case ViolationKind::kCpuCapacity: return "cpu-capacity";
    case ViolationKind::kMemCapacity: return "mem-capacity";
    case ViolationKind::kShareAboveNeed: return "share-above-need";
    case ViolationKind::kNegativeShare: return "negative-share";
    case ViolationKind::kNonUniformJob: return "non-uniform-job";
  }
  return "unknown";
}

struct Violation {
  ViolationKind kind;
  std::size_t job = kUnplaced;
  std::size_t task = kUnplaced;
  std::size_t host = kUnplaced;
  // Amount by which the bound is exceeded (0 for cardinality violations).
  double excess = 0.0;

  std::string describe() const {
    std::ostringstream os;
    os << to_string(kind);
    if (job != kUnplaced) os << " job=" << job;
    if (task != kUnplaced) os << " task=" << task;
    if (host != kUnplaced) os << " host=" << host;
    if (excess != 0.0) os << " excess=" << excess;
    return os.str();
  }
};

// Throws StructuralError if alloc references indices outside inst.
inline void check_structure(const ProblemInstance& inst, const Allocation& alloc) {
  if (alloc.jobs.size() != inst.jobs.size()) {
    throw StructuralError("allocation has " + std::to_string(alloc.jobs.size()) +
                          " jobs, instance has " + std::to_string(inst.jobs.size()));
  }
  for (std::size_t i = 0; i < alloc.jobs.size(); ++i) {
    if (alloc.jobs[i].size() > inst.jobs[i].task_count) {
      throw StructuralError("job " + std::to_string(i) + " has task index beyond " +
                            std::to_string(inst.jobs[i].task_count));
    }
    for (const auto& slot : alloc.jobs[i]) {
      if (slot.placed() && slot.host >= inst.host_count) {
        throw StructuralError("job " + std::to_string(i) + " placed on host " +
                              std::to_string(slot.host) + " of " +
                              std::to_string(inst.host_count));
      }
    }
  }
}

// Returns one descriptor per violated constraint; empty means feasible.
inline std::vector<Violation> check_feasible(const ProblemInstance& inst,
                                             const Allocation& alloc,
                                             double tol = kDefaultTolerance) {
  check_structure(inst, alloc);
  std::vector<Violation> out;
  std::vector<double> cpu(inst.host_count, 0.0);
  std::vector<double> mem(inst.host_count, 0.0);

  for (std::size_t i = 0; i < inst.jobs.size(); ++i) {
    const auto& job = inst.jobs[i];
    const auto& tasks = alloc.jobs[i];
    for (std::size_t k = 0; k < job.task_count; ++k) {
      if (k >= tasks.size() || !tasks[k].placed()) {
        out.push_back({ViolationKind::kUnplacedTask, i, k});
        continue;
      }
      const auto& slot = tasks[k];
      cpu[slot.host] += slot.share;
      mem[slot.host] += job.mem_need;
      if (slot.share < -tol) {
        out.push_back({ViolationKind::kNegativeShare, i, k, slot.host, -slot.share});
      }
      if (slot.share > job.cpu_need + tol) {
        out.push_back(
            {ViolationKind::kShareAboveNeed, i, k, slot.host, slot.share - job.cpu_need});
      }
    }
    if (job.task_count > 1 && !tasks.empty()) {
      const double first = tasks.front().share;
      for (std::size_t k = 1; k < tasks.size(); ++k) {
        if (std::abs(tasks[k].share - first) > tol) {
          out.push_back({ViolationKind::kNonUniformJob, i, k, tasks[k].host,
                         std::abs(tasks[k].share - first)});
        }
      }
    }
  }
  for (std::size_t h = 0; h < inst.host_count; ++h) {
    if (cpu[h] > 1.0 + tol) out.push_back({ViolationKind::kCpuCapacity, kUnplaced, kUnplaced, h, cpu[h] - 1.0});
    if (mem[h] > 1.0 + tol) out.push_back({ViolationKind::kMemCapacity, kUnplaced, kUnplaced, h, mem[h] - 1.0});
  }
  return out;
}

struct YieldReport {
  std::vector<double> per_task_yield;  // flattened in (job, task) order
  std::vector<double> per_job_yield;
  double min_yield = 1.0;
  double avg_task_yield = 1.0;
  double avg_job_yield = 1.0;
};

// Yield of a share given a need; a job that needs no CPU is fully served.
inline double yield_of(double share, double need) {
  return need > 0.0 ? share / need : 1.0;
}

inline YieldReport evaluate(const ProblemInstance& inst, const Allocation& alloc) {
  check_structure(inst, alloc);
  YieldReport r;
  r.per_task_yield.reserve(inst.total_tasks());
  r.per_job_yield.reserve(inst.jobs.size());
  for (std::size_t i = 0; i < inst.jobs.size(); ++i) {
    const auto& job = inst.jobs[i];
    double total_share = 0.0;
    for (std::size_t k = 0; k < job.task_count; ++k) {
      double share = 0.0;
      if (k < alloc.jobs[i].size() && alloc.jobs[i][k].placed()) share = alloc.jobs[i][k].share;
      total_share += share;
      r.per_task_yield.push_back(yield_of(share, job.cpu_need));
    }
    r.per_job_yield.push_back(
        yield_of(total_share, static_cast<double>(job.task_count) * job.cpu_need));
  }
  if (!r.per_task_yield.empty()) {
    r.min_yield = *std::min_element(r.per_task_yield.begin(), r.per_task_yield.end());
    r.avg_task_yield = std::accumulate(r.per_task_yield.begin(), r.per_task_yield.end(), 0.0) /
                       static_cast<double>(r.per_task_yield.size());
  }
  if (!r.per_job_yield.empty()) {
    r.avg_job_yield = std::accumulate(r.per_job_yield.begin(), r.per_job_yield.end(), 0.0) /
                      static_cast<double>(r.per_job_yield.size());
  }
  return r;
}

// Best achievable minimum yield for a fixed placement: every host j can give
// each of its tasks y * cpu_need as long as y * load_j <= 1.
// `hosts` is indexed like expand_tasks(inst).
inline double placement_min_yield(const ProblemInstance& inst,
                                  std::span<const TaskItem> items,
                                  std::span<const std::size_t> hosts) {
  std::vector<double> load(inst.host_count, 0.0);
  for (std::size_t t = 0; t < items.size(); ++t) load.at(hosts[t]) += items[t].cpu;
  double y = 1.0;
  for (double l : load) {
    if (l > 1.0) y = std::min(y, 1.0 / l);
  }
  return y;
}

// Builds the allocation where every task on `hosts` receives y * cpu_need.
inline Allocation allocation_at_yield(const ProblemInstance& inst,
                                      std::span<const TaskItem> items,
                                      std::span<const std::size_t> hosts, double y) {
  Allocation a = Allocation::unplaced_for(inst);
  for (std::size_t t = 0; t < items.size(); ++t) {
    a.jobs[items[t].job][items[t].task] = {hosts[t], items[t].cpu * y};
  }
  return a;
}

// Per-item host vector of an allocation, in expand_tasks order.
inline std::vector<std::size_t> placement_of(const ProblemInstance& inst,
                                             const Allocation& alloc) {
  check_structure(inst, alloc);
  std::vector<std::size_t> hosts;
  hosts.reserve(inst.total_tasks());
  for (std::size_t i = 0; i < inst.jobs.size(); ++i) {
    for (std::size_t k = 0; k < inst.jobs[i].task_count; ++k) {
      hosts.push_back(k < alloc.jobs[i].size() ? alloc.jobs[i][k].host : kUnplaced);
    }
  }
  return hosts;
}

struct SolverOutcome {
  bool success = false;
  double min_yield = 0.0;
  double avg_task_yield = 0.0;
  double avg_job_yield = 0.0;
  // Wall time of the min-yield phase only.
  double wall_seconds = 0.0;
  std::string message;
};

struct Solution {
  SolverOutcome outcome;
  Allocation allocation;
};

inline Solution failed_solution(const ProblemInstance& inst, std::string why,
                                double seconds = 0.0) {
  Solution s;
  s.outcome.message = std::move(why);
  s.outcome.wall_seconds = seconds;
  s.allocation = Allocation::unplaced_for(inst);
  return s;
}

}  // namespace vcsched

#endif  // VCSCHED_MODEL_HPP_
