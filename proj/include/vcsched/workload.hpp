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

// Synthetic instances. CPU and memory needs are normal with a given mean and
// coefficient of variation, truncated to [0, 1] by redrawing. The memory mean
// follows from the memory slack: hosts * (1 - slack) / tasks.

#ifndef VCSCHED_WORKLOAD_HPP_
#define VCSCHED_WORKLOAD_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "vcsched/model.hpp"
#include "vcsched/random.hpp"

namespace vcsched {

// Task counts of parallel jobs: u ~ U[0, log2(max)], candidate 2^u; with
// probability kPowerOfTwoBias it is rounded to the nearest power of two,
// otherwise to the nearest integer.
struct TaskCountModel {
  static constexpr std::size_t kMaxTasks = 64;
  static constexpr double kPowerOfTwoBias = 0.75;
  static constexpr const char* kDescription =
      "two-stage log-uniform on [1,64]: u~U[0,6], 2^u; p=0.75 round to nearest power of two, "
      "else nearest integer";

  static std::size_t draw(std::mt19937_64& rng) {
    const double top = std::log2(static_cast<double>(kMaxTasks));
    const double u = detail::unit_draw(rng) * top;
    const double stage = detail::unit_draw(rng);
    const double n = stage < kPowerOfTwoBias ? std::exp2(std::round(u)) : std::round(std::exp2(u));
    return std::clamp<std::size_t>(static_cast<std::size_t>(n), 1, kMaxTasks);
  }
};

struct ExperimentSpec {
  std::size_t host_count = 4;
  std::size_t job_count = 6;
  double slack = 0.5;
  double cpu_mean = 0.5;
  double cpu_cov = 0.25;
  double mem_cov = 0.25;
  bool parallel = false;
  std::uint64_t rng_seed = 1;
  // Overrides the slack-derived memory mean when set.
  std::optional<double> mem_mean;

  void validate() const {
    if (host_count < 1 || job_count < 1) throw std::invalid_argument("need hosts and jobs");
    if (!mem_mean && !(slack > 0.0 && slack < 1.0)) {
      throw std::invalid_argument("slack must lie in (0, 1)");
    }
    if (!(cpu_mean >= 0.0 && cpu_mean <= 1.0)) throw std::invalid_argument("cpu mean must lie in [0, 1]");
    if (mem_mean && !(*mem_mean >= 0.0 && *mem_mean <= 1.0)) {
      throw std::invalid_argument("memory mean must lie in [0, 1]");
    }
    if (!(cpu_cov >= 0.0) || !(mem_cov >= 0.0)) throw std::invalid_argument("cov must be >= 0");
  }
};

namespace detail {

inline double truncated_normal(std::mt19937_64& rng, double mean, double cov) {
  const double sd = mean * cov;
  if (sd <= 0.0) return mean;
  std::normal_distribution<double> dist(mean, sd);
  for (;;) {
    const double v = dist(rng);
    if (v >= 0.0 && v <= 1.0) return v;
  }
}

}  // namespace detail

inline double memory_mean_for(const ExperimentSpec& spec, std::size_t tasks) {
  if (spec.mem_mean) return *spec.mem_mean;
  return static_cast<double>(spec.host_count) * (1.0 - spec.slack) / static_cast<double>(tasks);
}

inline ProblemInstance generate(const ExperimentSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.rng_seed);
  ProblemInstance inst;
  inst.host_count = spec.host_count;
  inst.jobs.resize(spec.job_count);

  std::size_t tasks = 0;
  for (auto& j : inst.jobs) {
    j.task_count = spec.parallel ? TaskCountModel::draw(rng) : 1;
    tasks += j.task_count;
  }
  const double mem_mean = memory_mean_for(spec, tasks);
  if (mem_mean > 1.0) {
    throw std::invalid_argument("slack too low: mean memory need " + std::to_string(mem_mean) +
                                " exceeds one host");
  }
  for (auto& j : inst.jobs) {
    j.cpu_need = detail::truncated_normal(rng, spec.cpu_mean, spec.cpu_cov);
    j.mem_need = detail::truncated_normal(rng, mem_mean, spec.mem_cov);
  }
  return inst;
}

struct GridPoint {
  std::string set;
  std::size_t index = 0;
  ExperimentSpec spec;

  std::string spec_id() const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s-%03zu", set.c_str(), index);
    return buf;
  }

  std::string instance_id(std::size_t instance) const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "-%03zu", instance);
    return spec_id() + buf;
  }

  // Per-instance generator settings; the seed depends only on the base seed
  // and the point's position in the grid.
  ExperimentSpec instance_spec(std::uint64_t base_seed, std::size_t instance) const {
    ExperimentSpec s = spec;
    s.rng_seed = splitmix64(splitmix64(base_seed) ^ hash_id(instance_id(instance)));
    return s;
  }
};

inline const std::vector<double>& default_slacks() {
  static const std::vector<double> v = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  return v;
}

inline const std::vector<double>& default_covs() {
  static const std::vector<double> v = {0.25, 0.75};
  return v;
}

inline std::vector<GridPoint> make_grid(const std::string& set, std::size_t hosts,
                                        const std::vector<std::size_t>& task_counts,
                                        bool parallel = false) {
  std::vector<GridPoint> grid;
  for (std::size_t n : task_counts) {
    for (double slack : default_slacks()) {
      for (double cpu_cov : default_covs()) {
        for (double mem_cov : default_covs()) {
          GridPoint p;
          p.set = set;
          p.index = grid.size();
          p.spec.host_count = hosts;
          p.spec.job_count = n;
          p.spec.slack = slack;
          p.spec.cpu_cov = cpu_cov;
          p.spec.mem_cov = mem_cov;
          p.spec.parallel = parallel;
          grid.push_back(p);
        }
      }
    }
  }
  return grid;
}

// 4 hosts x {6, 8, 10, 12} tasks x 9 slacks x 2 x 2 covs = 144 points.
inline std::vector<GridPoint> small_grid() { return make_grid("small", 4, {6, 8, 10, 12}); }

// 64 hosts x {100, 250, 500} tasks x 9 slacks x 2 x 2 covs = 108 points.
inline std::vector<GridPoint> large_grid() { return make_grid("large", 64, {100, 250, 500}); }

}  // namespace vcsched

#endif  // VCSCHED_WORKLOAD_HPP_
