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

#ifndef VCSCHED_TESTS_TEST_UTIL_HPP_
#define VCSCHED_TESTS_TEST_UTIL_HPP_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <utility>
#include <vector>

#include "vcsched/model.hpp"

namespace vcsched::testing {

// Single-task jobs given as (cpu, mem) pairs.
inline ProblemInstance make_instance(std::size_t hosts,
                                     std::initializer_list<std::pair<double, double>> jobs) {
  ProblemInstance inst;
  inst.host_count = hosts;
  for (const auto& [cpu, mem] : jobs) inst.jobs.push_back({cpu, mem, 1});
  return inst;
}

// Single-task allocation from parallel host and share lists.
inline Allocation make_allocation(const std::vector<std::size_t>& hosts,
                                  const std::vector<double>& shares) {
  Allocation a;
  for (std::size_t i = 0; i < hosts.size(); ++i) a.jobs.push_back({{hosts[i], shares[i]}});
  return a;
}

// Random instance with H <= max_hosts and at most max_tasks tasks in total.
inline ProblemInstance random_small_instance(std::mt19937_64& rng, std::size_t max_hosts,
                                             std::size_t max_tasks, bool parallel = false) {
  std::uniform_int_distribution<std::size_t> hosts(1, max_hosts);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ProblemInstance inst;
  inst.host_count = hosts(rng);
  std::size_t remaining = std::uniform_int_distribution<std::size_t>(1, max_tasks)(rng);
  while (remaining > 0) {
    std::size_t t = 1;
    if (parallel) t = std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(3, remaining))(rng);
    inst.jobs.push_back({unit(rng), 0.6 * unit(rng), t});
    remaining -= t;
  }
  return inst;
}

}  // namespace vcsched::testing

#endif  // VCSCHED_TESTS_TEST_UTIL_HPP_
