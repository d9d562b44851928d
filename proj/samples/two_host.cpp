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

// Places four jobs on two hosts with every min-yield solver and prints the
// placements next to the relaxed bound.

#include <cstdio>

#include "vcsched/vcsched.hpp"

int main() {
  using namespace vcsched;
  const ProblemInstance inst{2, {{0.9, 0.6, 1}, {0.5, 0.5, 1}, {0.4, 0.3, 1}, {0.6, 0.4, 1}}};
  std::printf("relaxed bound %.4f\n", relaxed_optimum(inst));

  std::vector<std::string> names = heuristic_names();
  names.push_back("exact");
  for (const auto& name : names) {
    const Solution s = run_algorithm(name, inst);
    if (!s.outcome.success) {
      std::printf("%-6s failed: %s\n", name.c_str(), s.outcome.message.c_str());
      continue;
    }
    std::printf("%-6s min %.4f avg %.4f hosts", name.c_str(), s.outcome.min_yield,
                s.outcome.avg_task_yield);
    for (const auto& job : s.allocation.jobs) std::printf(" %zu", job[0].host);
    std::printf("\n");
  }
  return 0;
}
