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

// Name-based dispatch over every min-yield solver.

#ifndef VCSCHED_ALGORITHMS_HPP_
#define VCSCHED_ALGORITHMS_HPP_

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "vcsched/bounds.hpp"
#include "vcsched/greedy.hpp"
#include "vcsched/mcb.hpp"
#include "vcsched/model.hpp"
#include "vcsched/rounding.hpp"

namespace vcsched {

struct AlgorithmOptions {
  Phase2Mode phase2 = Phase2Mode::kPerTask;
  RoundingConfig rounding;
  EnumerationLimits exact_limits;
  std::uint64_t greedy_attempts = 500'000;
  BinarySearchConfig search;
};

inline const std::vector<std::string>& mcb_names() {
  static const std::vector<std::string> v = {"mcb1", "mcb2", "mcb3", "mcb4",
                                             "mcb5", "mcb6", "mcb7", "mcb8"};
  return v;
}

inline const std::vector<std::string>& greedy_names() {
  static const std::vector<std::string> v = {"gr", "sg", "gb", "sgb"};
  return v;
}

// Every heuristic, in reporting order.
inline const std::vector<std::string>& heuristic_names() {
  static const std::vector<std::string> v = [] {
    std::vector<std::string> all = greedy_names();
    all.push_back("rrnd");
    all.push_back("rrnz");
    for (const auto& m : mcb_names()) all.push_back(m);
    return all;
  }();
  return v;
}

inline bool is_known_algorithm(const std::string& name) {
  const auto& h = heuristic_names();
  return name == "exact" || std::find(h.begin(), h.end(), name) != h.end();
}

inline Solution run_algorithm(const std::string& name, const ProblemInstance& inst,
                              const AlgorithmOptions& opts = {}) {
  if (name == "exact") return exact_solve(inst, opts.exact_limits, opts.phase2);
  auto greedy = [&](GreedyConfig cfg) {
    cfg.max_placement_attempts = opts.greedy_attempts;
    return greedy_solve(inst, cfg, opts.phase2);
  };
  if (name == "gr") return greedy(GreedyConfig::gr());
  if (name == "sg") return greedy(GreedyConfig::sg());
  if (name == "gb") return greedy(GreedyConfig::gb());
  if (name == "sgb") return greedy(GreedyConfig::sgb());
  if (name == "rrnd") return rounding_solve_from_scratch(inst, false, opts.rounding, opts.phase2);
  if (name == "rrnz") return rounding_solve_from_scratch(inst, true, opts.rounding, opts.phase2);
  if (name.size() == 4 && name.rfind("mcb", 0) == 0 && name[3] >= '1' && name[3] <= '8') {
    return mcb_solve(inst, McbVariant::numbered(name[3] - '0'), opts.search, opts.phase2);
  }
  throw std::invalid_argument("unknown algorithm: " + name);
}

}  // namespace vcsched

#endif  // VCSCHED_ALGORITHMS_HPP_
