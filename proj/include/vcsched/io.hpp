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

// JSON forms of instances, allocations and adaptation inputs.
//
//   instance:    {"hosts": H, "jobs": [{"cpu": a, "mem": m, "tasks": T}, ...]}
//   allocation:  [{"job": i, "task": k, "host": j, "share": s}, ...]
//   adaptation:  instance fields plus
//                "previous": [{"job": i, "task": k, "host": j | null}, ...],
//                "budget": B

#ifndef VCSCHED_IO_HPP_
#define VCSCHED_IO_HPP_

#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "vcsched/adaptation.hpp"
#include "vcsched/model.hpp"

namespace vcsched {

using json = nlohmann::json;

inline json to_json(const ProblemInstance& inst) {
  json jobs = json::array();
  for (const auto& j : inst.jobs) {
    jobs.push_back({{"cpu", j.cpu_need}, {"mem", j.mem_need}, {"tasks", j.task_count}});
  }
  return {{"hosts", inst.host_count}, {"jobs", std::move(jobs)}};
}

inline ProblemInstance instance_from_json(const json& j) {
  ProblemInstance inst;
  inst.host_count = j.at("hosts").get<std::size_t>();
  for (const auto& job : j.at("jobs")) {
    JobSpec s;
    s.cpu_need = job.at("cpu").get<double>();
    s.mem_need = job.at("mem").get<double>();
    s.task_count = job.value("tasks", std::size_t{1});
    inst.jobs.push_back(s);
  }
  inst.validate();
  return inst;
}

inline json to_json(const Allocation& alloc) {
  json out = json::array();
  for (std::size_t i = 0; i < alloc.jobs.size(); ++i) {
    for (std::size_t k = 0; k < alloc.jobs[i].size(); ++k) {
      const auto& slot = alloc.jobs[i][k];
      if (!slot.placed()) continue;
      out.push_back({{"job", i}, {"task", k}, {"host", slot.host}, {"share", slot.share}});
    }
  }
  return out;
}

// Tasks absent from the list stay unplaced. Throws StructuralError on indices
// outside the instance or on a task listed twice.
inline Allocation allocation_from_json(const json& j, const ProblemInstance& inst) {
  Allocation a = Allocation::unplaced_for(inst);
  for (const auto& e : j) {
    const auto job = e.at("job").get<std::size_t>();
    const auto task = e.at("task").get<std::size_t>();
    const auto host = e.at("host").get<std::size_t>();
    if (job >= inst.jobs.size() || task >= inst.jobs[job].task_count || host >= inst.host_count) {
      throw StructuralError("allocation entry out of range: job " + std::to_string(job) +
                            " task " + std::to_string(task) + " host " + std::to_string(host));
    }
    auto& slot = a.jobs[job][task];
    if (slot.placed()) {
      throw StructuralError("task listed twice: job " + std::to_string(job) + " task " +
                            std::to_string(task));
    }
    slot = {host, e.at("share").get<double>()};
  }
  return a;
}

inline json to_json(const AdaptationInstance& a) {
  json out = to_json(a.inst);
  json prev = json::array();
  for (std::size_t i = 0; i < a.previous.size(); ++i) {
    for (std::size_t k = 0; k < a.previous[i].size(); ++k) {
      const std::size_t h = a.previous[i][k];
      prev.push_back({{"job", i}, {"task", k}, {"host", h == kUnplaced ? json(nullptr) : json(h)}});
    }
  }
  out["previous"] = std::move(prev);
  out["budget"] = a.budget;
  return out;
}

inline bool has_adaptation_fields(const json& j) { return j.contains("previous"); }

// Tasks missing from "previous" count as new.
inline AdaptationInstance adaptation_from_json(const json& j) {
  AdaptationInstance a = AdaptationInstance::all_new(instance_from_json(j));
  a.budget = j.value("budget", 0.0);
  for (const auto& e : j.at("previous")) {
    const auto job = e.at("job").get<std::size_t>();
    const auto task = e.at("task").get<std::size_t>();
    if (job >= a.previous.size() || task >= a.previous[job].size()) {
      throw StructuralError("previous entry out of range: job " + std::to_string(job) +
                            " task " + std::to_string(task));
    }
    const auto& h = e.at("host");
    a.previous[job][task] = h.is_null() ? kUnplaced : h.get<std::size_t>();
  }
  a.validate();
  return a;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace vcsched

#endif  // VCSCHED_IO_HPP_
