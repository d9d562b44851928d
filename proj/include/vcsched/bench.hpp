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

// Experiment harness: runs algorithm suites over instance sets and aggregates
// the results into degradation-from-best tables and per-slack summaries.

#ifndef VCSCHED_BENCH_HPP_
#define VCSCHED_BENCH_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "vcsched/algorithms.hpp"
#include "vcsched/bounds.hpp"
#include "vcsched/model.hpp"
#include "vcsched/random.hpp"

namespace vcsched {

enum class Outcome { kSuccess, kFailure, kInfeasible };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::kSuccess: return "success";
    case Outcome::kFailure: return "failure";
    case Outcome::kInfeasible: return "infeasible";
  }
  return "unknown";
}

inline Outcome parse_outcome(const std::string& s) {
  if (s == "success") return Outcome::kSuccess;
  if (s == "failure") return Outcome::kFailure;
  if (s == "infeasible") return Outcome::kInfeasible;
  throw std::invalid_argument("unknown outcome: " + s);
}

struct ResultRecord {
  std::string spec_id;
  std::string instance_id;
  std::string algorithm;
  Outcome outcome = Outcome::kFailure;
  std::optional<double> min_yield;
  std::optional<double> avg_task_yield;
  std::optional<double> avg_job_yield;
  double runtime_s = 0.0;
  std::optional<double> relaxed_bound;
  std::optional<double> exact_opt;

  friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

inline constexpr const char* kCsvHeader =
    "spec_id,instance_id,algorithm,outcome,min_yield,avg_task_yield,avg_job_yield,runtime_s,"
    "relaxed_bound,exact_opt";

namespace detail {

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

inline std::optional<double> parse_optional(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return std::stod(s);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace detail

inline std::string emit_csv(const std::vector<ResultRecord>& records) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& r : records) {
    for (const auto* id : {&r.spec_id, &r.instance_id, &r.algorithm}) {
      if (id->find_first_of(",\n") != std::string::npos) {
        throw std::invalid_argument("identifier contains a CSV separator: " + *id);
      }
    }
    out += r.spec_id + ',' + r.instance_id + ',' + r.algorithm + ',' + to_string(r.outcome) +
           ',' + detail::format_optional(r.min_yield) + ',' +
           detail::format_optional(r.avg_task_yield) + ',' +
           detail::format_optional(r.avg_job_yield) + ',' + detail::format_double(r.runtime_s) +
           ',' + detail::format_optional(r.relaxed_bound) + ',' +
           detail::format_optional(r.exact_opt) + '\n';
  }
  return out;
}

inline std::vector<ResultRecord> parse_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) {
    throw std::invalid_argument("results CSV has an unexpected header");
  }
  std::vector<ResultRecord> out;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto c = detail::split_csv_line(line);
    if (c.size() != 10) {
      throw std::invalid_argument("results CSV line " + std::to_string(lineno) +
                                  " has " + std::to_string(c.size()) + " cells");
    }
    ResultRecord r;
    r.spec_id = c[0];
    r.instance_id = c[1];
    r.algorithm = c[2];
    r.outcome = parse_outcome(c[3]);
    r.min_yield = detail::parse_optional(c[4]);
    r.avg_task_yield = detail::parse_optional(c[5]);
    r.avg_job_yield = detail::parse_optional(c[6]);
    r.runtime_s = std::stod(c[7]);
    r.relaxed_bound = detail::parse_optional(c[8]);
    r.exact_opt = detail::parse_optional(c[9]);
    out.push_back(std::move(r));
  }
  return out;
}

struct SuiteInstance {
  std::string spec_id;
  std::string instance_id;
  ProblemInstance inst;
};

struct SuiteOptions {
  AlgorithmOptions algorithm;
  std::size_t repetitions = 3;
  bool attach_relaxed = true;
  bool attach_exact = false;
  std::size_t workers = 0;  // 0 = hardware concurrency
  std::uint64_t seed = 1;
  // Fraction of successful records whose allocation is re-checked.
  double validate_fraction = 0.1;
};

struct SuiteStats {
  std::size_t validated = 0;
  std::size_t invalid = 0;
  std::vector<std::string> invalid_records;
};

// Seed used by randomized solvers on an instance; independent of execution
// order. Every algorithm sees the same seed on the same instance.
inline std::uint64_t instance_seed(std::uint64_t base, const std::string& instance_id) {
  return splitmix64(base ^ hash_id(instance_id));
}

namespace detail {

inline void parallel_for(std::size_t n, std::size_t workers,
                         const std::function<void(std::size_t)>& body) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(n, 1));
  std::atomic<std::size_t> next{0};
  auto loop = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) body(i);
  };
  if (workers <= 1) {
    loop();
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(loop);
  for (auto& t : pool) t.join();
}

inline double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace detail

// One record per (instance, algorithm), in instance-major order. Solver
// exceptions become failure records. Instances the exact reference proves
// infeasible have their failures recorded as "infeasible".
inline std::vector<ResultRecord> run_suite(const std::vector<SuiteInstance>& instances,
                                           const std::vector<std::string>& algorithms,
                                           const SuiteOptions& opts = {},
                                           SuiteStats* stats = nullptr) {
  for (const auto& a : algorithms) {
    if (!is_known_algorithm(a)) throw std::invalid_argument("unknown algorithm: " + a);
  }
  const std::size_t n_inst = instances.size();
  std::vector<std::optional<double>> relaxed(n_inst), exact(n_inst);
  std::vector<bool> infeasible(n_inst, false);

  detail::parallel_for(n_inst, opts.workers, [&](std::size_t i) {
    const auto& inst = instances[i].inst;
    if (opts.attach_relaxed) {
      try {
        relaxed[i] = relaxed_optimum(inst);
      } catch (const RelaxedInfeasibleError&) {
        infeasible[i] = true;
      }
    }
    if (opts.attach_exact && !infeasible[i]) {
      try {
        const auto s = exact_solve(inst, opts.algorithm.exact_limits, Phase2Mode::kOff);
        if (s.outcome.success) {
          exact[i] = s.outcome.min_yield;
        } else {
          infeasible[i] = true;
        }
      } catch (const TooLargeError&) {
      }
    }
  });

  const std::size_t n_alg = algorithms.size();
  std::vector<ResultRecord> records(n_inst * n_alg);
  std::vector<char> checked(records.size(), 0), bad(records.size(), 0);
  const std::size_t reps = std::max<std::size_t>(1, opts.repetitions);

  detail::parallel_for(records.size(), opts.workers, [&](std::size_t cell) {
    const std::size_t i = cell / n_alg;
    const auto& si = instances[i];
    ResultRecord& r = records[cell];
    r.spec_id = si.spec_id;
    r.instance_id = si.instance_id;
    r.algorithm = algorithms[cell % n_alg];
    r.relaxed_bound = relaxed[i];
    r.exact_opt = exact[i];

    AlgorithmOptions ao = opts.algorithm;
    ao.rounding.rng_seed = instance_seed(opts.seed, si.instance_id);
    std::vector<double> times;
    std::optional<Solution> first;
    try {
      for (std::size_t rep = 0; rep < reps; ++rep) {
        auto s = run_algorithm(r.algorithm, si.inst, ao);
        times.push_back(s.outcome.wall_seconds);
        if (!first) first = std::move(s);
      }
    } catch (const std::exception&) {
      first.reset();
    }
    r.runtime_s = detail::median(times);
    if (first && first->outcome.success) {
      r.outcome = Outcome::kSuccess;
      r.min_yield = first->outcome.min_yield;
      r.avg_task_yield = first->outcome.avg_task_yield;
      r.avg_job_yield = first->outcome.avg_job_yield;
      const double u = static_cast<double>(hash_id(si.instance_id + "/" + r.algorithm) >> 11) *
                       0x1.0p-53;
      if (u < opts.validate_fraction) {
        checked[cell] = 1;
        bad[cell] = !check_feasible(si.inst, first->allocation).empty();
      }
    } else {
      r.outcome = infeasible[i] ? Outcome::kInfeasible : Outcome::kFailure;
    }
  });

  if (stats) {
    for (std::size_t c = 0; c < records.size(); ++c) {
      stats->validated += checked[c];
      if (bad[c]) {
        ++stats->invalid;
        stats->invalid_records.push_back(records[c].instance_id + "/" + records[c].algorithm);
      }
    }
  }
  return records;
}

struct DegradationRow {
  std::string algorithm;
  double avg_percent = 0.0;
  double max_percent = 0.0;
  std::size_t instances = 0;  // instances this algorithm solved and was compared on
};

struct DegradationTable {
  std::vector<DegradationRow> rows;  // order of first appearance in the records

  const DegradationRow& row(const std::string& algorithm) const {
    for (const auto& r : rows) {
      if (r.algorithm == algorithm) return r;
    }
    throw std::out_of_range("no degradation row for " + algorithm);
  }
};

// Percent shortfall of each algorithm's minimum yield from the best one on the
// same instance. Instances nobody solved are skipped, and an algorithm's
// failures are left out of its own average.
inline DegradationTable degradation(const std::vector<ResultRecord>& records) {
  if (records.empty()) throw std::invalid_argument("no records to compare");
  std::vector<std::string> algs;
  for (const auto& r : records) {
    if (std::find(algs.begin(), algs.end(), r.algorithm) == algs.end()) algs.push_back(r.algorithm);
  }
  if (algs.size() < 2) throw std::invalid_argument("degradation needs at least two algorithms");

  std::map<std::string, double> best;
  for (const auto& r : records) {
    if (r.outcome != Outcome::kSuccess || !r.min_yield) continue;
    auto [it, fresh] = best.emplace(r.instance_id, *r.min_yield);
    if (!fresh) it->second = std::max(it->second, *r.min_yield);
  }
  std::map<std::string, std::pair<double, std::size_t>> sums;
  std::map<std::string, double> worst;
  for (const auto& r : records) {
    if (r.outcome != Outcome::kSuccess || !r.min_yield) continue;
    const double b = best.at(r.instance_id);
    const double d = b > 0.0 ? 100.0 * (b - *r.min_yield) / b : 0.0;
    auto& s = sums[r.algorithm];
    s.first += d;
    ++s.second;
    worst[r.algorithm] = std::max(worst[r.algorithm], d);
  }
  DegradationTable t;
  for (const auto& a : algs) {
    DegradationRow row;
    row.algorithm = a;
    if (auto it = sums.find(a); it != sums.end() && it->second.second > 0) {
      row.avg_percent = it->second.first / static_cast<double>(it->second.second);
      row.instances = it->second.second;
      row.max_percent = worst[a];
    }
    t.rows.push_back(row);
  }
  return t;
}

struct SummaryRow {
  double key = 0.0;  // slack, or task count for runtime summaries
  std::string algorithm;
  std::size_t total = 0;
  std::size_t successes = 0;
  double failure_rate = 0.0;
  std::optional<double> min_yield;
  std::optional<double> avg_task_yield;
  std::optional<double> avg_job_yield;
  double runtime_s = 0.0;  // mean over all records
};

// Groups records by key_of(spec_id) and algorithm. Yields are averaged over
// successes only. With references, "relaxed" and "exact" rows are added from
// the reference columns.
inline std::vector<SummaryRow> summarize_by(
    const std::vector<ResultRecord>& records,
    const std::function<double(const std::string& spec_id)>& key_of,
    bool include_references = false) {
  std::vector<std::string> algs;
  struct Acc {
    std::size_t total = 0, ok = 0;
    double min = 0, avg = 0, job = 0, rt = 0;
  };
  std::map<std::pair<double, std::string>, Acc> acc;
  auto add = [&](double key, const std::string& alg, bool ok, double min, double avg, double job,
                 double rt) {
    if (std::find(algs.begin(), algs.end(), alg) == algs.end()) algs.push_back(alg);
    auto& a = acc[{key, alg}];
    ++a.total;
    a.rt += rt;
    if (ok) {
      ++a.ok;
      a.min += min;
      a.avg += avg;
      a.job += job;
    }
  };
  std::map<std::string, bool> seen_instance;
  for (const auto& r : records) {
    const double key = key_of(r.spec_id);
    const bool ok = r.outcome == Outcome::kSuccess && r.min_yield;
    add(key, r.algorithm, ok, ok ? *r.min_yield : 0.0, ok ? r.avg_task_yield.value_or(0.0) : 0.0,
        ok ? r.avg_job_yield.value_or(0.0) : 0.0, r.runtime_s);
    if (include_references && !seen_instance[r.instance_id]) {
      seen_instance[r.instance_id] = true;
      add(key, "relaxed", r.relaxed_bound.has_value(), r.relaxed_bound.value_or(0.0), 0.0, 0.0, 0.0);
      add(key, "exact", r.exact_opt.has_value(), r.exact_opt.value_or(0.0), 0.0, 0.0, 0.0);
    }
  }
  std::vector<SummaryRow> rows;
  for (const auto& [k, a] : acc) {
    SummaryRow row;
    row.key = k.first;
    row.algorithm = k.second;
    row.total = a.total;
    row.successes = a.ok;
    row.failure_rate = static_cast<double>(a.total - a.ok) / static_cast<double>(a.total);
    row.runtime_s = a.rt / static_cast<double>(a.total);
    if (a.ok > 0) {
      const double n = static_cast<double>(a.ok);
      row.min_yield = a.min / n;
      row.avg_task_yield = a.avg / n;
      row.avg_job_yield = a.job / n;
    }
    rows.push_back(std::move(row));
  }
  auto rank = [&](const std::string& alg) {
    return std::find(algs.begin(), algs.end(), alg) - algs.begin();
  };
  std::stable_sort(rows.begin(), rows.end(), [&](const SummaryRow& x, const SummaryRow& y) {
    if (x.key != y.key) return x.key < y.key;
    return rank(x.algorithm) < rank(y.algorithm);
  });
  return rows;
}

inline std::vector<SummaryRow> summarize_by_slack(
    const std::vector<ResultRecord>& records, const std::map<std::string, double>& slack_of_spec,
    bool include_references = false) {
  return summarize_by(
      records, [&](const std::string& id) { return slack_of_spec.at(id); }, include_references);
}

}  // namespace vcsched

#endif  // VCSCHED_BENCH_HPP_
