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

// vcsched: generate instances, solve one, benchmark a manifest, report.
//
//   vcsched generate --set small --per-spec 10 --seed 1 --out DIR
//   vcsched generate --hosts 2 --jobs 3 --cpu 0.6 --mem 0 --out DIR
//   vcsched solve --instance FILE --alg mcb8 [--phase2 per-task]
//   vcsched bench --manifest DIR/manifest.json --out DIR [--alg mcb1,...]
//   vcsched report --results DIR/results.csv --out DIR [--figure NAME]

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vcsched/vcsched.hpp"

namespace fs = std::filesystem;
using vcsched::json;

namespace {

constexpr int kExitSolverFailure = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string path_in(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

std::string fmt(double v) { return vcsched::detail::format_double(v); }

std::string fmt(const std::optional<double>& v) { return vcsched::detail::format_optional(v); }

// ---- generate ----

struct GenerateArgs {
  std::string out;
  std::string set;
  std::size_t per_spec = 1;
  std::uint64_t seed = 1;
  std::optional<std::size_t> hosts, jobs;
  std::optional<double> cpu, mem, slack, cpu_cov, mem_cov;
  bool parallel = false;
};

json spec_json(const vcsched::ExperimentSpec& s) {
  json j = {{"hosts", s.host_count}, {"jobs", s.job_count},   {"slack", s.slack},
            {"cpu_mean", s.cpu_mean}, {"cpu_cov", s.cpu_cov}, {"mem_cov", s.mem_cov},
            {"parallel", s.parallel}};
  if (s.mem_mean) j["mem_mean"] = *s.mem_mean;
  return j;
}

int cmd_generate(const GenerateArgs& a) {
  const bool custom = a.hosts || a.jobs || a.cpu || a.mem || a.slack || a.cpu_cov || a.mem_cov;
  std::vector<vcsched::GridPoint> grid;
  if (!a.set.empty()) {
    if (custom) throw UsageError("--set cannot be combined with custom instance flags");
    grid = a.set == "small" ? vcsched::small_grid() : vcsched::large_grid();
    for (auto& p : grid) p.spec.parallel = a.parallel;
  } else {
    if (!a.hosts || !a.jobs) throw UsageError("give --set, or --hosts and --jobs");
    if (a.mem && a.slack) throw UsageError("--mem and --slack are mutually exclusive");
    vcsched::GridPoint p;
    p.set = "custom";
    p.spec.host_count = *a.hosts;
    p.spec.job_count = *a.jobs;
    p.spec.parallel = a.parallel;
    p.spec.cpu_mean = a.cpu.value_or(0.5);
    // A custom instance is exact unless a spread is asked for.
    p.spec.cpu_cov = a.cpu_cov.value_or(0.0);
    p.spec.mem_cov = a.mem_cov.value_or(0.0);
    if (a.slack) p.spec.slack = *a.slack;
    p.spec.mem_mean = a.mem;
    grid.push_back(p);
  }

  json entries = json::array();
  for (const auto& p : grid) {
    for (std::size_t k = 0; k < a.per_spec; ++k) {
      const auto spec = p.instance_spec(a.seed, k);
      const auto inst = vcsched::generate(spec);
      const std::string file = p.instance_id(k) + ".json";
      vcsched::write_text_file(path_in(a.out, file), vcsched::to_json(inst).dump(2) + "\n");
      entries.push_back({{"file", file},
                         {"spec_id", p.spec_id()},
                         {"instance_id", p.instance_id(k)},
                         {"seed", spec.rng_seed},
                         {"spec", spec_json(spec)},
                         {"tasks", inst.total_tasks()}});
    }
  }
  json manifest = {{"set", a.set.empty() ? "custom" : a.set},
                   {"base_seed", a.seed},
                   {"per_spec", a.per_spec},
                   {"rng", vcsched::kRngAlgorithm},
                   {"normal_sampling", "std::normal_distribution, truncated to [0,1] by redraw"},
                   {"task_count_model", vcsched::TaskCountModel::kDescription},
                   {"instances", std::move(entries)}};
  vcsched::write_text_file(path_in(a.out, "manifest.json"), manifest.dump(2) + "\n");
  std::cout << "wrote " << manifest["instances"].size() << " instances to " << a.out << "\n";
  return 0;
}

// ---- solve ----

struct SolveArgs {
  std::string instance;
  std::string alg;
  std::string phase2 = "per-task";
  std::uint64_t seed = 1;
  std::string previous;
  std::optional<double> budget;
  std::string budget_unit = "fraction";
  std::optional<double> host_mem_bytes;
  std::string out;
};

// Previous placements read from an allocation-style list; "share" is ignored.
void read_previous(const json& list, vcsched::AdaptationInstance& a) {
  for (const auto& e : list) {
    const auto job = e.at("job").get<std::size_t>();
    const auto task = e.value("task", std::size_t{0});
    if (job >= a.previous.size() || task >= a.previous[job].size()) {
      throw vcsched::StructuralError("previous placement references job " + std::to_string(job) +
                                     " task " + std::to_string(task));
    }
    const auto& h = e.at("host");
    a.previous[job][task] = h.is_null() ? vcsched::kUnplaced : h.get<std::size_t>();
  }
}

void print_solution(const std::string& alg, const vcsched::Solution& s) {
  std::cout << "algorithm: " << alg << "\n"
            << "success: " << (s.outcome.success ? "true" : "false") << "\n";
  if (!s.outcome.success) {
    std::cout << "message: " << s.outcome.message << "\n";
    return;
  }
  std::cout << "min_yield: " << fmt(s.outcome.min_yield) << "\n"
            << "avg_task_yield: " << fmt(s.outcome.avg_task_yield) << "\n"
            << "avg_job_yield: " << fmt(s.outcome.avg_job_yield) << "\n"
            << "runtime_s: " << fmt(s.outcome.wall_seconds) << "\n"
            << "allocation: " << vcsched::to_json(s.allocation).dump() << "\n";
}

int cmd_solve(const SolveArgs& a) {
  const json doc = vcsched::read_json_file(a.instance);
  const auto inst = vcsched::instance_from_json(doc);

  if (a.alg == "relaxed-bound") {
    std::cout << "relaxed_bound: " << fmt(vcsched::relaxed_optimum(inst)) << "\n";
    return 0;
  }
  if (!vcsched::is_known_algorithm(a.alg)) throw UsageError("unknown algorithm: " + a.alg);

  vcsched::AlgorithmOptions opts;
  opts.phase2 = vcsched::parse_phase2_mode(a.phase2);
  opts.rounding.rng_seed = a.seed;

  const bool adapt = vcsched::has_adaptation_fields(doc) || !a.previous.empty() || a.budget;
  vcsched::Solution s;
  std::optional<vcsched::AdaptationInstance> adaptation;
  if (adapt) {
    if (a.alg != "exact") {
      throw UsageError("adaptation inputs are only supported with --alg exact");
    }
    auto ad = vcsched::has_adaptation_fields(doc) ? vcsched::adaptation_from_json(doc)
                                                  : vcsched::AdaptationInstance::all_new(inst);
    if (!a.previous.empty()) read_previous(vcsched::read_json_file(a.previous), ad);
    if (a.budget_unit == "count") ad.mode = vcsched::BudgetMode::kCount;
    if (a.budget) {
      if (a.budget_unit == "bytes") {
        if (!a.host_mem_bytes) throw UsageError("--budget-unit bytes needs --host-mem-bytes");
        ad.budget = vcsched::budget_from_bytes(*a.budget, *a.host_mem_bytes);
      } else {
        ad.budget = *a.budget;
      }
    }
    s = vcsched::exact_adapt_solve(ad, opts.exact_limits, opts.phase2);
    adaptation = std::move(ad);
  } else {
    s = vcsched::run_algorithm(a.alg, inst, opts);
  }

  print_solution(a.alg, s);
  if (adaptation && s.outcome.success) {
    std::cout << "migration_cost: " << fmt(vcsched::migration_cost(*adaptation, s.allocation))
              << "\n";
  }
  if (!a.out.empty()) {
    json result = {{"algorithm", a.alg},
                   {"success", s.outcome.success},
                   {"message", s.outcome.message}};
    if (s.outcome.success) {
      result["min_yield"] = s.outcome.min_yield;
      result["avg_task_yield"] = s.outcome.avg_task_yield;
      result["avg_job_yield"] = s.outcome.avg_job_yield;
      result["allocation"] = vcsched::to_json(s.allocation);
    }
    vcsched::write_text_file(path_in(a.out, "solution.json"), result.dump(2) + "\n");
  }
  return s.outcome.success ? 0 : kExitSolverFailure;
}

// ---- bench ----

struct BenchArgs {
  std::string manifest;
  std::string out;
  std::vector<std::string> algs;
  std::string phase2 = "per-task";
  std::uint64_t seed = 1;
  std::size_t workers = 0;
  std::size_t reps = 3;
  bool no_exact = false;
};

int cmd_bench(const BenchArgs& a) {
  const json manifest = vcsched::read_json_file(a.manifest);
  const fs::path base = fs::path(a.manifest).parent_path();
  std::vector<std::string> algs = a.algs.empty() ? vcsched::heuristic_names() : a.algs;
  for (const auto& alg : algs) {
    if (!vcsched::is_known_algorithm(alg)) throw UsageError("unknown algorithm: " + alg);
  }

  std::vector<vcsched::SuiteInstance> instances;
  std::string specs = "spec_id,hosts,tasks,slack,cpu_cov,mem_cov\n";
  std::map<std::string, bool> spec_seen;
  for (const auto& e : manifest.at("instances")) {
    const auto inst = vcsched::instance_from_json(
        vcsched::read_json_file((base / e.at("file").get<std::string>()).string()));
    const std::string spec_id = e.at("spec_id");
    instances.push_back({spec_id, e.at("instance_id"), inst});
    if (!spec_seen[spec_id]) {
      spec_seen[spec_id] = true;
      const auto& s = e.at("spec");
      specs += spec_id + ',' + std::to_string(s.at("hosts").get<std::size_t>()) + ',' +
               std::to_string(s.at("jobs").get<std::size_t>()) + ',' +
               fmt(s.at("slack").get<double>()) + ',' + fmt(s.at("cpu_cov").get<double>()) + ',' +
               fmt(s.at("mem_cov").get<double>()) + '\n';
    }
  }

  vcsched::SuiteOptions opts;
  opts.algorithm.phase2 = vcsched::parse_phase2_mode(a.phase2);
  opts.repetitions = a.reps;
  opts.attach_exact = !a.no_exact;
  opts.workers = a.workers;
  opts.seed = a.seed;
  vcsched::SuiteStats stats;
  const auto records = vcsched::run_suite(instances, algs, opts, &stats);

  std::string timing = "instance_id,algorithm,runtime_s\n";
  for (const auto& r : records) timing += r.instance_id + ',' + r.algorithm + ',' + fmt(r.runtime_s) + '\n';

  json meta = {{"manifest", manifest.value("set", "custom")},
               {"manifest_base_seed", manifest.value("base_seed", std::uint64_t{0})},
               {"algorithms", algs},
               {"phase2", a.phase2},
               {"solver_seed", a.seed},
               {"solver_seed_derivation", "splitmix64(seed ^ fnv1a64(instance_id))"},
               {"rng", vcsched::kRngAlgorithm},
               {"repetitions", a.reps},
               {"runtime_statistic", "median over repetitions, min-yield phase only"},
               {"exact_reference", !a.no_exact},
               {"degradation_convention",
                "instances nobody solved are skipped; an algorithm's failures are excluded "
                "from its own average"},
               {"validated_records", stats.validated},
               {"invalid_records", stats.invalid_records}};
  vcsched::write_text_file(path_in(a.out, "results.csv"), vcsched::emit_csv(records));
  vcsched::write_text_file(path_in(a.out, "timing.csv"), timing);
  vcsched::write_text_file(path_in(a.out, "specs.csv"), specs);
  vcsched::write_text_file(path_in(a.out, "metadata.json"), meta.dump(2) + "\n");
  std::cout << "wrote " << records.size() << " records to " << path_in(a.out, "results.csv")
            << "\n";
  return stats.invalid == 0 ? 0 : 1;
}

// ---- report ----

struct ReportArgs {
  std::string results;
  std::string specs;
  std::string out;
  std::string figure;
};

struct SpecInfo {
  double slack;
  double tasks;
};

std::map<std::string, SpecInfo> read_specs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::map<std::string, SpecInfo> out;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c = vcsched::detail::split_csv_line(line);
    if (c.size() != 6) throw std::runtime_error("malformed specs line: " + line);
    out[c[0]] = {std::stod(c[3]), std::stod(c[2])};
  }
  return out;
}

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> v = {"min-yield-vs-slack", "avg-yield-vs-slack",
                                             "failure-rate-vs-slack", "runtime-vs-tasks"};
  return v;
}

std::string figure_csv(const std::string& name, const std::vector<vcsched::ResultRecord>& records,
                       const std::map<std::string, SpecInfo>& specs) {
  auto slack = [&](const std::string& id) { return specs.at(id).slack; };
  auto tasks = [&](const std::string& id) { return specs.at(id).tasks; };
  std::string out;
  if (name == "runtime-vs-tasks") {
    out = "tasks,algorithm,value\n";
    for (const auto& r : vcsched::summarize_by(records, tasks)) {
      out += std::to_string(static_cast<std::size_t>(r.key)) + ',' + r.algorithm + ',' +
             fmt(r.runtime_s) + '\n';
    }
    return out;
  }
  out = "slack,algorithm,value\n";
  const bool refs = name == "min-yield-vs-slack";
  for (const auto& r : vcsched::summarize_by(records, slack, refs)) {
    std::string value;
    if (name == "min-yield-vs-slack") value = fmt(r.min_yield);
    if (name == "avg-yield-vs-slack") value = fmt(r.avg_task_yield);
    if (name == "failure-rate-vs-slack") value = fmt(r.failure_rate);
    out += fmt(r.key) + ',' + r.algorithm + ',' + value + '\n';
  }
  return out;
}

int cmd_report(const ReportArgs& a) {
  std::ifstream in(a.results, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open results file " + a.results);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto records = vcsched::parse_csv(buf.str());
  const std::string specs_path =
      a.specs.empty() ? (fs::path(a.results).parent_path() / "specs.csv").string() : a.specs;
  const auto specs = read_specs(specs_path);

  if (!a.figure.empty()) {
    const auto& names = figure_names();
    if (std::find(names.begin(), names.end(), a.figure) == names.end()) {
      throw UsageError("unknown figure: " + a.figure);
    }
    vcsched::write_text_file(path_in(a.out, a.figure + ".csv"), figure_csv(a.figure, records, specs));
    return 0;
  }

  const auto table = vcsched::degradation(records);
  std::string csv = "algorithm,avg_percent,max_percent,instances\n";
  std::printf("%-10s %12s %12s %10s\n", "algorithm", "avg_degr_%", "max_degr_%", "solved");
  for (const auto& r : table.rows) {
    csv += r.algorithm + ',' + fmt(r.avg_percent) + ',' + fmt(r.max_percent) + ',' +
           std::to_string(r.instances) + '\n';
    std::printf("%-10s %12.2f %12.2f %10zu\n", r.algorithm.c_str(), r.avg_percent, r.max_percent,
                r.instances);
  }
  vcsched::write_text_file(path_in(a.out, "degradation.csv"), csv);

  std::string summary = "slack,algorithm,total,successes,failure_rate,min_yield,avg_task_yield,"
                        "avg_job_yield,runtime_s\n";
  for (const auto& r : vcsched::summarize_by(
           records, [&](const std::string& id) { return specs.at(id).slack; }, true)) {
    summary += fmt(r.key) + ',' + r.algorithm + ',' + std::to_string(r.total) + ',' +
               std::to_string(r.successes) + ',' + fmt(r.failure_rate) + ',' + fmt(r.min_yield) +
               ',' + fmt(r.avg_task_yield) + ',' + fmt(r.avg_job_yield) + ',' + fmt(r.runtime_s) +
               '\n';
  }
  vcsched::write_text_file(path_in(a.out, "summary-by-slack.csv"), summary);
  for (const auto& f : figure_names()) {
    vcsched::write_text_file(path_in(a.out, f + ".csv"), figure_csv(f, records, specs));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Max-min yield placement of virtual clusters"};
  app.require_subcommand(1);

  GenerateArgs g;
  auto* gen = app.add_subcommand("generate", "Write synthetic instances and a manifest");
  gen->add_option("--out", g.out, "Output directory")->required()->check(CLI::ExistingDirectory);
  gen->add_option("--set", g.set, "Experiment grid")->check(CLI::IsMember({"small", "large"}));
  gen->add_option("--per-spec", g.per_spec, "Instances per grid point")->check(CLI::PositiveNumber);
  gen->add_option("--seed", g.seed, "Base seed");
  gen->add_option("--hosts", g.hosts, "Custom instance: host count")->check(CLI::PositiveNumber);
  gen->add_option("--jobs", g.jobs, "Custom instance: job count")->check(CLI::PositiveNumber);
  gen->add_option("--cpu", g.cpu, "Custom instance: mean cpu need")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--mem", g.mem, "Custom instance: mean memory need")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--slack", g.slack, "Custom instance: memory slack")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--cpu-cov", g.cpu_cov, "Custom instance: cpu coefficient of variation");
  gen->add_option("--mem-cov", g.mem_cov, "Custom instance: memory coefficient of variation");
  gen->add_flag("--parallel", g.parallel, "Draw task counts for parallel jobs");

  SolveArgs s;
  auto* solve = app.add_subcommand("solve", "Solve one instance");
  solve->add_option("--instance", s.instance, "Instance JSON")->required()->check(CLI::ExistingFile);
  solve->add_option("--alg", s.alg, "exact|relaxed-bound|gr|sg|gb|sgb|rrnd|rrnz|mcb1..mcb8")->required();
  solve->add_option("--phase2", s.phase2, "Average-yield pass")
      ->check(CLI::IsMember({"per-task", "per-job", "off"}));
  solve->add_option("--seed", s.seed, "Rounding seed");
  solve->add_option("--previous", s.previous, "Previous placement JSON")->check(CLI::ExistingFile);
  solve->add_option("--budget", s.budget, "Migration budget")->check(CLI::NonNegativeNumber);
  solve->add_option("--budget-unit", s.budget_unit, "Unit of --budget")
      ->check(CLI::IsMember({"fraction", "bytes", "count"}));
  solve->add_option("--host-mem-bytes", s.host_mem_bytes, "Host memory size for byte budgets")
      ->check(CLI::PositiveNumber);
  solve->add_option("--out", s.out, "Directory for solution.json")->check(CLI::ExistingDirectory);

  BenchArgs b;
  auto* bench = app.add_subcommand("bench", "Run algorithms over a manifest");
  bench->add_option("--manifest", b.manifest, "manifest.json from generate")
      ->required()
      ->check(CLI::ExistingFile);
  bench->add_option("--out", b.out, "Output directory")->required()->check(CLI::ExistingDirectory);
  bench->add_option("--alg", b.algs, "Algorithms (comma separated)")->delimiter(',');
  bench->add_option("--phase2", b.phase2, "Average-yield pass")
      ->check(CLI::IsMember({"per-task", "per-job", "off"}));
  bench->add_option("--seed", b.seed, "Base solver seed");
  bench->add_option("--jobs", b.workers, "Worker threads (0 = all cores)");
  bench->add_option("--reps", b.reps, "Timing repetitions")->check(CLI::PositiveNumber);
  bench->add_flag("--no-exact", b.no_exact, "Skip the exact reference column");

  ReportArgs r;
  auto* report = app.add_subcommand("report", "Degradation table and figure data");
  report->add_option("--results", r.results, "results.csv from bench")->required();
  report->add_option("--specs", r.specs, "specs.csv (default: next to results)");
  report->add_option("--out", r.out, "Output directory")->required()->check(CLI::ExistingDirectory);
  report->add_option("--figure", r.figure, "Write only this figure");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_generate(g);
    if (solve->parsed()) return cmd_solve(s);
    if (bench->parsed()) return cmd_bench(b);
    if (report->parsed()) return cmd_report(r);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 64;
  } catch (const vcsched::TooLargeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
