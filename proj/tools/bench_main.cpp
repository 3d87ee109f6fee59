#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "forge/augment.hpp"
#include "forge/error.hpp"
#include "forge/parallel.hpp"
#include "forge/sample.hpp"
#include "forge/task_gen.hpp"

namespace {

// Generation plus full four-format rendering for `count` instances; returns
// the concatenated sample JSONL so runs can be compared byte for byte.
std::string run_pipeline(const std::string& task, int count,
                         std::uint64_t seed, int jobs, double* seconds) {
  forge::TaskGenSpec spec;
  spec.task = task;
  spec.count = count;
  forge::AugmentPlan plan;
  for (auto kind : forge::all_format_kinds()) {
    plan.formats.push_back(forge::FormatSpec{kind, false});
  }
  plan.tae = true;
  plan.fmae.enabled = true;

  const auto& templates = forge::builtin_templates();
  const auto start = std::chrono::steady_clock::now();
  auto instances = forge::gen_batch(spec, seed, templates, jobs);
  std::vector<std::vector<forge::InstructionSample>> rendered(instances.size());
  forge::parallel_for(instances.size(), jobs, [&](std::size_t i) {
    rendered[i] = forge::expand_instance(instances[i], plan, task, i, templates,
                                         templates.version);
  });
  const auto stop = std::chrono::steady_clock::now();
  *seconds = std::chrono::duration<double>(stop - start).count();

  std::string blob;
  for (const auto& group : rendered) {
    for (const auto& s : group) {
      blob += forge::sample_to_json(s).dump();
      blob += '\n';
    }
  }
  return blob;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs parallel pipeline benchmark"};
  std::string task = "shortest_path";
  int count = 200;
  std::uint64_t seed = 7;
  int jobs = forge::default_jobs();
  app.add_option("--task", task, "synthetic task to generate");
  app.add_option("--count", count, "instances per run")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "generation seed");
  app.add_option("--jobs", jobs, "threads for the parallel run")
      ->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  try {
    double serial_s = 0.0;
    double parallel_s = 0.0;
    const std::string serial = run_pipeline(task, count, seed, 1, &serial_s);
    const std::string parallel = run_pipeline(task, count, seed, jobs, &parallel_s);

    std::printf("task=%s count=%d seed=%llu\n", task.c_str(), count,
                static_cast<unsigned long long>(seed));
    std::printf("%-10s %8s %12s\n", "variant", "jobs", "seconds");
    std::printf("%-10s %8d %12.3f\n", "serial", 1, serial_s);
    std::printf("%-10s %8d %12.3f\n", "parallel", jobs, parallel_s);
    if (parallel_s > 0.0) {
      std::printf("speedup: %.2fx\n", serial_s / parallel_s);
    }
    if (serial != parallel) {
      std::fprintf(stderr,
                   "forge-bench: error: serial and parallel outputs differ\n");
      return 1;
    }
    std::printf("outputs identical: %zu bytes\n", serial.size());
    return 0;
  } catch (const forge::Error& e) {
    std::fprintf(stderr, "forge-bench: error: %s: %s\n",
                 std::string(forge::to_string(e.category())).c_str(), e.what());
    return 1;
  }
}
