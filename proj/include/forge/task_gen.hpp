#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "forge/task.hpp"
#include "forge/templates.hpp"

namespace forge {

// Generation request for one synthetic task family. Unset fields fall back
// to per-task defaults (ranges chosen so the exact solvers stay fast).
struct TaskGenSpec {
  std::string task;
  int count = 1;
  std::optional<std::pair<int, int>> n_range;
  std::optional<std::pair<double, double>> p_range;
  std::optional<bool> directed;
};

const std::vector<std::string>& synth_task_names();
bool is_synth_task(const std::string& task);
std::string synth_task_level(const std::string& task);

// Shared binds for the graph description template: article, directedness,
// weight note, and the maximum node label.
std::map<std::string, std::string> description_binds(const AttributedGraph& g);

// One instance. index selects the balancing parity and the random stream;
// attempt_base offsets the retry stream so dedup can force a resample.
TaskInstance gen_task(const TaskGenSpec& spec, std::uint64_t root_seed,
                      std::size_t index, const TemplatePack& templates,
                      std::uint64_t attempt_base = 0);

// count instances, generated in parallel and deduplicated by content.
std::vector<TaskInstance> gen_batch(const TaskGenSpec& spec, std::uint64_t root_seed,
                                    const TemplatePack& templates, int jobs);

}  // namespace forge
