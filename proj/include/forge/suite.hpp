#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "forge/augment.hpp"
#include "forge/corpus.hpp"
#include "forge/semantic.hpp"
#include "forge/task_gen.hpp"

namespace forge {

// Whole-corpus build description: synthetic task batches, real-graph
// datasets, the expansion plan, and the split sizes.
struct SuiteConfig {
  std::uint64_t seed = 0;
  std::string templates_path;  // empty = builtin pack
  std::vector<TaskGenSpec> tasks;
  std::vector<SemanticTaskConfig> semantic;
  AugmentPlan augment;
  SplitSpec split;
  bool respect_original_splits = false;
  std::uint64_t config_hash = 0;  // of the raw config bytes
};

SuiteConfig parse_suite_config(const nlohmann::json& j);
SuiteConfig load_suite_config(const std::string& path);

struct BuildOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> templates_path;
  int jobs = 0;  // 0 = default
};

// Generation stage only: instances for every dataset, keyed by dataset name.
std::vector<std::pair<std::string, std::vector<TaskInstance>>> generate_instances(
    const SuiteConfig& cfg, const BuildOverrides& overrides);

// Full pipeline: generate, split, expand, assemble. Deterministic for a
// fixed config and seed, independent of the job count.
Corpus build_corpus(const SuiteConfig& cfg, const BuildOverrides& overrides);

}  // namespace forge
