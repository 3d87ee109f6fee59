#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "forge/task.hpp"
#include "forge/templates.hpp"

namespace forge {

// One real-graph dataset: where the graph lives, what is predicted, and the
// domain prose wrapped around each extracted instance.
struct SemanticTaskConfig {
  std::string name;         // dataset id, also the sample id prefix
  std::string graph_file;   // graph JSON file; a directory for graph level
  std::string level;        // node | link | graph | open-ended
  std::string type;         // multiclass | binary | ordinal-regression |
                            // regression | text-generation
  std::string target_attr;  // empty with level=link, type=binary selects
                            // link prediction
  int ego_radius = 0;       // 0 picks the level default (node 2, link 1)
  std::string description;  // domain prose template
  std::string query;        // query template; {target} or {src}/{dst} binds
  std::string answer;       // answer prose template, default from the pack
  std::vector<std::string> label_set;  // classification choices
  std::string split_attr;   // respect-original split source
};

SemanticTaskConfig parse_semantic_config(const nlohmann::json& j);
SemanticTaskConfig load_semantic_config(const std::string& path);

std::string semantic_metric(const std::string& type);

// Extracts one instance per labeled element: ego subgraph around the target
// (relabeled from 0), target and split attributes stripped everywhere, the
// queried edge removed for link-level instances. Link prediction pairs each
// positive edge with one seeded non-edge negative. Classification instances
// are marked for the label-leakage check applied at render time.
std::vector<TaskInstance> build_semantic_instances(const SemanticTaskConfig& cfg,
                                                   std::uint64_t root_seed,
                                                   const TemplatePack& templates,
                                                   int jobs);

}  // namespace forge
