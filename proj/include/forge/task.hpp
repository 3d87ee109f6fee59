#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "forge/answer.hpp"
#include "forge/graph.hpp"

namespace forge {

// What the question is about within its graph.
struct Target {
  enum class Kind { None, Node, Edge };
  Kind kind = Kind::None;
  NodeId a = -1;
  NodeId b = -1;

  static Target none() { return {}; }
  static Target node(NodeId v) { return {Kind::Node, v, -1}; }
  static Target edge(NodeId u, NodeId v) { return {Kind::Edge, u, v}; }
};

// One question over one graph, fully resolved: reference answer, how to
// verify predictions, and the rendered prose pieces. Instances are format
// agnostic; rendering a graph exchange format happens later.
struct TaskInstance {
  std::string task;
  std::string level;    // entity | path | structure | node | link | graph | ssl
  std::string metric;   // accuracy | rmse | rouge_l
  AttributedGraph graph;
  Target target;

  std::string description;   // prose before the graph text
  std::string query;         // prose after the graph text
  std::string answer_prose;  // reference explanation before the final answer line

  CanonicalAnswer answer;
  VerifyRule verifier;

  // Verification context for witness-accepting rules.
  bool weighted_paths = false;
  std::int64_t optimal_length = -1;
  std::vector<NodeId> witness;

  std::uint64_t seed = 0;
  std::map<std::string, std::string> extra;  // task-specific metadata
};

VerifyContext verify_context(const TaskInstance& inst);

}  // namespace forge
