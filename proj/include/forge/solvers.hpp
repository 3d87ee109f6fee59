#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "forge/graph.hpp"

namespace forge {

// Exact solvers for the synthetic question families. Each returns a witness
// where one exists so verification can accept alternative optima later. All
// tie-breaks are deterministic (lowest id first).

struct PathResult {
  std::int64_t length = 0;
  std::vector<NodeId> path;  // src..dst inclusive
};

// Dijkstra over non-negative integer weights; plain BFS when unweighted.
// nullopt when dst is unreachable from src.
std::optional<PathResult> shortest_path(const AttributedGraph& g, NodeId src,
                                        NodeId dst, bool weighted,
                                        const std::string& weight_attr = "weight");

struct TriangleResult {
  std::int64_t sum = 0;
  std::array<NodeId, 3> nodes{};  // ascending ids
};

// Maximum node-weight sum over all triangles; exhaustive over i<j<k.
std::optional<TriangleResult> max_triangle_sum(const AttributedGraph& g,
                                               const std::string& weight_attr = "weight");

// Backtracking with a dead-end prune; intended for n <= 12.
std::optional<std::vector<NodeId>> find_hamilton_path(const AttributedGraph& g);

// Injective mapping pattern node -> host node preserving pattern edges
// (non-induced). Returns the mapping indexed by pattern id, or nullopt.
std::optional<std::vector<NodeId>> find_subgraph(const AttributedGraph& host,
                                                 const AttributedGraph& pattern);

// One of: cycle, path, star, complete, tree, bipartite-complete, general.
// Families are checked in that order, so a graph matching several names gets
// the most specific one (C3 is "cycle", not "complete").
std::string classify_structure(const AttributedGraph& g);
const std::vector<std::string>& structure_labels();

// Number of adjacency-preserving node permutations; backtracking with degree
// pruning, intended for n <= 8.
std::int64_t count_automorphisms(const AttributedGraph& g);

}  // namespace forge
