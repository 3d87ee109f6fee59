#pragma once

#include <optional>
#include <string>
#include <vector>

#include "forge/attr_value.hpp"

namespace forge {

using NodeId = int;

struct NodeRecord {
  NodeId id = 0;
  AttrMap attrs;

  bool operator==(const NodeRecord&) const = default;
};

struct EdgeRecord {
  NodeId src = 0;
  NodeId dst = 0;
  AttrMap attrs;

  bool operator==(const EdgeRecord&) const = default;
};

enum class NeighborMode { All, Out, In };

// Directed or undirected attributed graph. Node ids are the contiguous
// integers 0..n-1. Undirected graphs are simple (one edge per unordered
// pair, no self-loops) unless graph_attrs carries "allow_multi" /
// "allow_self_loops" set to true. Immutable after construction; adjacency
// is prebuilt so read-only sharing across workers is safe.
class AttributedGraph {
public:
  AttributedGraph() { rebuild_adjacency(); }

  AttributedGraph(bool directed, std::vector<NodeRecord> nodes,
                  std::vector<EdgeRecord> edges, AttrMap graph_attrs = {});

  bool directed() const noexcept { return directed_; }
  int node_count() const noexcept { return static_cast<int>(nodes_.size()); }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }

  const std::vector<NodeRecord>& nodes() const noexcept { return nodes_; }
  const std::vector<EdgeRecord>& edges() const noexcept { return edges_; }
  const AttrMap& graph_attrs() const noexcept { return graph_attrs_; }

  const NodeRecord& node(NodeId v) const;
  bool has_node(NodeId v) const noexcept {
    return v >= 0 && v < node_count();
  }

  // First edge connecting u and v (respecting direction in digraphs).
  const EdgeRecord* find_edge(NodeId u, NodeId v) const;
  bool has_edge(NodeId u, NodeId v) const { return find_edge(u, v) != nullptr; }
  // Ignores direction.
  bool connects(NodeId u, NodeId v) const;

  // Undirected: incident edge count (self-loops count twice).
  // Directed: in-degree + out-degree.
  int degree(NodeId v) const;

  // Sorted distinct adjacent node ids. Directed graphs default to the union
  // of in- and out-neighbors.
  std::vector<NodeId> neighbors(NodeId v, NeighborMode mode = NeighborMode::All) const;

  // Induced subgraph on nodes within the given hop radius of the center
  // (hops ignore edge direction). Node ids are relabeled to 0..k-1 in
  // ascending original-id order; graph_attrs of the result records the
  // original ids under "ego_original_ids".
  AttributedGraph ego_graph(NodeId center, int radius) const;
  AttributedGraph ego_graph(NodeId u, NodeId v, int radius) const;

  bool operator==(const AttributedGraph& other) const {
    return directed_ == other.directed_ && nodes_ == other.nodes_ &&
           edges_ == other.edges_ && graph_attrs_ == other.graph_attrs_;
  }
  bool operator!=(const AttributedGraph& other) const { return !(*this == other); }

private:
  void validate() const;
  void rebuild_adjacency();
  AttributedGraph induced(const std::vector<NodeId>& keep) const;

  bool directed_ = false;
  std::vector<NodeRecord> nodes_;
  std::vector<EdgeRecord> edges_;
  AttrMap graph_attrs_;

  // adjacency_[v] holds (neighbor, edge index); for directed graphs
  // out_adjacency_ holds only outgoing arcs.
  std::vector<std::vector<std::pair<NodeId, int>>> adjacency_;
  std::vector<std::vector<std::pair<NodeId, int>>> out_adjacency_;
  std::vector<std::vector<std::pair<NodeId, int>>> in_adjacency_;
};

// Incremental construction front-end; AttributedGraph itself stays immutable.
class GraphBuilder {
public:
  explicit GraphBuilder(bool directed = false) : directed_(directed) {}

  NodeId add_node(AttrMap attrs = {});
  void add_edge(NodeId src, NodeId dst, AttrMap attrs = {});
  void set_graph_attr(const std::string& name, AttrValue value);
  void reserve_nodes(std::size_t n) { nodes_.reserve(n); }

  int node_count() const noexcept { return static_cast<int>(nodes_.size()); }
  bool has_edge(NodeId u, NodeId v) const;

  AttributedGraph build() &&;

private:
  bool directed_;
  std::vector<NodeRecord> nodes_;
  std::vector<EdgeRecord> edges_;
  AttrMap graph_attrs_;
};

}  // namespace forge
