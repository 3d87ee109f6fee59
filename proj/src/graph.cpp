#include "forge/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <utility>

#include "forge/error.hpp"

namespace forge {
namespace {

bool flag_set(const AttrMap& attrs, const std::string& name) {
  auto it = attrs.find(name);
  return it != attrs.end() && it->second.kind() == AttrValue::Kind::Boolean &&
         it->second.as_boolean();
}

std::string join_ids(const std::vector<NodeId>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i != 0) out += ",";
    out += std::to_string(ids[i]);
  }
  return out;
}

}  // namespace

AttributedGraph::AttributedGraph(bool directed, std::vector<NodeRecord> nodes,
                                 std::vector<EdgeRecord> edges, AttrMap graph_attrs)
    : directed_(directed),
      nodes_(std::move(nodes)),
      edges_(std::move(edges)),
      graph_attrs_(std::move(graph_attrs)) {
  validate();
  rebuild_adjacency();
}

void AttributedGraph::validate() const {
  auto check_names = [](const AttrMap& attrs, const std::string& where) {
    for (const auto& [name, value] : attrs) {
      (void)value;
      if (name.empty()) {
        throw_error(ErrorCategory::Validation, where + " has an empty attribute name");
      }
      for (char c : name) {
        if (static_cast<unsigned char>(c) < 0x20 || c == 0x7f) {
          throw_error(ErrorCategory::Validation,
                      where + " attribute name contains control characters");
        }
      }
    }
  };
  check_names(graph_attrs_, "graph");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    check_names(nodes_[i].attrs, "node " + std::to_string(nodes_[i].id));
  }
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    check_names(edges_[i].attrs, "edge " + std::to_string(i));
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].id != static_cast<NodeId>(i)) {
      throw_error(ErrorCategory::Validation,
                  "node at index " + std::to_string(i) + " has id " +
                      std::to_string(nodes_[i].id) +
                      "; ids must be 0..n-1 in order");
    }
  }
  const bool allow_loops = flag_set(graph_attrs_, "allow_self_loops");
  const bool allow_multi = flag_set(graph_attrs_, "allow_multi");
  std::set<std::pair<NodeId, NodeId>> seen;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const EdgeRecord& e = edges_[i];
    if (e.src < 0 || e.src >= node_count() || e.dst < 0 || e.dst >= node_count()) {
      throw_error(ErrorCategory::Validation,
                  "edge " + std::to_string(i) + " (" + std::to_string(e.src) +
                      ", " + std::to_string(e.dst) + ") references a missing node");
    }
    if (e.src == e.dst && !allow_loops) {
      throw_error(ErrorCategory::Validation,
                  "edge " + std::to_string(i) + " is a self-loop on node " +
                      std::to_string(e.src));
    }
    if (!allow_multi) {
      std::pair<NodeId, NodeId> key{e.src, e.dst};
      if (!directed_ && key.first > key.second) std::swap(key.first, key.second);
      if (!seen.insert(key).second) {
        throw_error(ErrorCategory::Validation,
                    "edge " + std::to_string(i) + " duplicates pair (" +
                        std::to_string(key.first) + ", " +
                        std::to_string(key.second) + ")");
      }
    }
  }
}

void AttributedGraph::rebuild_adjacency() {
  adjacency_.assign(nodes_.size(), {});
  out_adjacency_.assign(nodes_.size(), {});
  in_adjacency_.assign(nodes_.size(), {});
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const EdgeRecord& e = edges_[i];
    const int idx = static_cast<int>(i);
    adjacency_[e.src].emplace_back(e.dst, idx);
    if (e.src != e.dst) adjacency_[e.dst].emplace_back(e.src, idx);
    out_adjacency_[e.src].emplace_back(e.dst, idx);
    in_adjacency_[e.dst].emplace_back(e.src, idx);
  }
}

const NodeRecord& AttributedGraph::node(NodeId v) const {
  if (!has_node(v)) {
    throw_error(ErrorCategory::Validation,
                "node " + std::to_string(v) + " does not exist");
  }
  return nodes_[static_cast<std::size_t>(v)];
}

const EdgeRecord* AttributedGraph::find_edge(NodeId u, NodeId v) const {
  if (!has_node(u) || !has_node(v)) return nullptr;
  for (const auto& [w, idx] : out_adjacency_[u]) {
    if (w == v) return &edges_[static_cast<std::size_t>(idx)];
  }
  if (!directed_) {
    for (const auto& [w, idx] : out_adjacency_[v]) {
      if (w == u) return &edges_[static_cast<std::size_t>(idx)];
    }
  }
  return nullptr;
}

bool AttributedGraph::connects(NodeId u, NodeId v) const {
  if (!has_node(u) || !has_node(v)) return false;
  for (const auto& [w, idx] : adjacency_[u]) {
    (void)idx;
    if (w == v) return true;
  }
  return false;
}

int AttributedGraph::degree(NodeId v) const {
  node(v);
  // Each edge contributes one out slot at src and one in slot at dst, so this
  // sum is the incident count for undirected graphs (self-loops twice) and
  // in-degree + out-degree for digraphs.
  return static_cast<int>(out_adjacency_[v].size() + in_adjacency_[v].size());
}

std::vector<NodeId> AttributedGraph::neighbors(NodeId v, NeighborMode mode) const {
  node(v);
  const auto* lists = &adjacency_;
  if (directed_ && mode == NeighborMode::Out) lists = &out_adjacency_;
  if (directed_ && mode == NeighborMode::In) lists = &in_adjacency_;
  std::set<NodeId> distinct;
  for (const auto& [w, idx] : (*lists)[v]) {
    (void)idx;
    distinct.insert(w);
  }
  return {distinct.begin(), distinct.end()};
}

AttributedGraph AttributedGraph::induced(const std::vector<NodeId>& keep) const {
  std::vector<int> relabel(nodes_.size(), -1);
  std::vector<NodeRecord> new_nodes;
  new_nodes.reserve(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    relabel[static_cast<std::size_t>(keep[i])] = static_cast<int>(i);
    NodeRecord rec = nodes_[static_cast<std::size_t>(keep[i])];
    rec.id = static_cast<NodeId>(i);
    new_nodes.push_back(std::move(rec));
  }
  std::vector<EdgeRecord> new_edges;
  for (const EdgeRecord& e : edges_) {
    const int s = relabel[static_cast<std::size_t>(e.src)];
    const int d = relabel[static_cast<std::size_t>(e.dst)];
    if (s < 0 || d < 0) continue;
    new_edges.push_back({s, d, e.attrs});
  }
  AttrMap attrs = graph_attrs_;
  attrs.insert_or_assign("ego_original_ids", AttrValue::text(join_ids(keep)));
  return AttributedGraph(directed_, std::move(new_nodes), std::move(new_edges),
                         std::move(attrs));
}

AttributedGraph AttributedGraph::ego_graph(NodeId center, int radius) const {
  node(center);
  if (radius < 0) {
    throw_error(ErrorCategory::Validation, "ego radius must be non-negative");
  }
  std::vector<int> depth(nodes_.size(), -1);
  std::deque<NodeId> frontier{center};
  depth[static_cast<std::size_t>(center)] = 0;
  while (!frontier.empty()) {
    const NodeId v = frontier.front();
    frontier.pop_front();
    if (depth[static_cast<std::size_t>(v)] == radius) continue;
    for (const auto& [w, idx] : adjacency_[v]) {
      (void)idx;
      if (depth[static_cast<std::size_t>(w)] < 0) {
        depth[static_cast<std::size_t>(w)] = depth[static_cast<std::size_t>(v)] + 1;
        frontier.push_back(w);
      }
    }
  }
  std::vector<NodeId> keep;
  for (std::size_t v = 0; v < nodes_.size(); ++v) {
    if (depth[v] >= 0) keep.push_back(static_cast<NodeId>(v));
  }
  return induced(keep);
}

AttributedGraph AttributedGraph::ego_graph(NodeId u, NodeId v, int radius) const {
  node(u);
  node(v);
  if (radius < 0) {
    throw_error(ErrorCategory::Validation, "ego radius must be non-negative");
  }
  std::vector<int> depth(nodes_.size(), -1);
  std::deque<NodeId> frontier;
  depth[static_cast<std::size_t>(u)] = 0;
  frontier.push_back(u);
  if (depth[static_cast<std::size_t>(v)] < 0) {
    depth[static_cast<std::size_t>(v)] = 0;
    frontier.push_back(v);
  }
  while (!frontier.empty()) {
    const NodeId x = frontier.front();
    frontier.pop_front();
    if (depth[static_cast<std::size_t>(x)] == radius) continue;
    for (const auto& [w, idx] : adjacency_[x]) {
      (void)idx;
      if (depth[static_cast<std::size_t>(w)] < 0) {
        depth[static_cast<std::size_t>(w)] = depth[static_cast<std::size_t>(x)] + 1;
        frontier.push_back(w);
      }
    }
  }
  std::vector<NodeId> keep;
  for (std::size_t x = 0; x < nodes_.size(); ++x) {
    if (depth[x] >= 0) keep.push_back(static_cast<NodeId>(x));
  }
  return induced(keep);
}

NodeId GraphBuilder::add_node(AttrMap attrs) {
  const NodeId id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back({id, std::move(attrs)});
  return id;
}

void GraphBuilder::add_edge(NodeId src, NodeId dst, AttrMap attrs) {
  edges_.push_back({src, dst, std::move(attrs)});
}

void GraphBuilder::set_graph_attr(const std::string& name, AttrValue value) {
  graph_attrs_.insert_or_assign(name, std::move(value));
}

bool GraphBuilder::has_edge(NodeId u, NodeId v) const {
  for (const EdgeRecord& e : edges_) {
    if (directed_) {
      if (e.src == u && e.dst == v) return true;
    } else {
      if ((e.src == u && e.dst == v) || (e.src == v && e.dst == u)) return true;
    }
  }
  return false;
}

AttributedGraph GraphBuilder::build() && {
  return AttributedGraph(directed_, std::move(nodes_), std::move(edges_),
                         std::move(graph_attrs_));
}

}  // namespace forge
