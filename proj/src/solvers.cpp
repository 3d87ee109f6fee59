#include "forge/solvers.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "forge/error.hpp"

namespace forge {
namespace {

std::int64_t int_attr(const AttrMap& attrs, const std::string& name,
                      const std::string& where) {
  auto it = attrs.find(name);
  if (it == attrs.end() || !it->second.is_integer()) {
    throw_error(ErrorCategory::Validation,
                where + " is missing integer attribute \"" + name + "\"");
  }
  return it->second.as_integer();
}

}  // namespace

std::optional<PathResult> shortest_path(const AttributedGraph& g, NodeId src,
                                        NodeId dst, bool weighted,
                                        const std::string& weight_attr) {
  g.node(src);
  g.node(dst);
  const int n = g.node_count();
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
  std::vector<std::int64_t> dist(static_cast<std::size_t>(n), kInf);
  std::vector<NodeId> parent(static_cast<std::size_t>(n), -1);

  // Edge relaxation order is id-ascending, so equal-length paths resolve to
  // one canonical witness.
  auto relax_all = [&](NodeId u, auto&& visit) {
    for (NodeId v : g.neighbors(u, g.directed() ? NeighborMode::Out
                                                : NeighborMode::All)) {
      std::int64_t w = 1;
      if (weighted) {
        const EdgeRecord* e = g.find_edge(u, v);
        if (e == nullptr) continue;
        w = int_attr(e->attrs, weight_attr,
                     "edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
        if (w < 0) {
          throw_error(ErrorCategory::Validation, "negative edge weight");
        }
      }
      visit(v, w);
    }
  };

  if (weighted) {
    using Item = std::pair<std::int64_t, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    dist[static_cast<std::size_t>(src)] = 0;
    heap.push({0, src});
    while (!heap.empty()) {
      const auto [d, u] = heap.top();
      heap.pop();
      if (d != dist[static_cast<std::size_t>(u)]) continue;
      relax_all(u, [&](NodeId v, std::int64_t w) {
        if (d + w < dist[static_cast<std::size_t>(v)]) {
          dist[static_cast<std::size_t>(v)] = d + w;
          parent[static_cast<std::size_t>(v)] = u;
          heap.push({d + w, v});
        }
      });
    }
  } else {
    std::queue<NodeId> frontier;
    dist[static_cast<std::size_t>(src)] = 0;
    frontier.push(src);
    while (!frontier.empty()) {
      const NodeId u = frontier.front();
      frontier.pop();
      relax_all(u, [&](NodeId v, std::int64_t) {
        if (dist[static_cast<std::size_t>(v)] == kInf) {
          dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
          parent[static_cast<std::size_t>(v)] = u;
          frontier.push(v);
        }
      });
    }
  }

  if (dist[static_cast<std::size_t>(dst)] == kInf) return std::nullopt;
  PathResult out;
  out.length = dist[static_cast<std::size_t>(dst)];
  for (NodeId v = dst; v != -1; v = parent[static_cast<std::size_t>(v)]) {
    out.path.push_back(v);
  }
  std::reverse(out.path.begin(), out.path.end());
  return out;
}

std::optional<TriangleResult> max_triangle_sum(const AttributedGraph& g,
                                               const std::string& weight_attr) {
  const int n = g.node_count();
  std::optional<TriangleResult> best;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!g.connects(i, j)) continue;
      for (int k = j + 1; k < n; ++k) {
        if (!g.connects(j, k) || !g.connects(i, k)) continue;
        const std::int64_t sum =
            int_attr(g.node(i).attrs, weight_attr, "node " + std::to_string(i)) +
            int_attr(g.node(j).attrs, weight_attr, "node " + std::to_string(j)) +
            int_attr(g.node(k).attrs, weight_attr, "node " + std::to_string(k));
        if (!best || sum > best->sum) {
          best = TriangleResult{sum, {i, j, k}};
        }
      }
    }
  }
  return best;
}

namespace {

bool hamilton_extend(const AttributedGraph& g, std::vector<NodeId>& path,
                     std::vector<bool>& used) {
  const int n = g.node_count();
  if (static_cast<int>(path.size()) == n) return true;
  const NodeId tail = path.back();

  // Dead-end prune: an unvisited node with no unvisited neighbor can never be
  // reached later unless it is the immediate next hop.
  for (int v = 0; v < n; ++v) {
    if (used[static_cast<std::size_t>(v)]) continue;
    bool open = false;
    for (NodeId w : g.neighbors(v)) {
      if (!used[static_cast<std::size_t>(w)] || w == tail) {
        open = true;
        break;
      }
    }
    if (!open) return false;
  }

  for (NodeId v : g.neighbors(tail)) {
    if (used[static_cast<std::size_t>(v)]) continue;
    used[static_cast<std::size_t>(v)] = true;
    path.push_back(v);
    if (hamilton_extend(g, path, used)) return true;
    path.pop_back();
    used[static_cast<std::size_t>(v)] = false;
  }
  return false;
}

}  // namespace

std::optional<std::vector<NodeId>> find_hamilton_path(const AttributedGraph& g) {
  const int n = g.node_count();
  if (n == 0) return std::nullopt;
  if (n == 1) return std::vector<NodeId>{0};
  for (NodeId start = 0; start < n; ++start) {
    std::vector<NodeId> path{start};
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    used[static_cast<std::size_t>(start)] = true;
    if (hamilton_extend(g, path, used)) return path;
  }
  return std::nullopt;
}

namespace {

bool subgraph_extend(const AttributedGraph& host, const AttributedGraph& pattern,
                     std::vector<NodeId>& map, std::vector<bool>& taken) {
  const int pn = pattern.node_count();
  const int next = static_cast<int>(
      std::find(map.begin(), map.end(), -1) - map.begin());
  if (next == pn) return true;
  for (NodeId cand = 0; cand < host.node_count(); ++cand) {
    if (taken[static_cast<std::size_t>(cand)]) continue;
    bool fits = true;
    for (const EdgeRecord& e : pattern.edges()) {
      NodeId a = -1;
      NodeId b = -1;
      if (e.src == next) {
        a = cand;
        b = map[static_cast<std::size_t>(e.dst)];
      } else if (e.dst == next) {
        a = map[static_cast<std::size_t>(e.src)];
        b = cand;
      } else {
        continue;
      }
      if (a == -1 || b == -1) continue;  // other endpoint not mapped yet
      const bool present = host.directed() ? host.has_edge(a, b) : host.connects(a, b);
      if (!present) {
        fits = false;
        break;
      }
    }
    if (!fits) continue;
    map[static_cast<std::size_t>(next)] = cand;
    taken[static_cast<std::size_t>(cand)] = true;
    if (subgraph_extend(host, pattern, map, taken)) return true;
    map[static_cast<std::size_t>(next)] = -1;
    taken[static_cast<std::size_t>(cand)] = false;
  }
  return false;
}

}  // namespace

std::optional<std::vector<NodeId>> find_subgraph(const AttributedGraph& host,
                                                 const AttributedGraph& pattern) {
  if (pattern.node_count() == 0) return std::vector<NodeId>{};
  if (pattern.node_count() > host.node_count()) return std::nullopt;
  if (pattern.directed() != host.directed()) {
    throw_error(ErrorCategory::Validation,
                "pattern and host graph must agree on directedness");
  }
  std::vector<NodeId> map(static_cast<std::size_t>(pattern.node_count()), -1);
  std::vector<bool> taken(static_cast<std::size_t>(host.node_count()), false);
  if (subgraph_extend(host, pattern, map, taken)) return map;
  return std::nullopt;
}

namespace {

bool is_connected(const AttributedGraph& g) {
  const int n = g.node_count();
  if (n == 0) return false;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::queue<NodeId> frontier;
  frontier.push(0);
  seen[0] = true;
  int reached = 1;
  while (!frontier.empty()) {
    const NodeId u = frontier.front();
    frontier.pop();
    for (NodeId v : g.neighbors(u)) {
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = true;
        ++reached;
        frontier.push(v);
      }
    }
  }
  return reached == n;
}

// Two-colors the graph; empty result when an odd cycle exists.
std::optional<std::vector<int>> bipartition(const AttributedGraph& g) {
  const int n = g.node_count();
  std::vector<int> color(static_cast<std::size_t>(n), -1);
  for (int start = 0; start < n; ++start) {
    if (color[static_cast<std::size_t>(start)] != -1) continue;
    color[static_cast<std::size_t>(start)] = 0;
    std::queue<NodeId> frontier;
    frontier.push(start);
    while (!frontier.empty()) {
      const NodeId u = frontier.front();
      frontier.pop();
      for (NodeId v : g.neighbors(u)) {
        if (color[static_cast<std::size_t>(v)] == -1) {
          color[static_cast<std::size_t>(v)] = 1 - color[static_cast<std::size_t>(u)];
          frontier.push(v);
        } else if (color[static_cast<std::size_t>(v)] ==
                   color[static_cast<std::size_t>(u)]) {
          return std::nullopt;
        }
      }
    }
  }
  return color;
}

}  // namespace

const std::vector<std::string>& structure_labels() {
  static const std::vector<std::string> labels{
      "cycle", "path", "star", "complete", "tree", "bipartite-complete", "general"};
  return labels;
}

std::string classify_structure(const AttributedGraph& g) {
  if (g.directed()) {
    throw_error(ErrorCategory::Validation,
                "structure classification expects an undirected graph");
  }
  const int n = g.node_count();
  const int m = g.edge_count();
  if (n == 0) return "general";
  const bool connected = is_connected(g);

  std::vector<int> degree(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) degree[static_cast<std::size_t>(v)] = g.degree(v);

  if (connected && n >= 3 && m == n &&
      std::all_of(degree.begin(), degree.end(), [](int d) { return d == 2; })) {
    return "cycle";
  }
  if (connected && n >= 2 && m == n - 1 &&
      std::all_of(degree.begin(), degree.end(), [](int d) { return d <= 2; })) {
    return "path";
  }
  if (connected && n >= 3 && m == n - 1) {
    const int hubs = static_cast<int>(
        std::count_if(degree.begin(), degree.end(),
                      [n](int d) { return d == n - 1; }));
    const int leaves = static_cast<int>(
        std::count_if(degree.begin(), degree.end(), [](int d) { return d == 1; }));
    if (hubs == 1 && leaves == n - 1) return "star";
  }
  if (n >= 2 && connected && m == n * (n - 1) / 2) return "complete";
  if (connected && m == n - 1) return "tree";
  if (connected) {
    const auto color = bipartition(g);
    if (color) {
      const int a = static_cast<int>(std::count(color->begin(), color->end(), 0));
      const int b = n - a;
      if (a >= 1 && b >= 1 && m == a * b) return "bipartite-complete";
    }
  }
  return "general";
}

namespace {

void automorphism_extend(const AttributedGraph& g, const std::vector<int>& degree,
                         std::vector<NodeId>& perm, std::vector<bool>& taken,
                         int next, std::int64_t& count) {
  const int n = g.node_count();
  if (next == n) {
    ++count;
    return;
  }
  for (NodeId image = 0; image < n; ++image) {
    if (taken[static_cast<std::size_t>(image)]) continue;
    if (degree[static_cast<std::size_t>(image)] !=
        degree[static_cast<std::size_t>(next)]) {
      continue;
    }
    bool consistent = true;
    for (int prev = 0; prev < next; ++prev) {
      const bool in_graph = g.directed()
                                ? g.has_edge(prev, next)
                                : g.connects(prev, next);
      const bool in_image =
          g.directed()
              ? g.has_edge(perm[static_cast<std::size_t>(prev)], image)
              : g.connects(perm[static_cast<std::size_t>(prev)], image);
      bool ok = in_graph == in_image;
      if (ok && g.directed()) {
        ok = g.has_edge(next, prev) ==
             g.has_edge(image, perm[static_cast<std::size_t>(prev)]);
      }
      if (!ok) {
        consistent = false;
        break;
      }
    }
    if (!consistent) continue;
    perm[static_cast<std::size_t>(next)] = image;
    taken[static_cast<std::size_t>(image)] = true;
    automorphism_extend(g, degree, perm, taken, next + 1, count);
    taken[static_cast<std::size_t>(image)] = false;
  }
}

}  // namespace

std::int64_t count_automorphisms(const AttributedGraph& g) {
  const int n = g.node_count();
  if (n == 0) return 1;
  std::vector<int> degree(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) degree[static_cast<std::size_t>(v)] = g.degree(v);
  std::vector<NodeId> perm(static_cast<std::size_t>(n), -1);
  std::vector<bool> taken(static_cast<std::size_t>(n), false);
  std::int64_t count = 0;
  automorphism_extend(g, degree, perm, taken, 0, count);
  return count;
}

}  // namespace forge
