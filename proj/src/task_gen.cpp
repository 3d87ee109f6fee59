#include "forge/task_gen.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "forge/er.hpp"
#include "forge/error.hpp"
#include "forge/graph_json.hpp"
#include "forge/parallel.hpp"
#include "forge/rng.hpp"
#include "forge/solvers.hpp"

namespace forge {
namespace {

constexpr int kAttemptBudget = 1000;

struct TaskDefaults {
  std::string level;
  std::pair<int, int> n_range;
  std::pair<double, double> p_range;
  bool node_weights = false;
  bool edge_weights = false;
  bool allow_directed = true;
};

const std::map<std::string, TaskDefaults>& task_defaults() {
  static const std::map<std::string, TaskDefaults> defaults{
      {"graph_size_node", {"entity", {5, 25}, {0.2, 0.5}, false, false, true}},
      {"graph_size_edge", {"entity", {5, 25}, {0.2, 0.5}, false, false, true}},
      {"attr_retrieval_node", {"entity", {5, 25}, {0.2, 0.5}, true, false, true}},
      {"attr_retrieval_edge", {"entity", {5, 25}, {0.2, 0.5}, false, true, true}},
      {"degree_count", {"entity", {5, 25}, {0.2, 0.5}, false, false, true}},
      {"shortest_path", {"path", {5, 12}, {0.3, 0.6}, false, true, true}},
      {"max_triangle_sum", {"path", {5, 12}, {0.4, 0.7}, true, false, false}},
      {"hamilton_path", {"path", {5, 12}, {0.2, 0.6}, false, false, false}},
      {"subgraph_matching", {"structure", {5, 9}, {0.2, 0.6}, false, false, false}},
      {"graph_structure", {"structure", {4, 8}, {0.3, 0.7}, false, false, false}},
      {"graph_automorphism", {"structure", {4, 8}, {0.2, 0.6}, false, false, false}},
  };
  return defaults;
}

const TaskDefaults& defaults_for(const std::string& task) {
  auto it = task_defaults().find(task);
  if (it == task_defaults().end()) {
    throw_error(ErrorCategory::Config, "unknown task \"" + task + "\"");
  }
  return it->second;
}

std::string join_ints(const std::vector<int>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i != 0) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

AttributedGraph with_node_weights(const AttributedGraph& g, Rng& rng, int lo, int hi) {
  std::vector<NodeRecord> nodes = g.nodes();
  for (NodeRecord& n : nodes) {
    n.attrs.insert_or_assign("weight",
                             AttrValue::integer(rng.uniform_int(lo, hi)));
  }
  return AttributedGraph(g.directed(), std::move(nodes), g.edges(), g.graph_attrs());
}

// Uniform random relabeling; families are built in canonical form first so
// node ids carry no signal about the structure type.
AttributedGraph permute_labels(const AttributedGraph& g, Rng& rng) {
  const int n = g.node_count();
  std::vector<NodeId> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  rng.shuffle(perm);
  std::vector<NodeRecord> nodes(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    nodes[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = {
        perm[static_cast<std::size_t>(i)], g.node(i).attrs};
  }
  std::vector<EdgeRecord> edges;
  edges.reserve(g.edges().size());
  for (const EdgeRecord& e : g.edges()) {
    edges.push_back({perm[static_cast<std::size_t>(e.src)],
                     perm[static_cast<std::size_t>(e.dst)], e.attrs});
  }
  return AttributedGraph(g.directed(), std::move(nodes), std::move(edges),
                         g.graph_attrs());
}

AttributedGraph build_family(const std::string& family, int lo, int hi, Rng& rng) {
  const auto pick_n = [&](int family_lo) {
    const int floor_n = std::max(lo, family_lo);
    if (hi < floor_n) {
      throw_error(ErrorCategory::Config,
                  "node range too small for structure family \"" + family + "\"");
    }
    return static_cast<int>(rng.uniform_int(floor_n, hi));
  };

  GraphBuilder b(false);
  if (family == "cycle") {
    const int n = pick_n(3);
    for (int i = 0; i < n; ++i) b.add_node();
    for (int i = 0; i < n; ++i) b.add_edge(i, (i + 1) % n);
    return std::move(b).build();
  }
  if (family == "path") {
    const int n = pick_n(2);
    for (int i = 0; i < n; ++i) b.add_node();
    for (int i = 0; i + 1 < n; ++i) b.add_edge(i, i + 1);
    return std::move(b).build();
  }
  if (family == "star") {
    const int n = pick_n(4);
    for (int i = 0; i < n; ++i) b.add_node();
    for (int i = 1; i < n; ++i) b.add_edge(0, i);
    return std::move(b).build();
  }
  if (family == "complete") {
    const int n = pick_n(4);
    for (int i = 0; i < n; ++i) b.add_node();
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) b.add_edge(i, j);
    }
    return std::move(b).build();
  }
  if (family == "tree") {
    // Random attachment; the caller retries until the draw is neither a path
    // nor a star, so "tree" keeps a distinct meaning.
    const int n = pick_n(5);
    for (int i = 0; i < n; ++i) b.add_node();
    for (int i = 1; i < n; ++i) {
      b.add_edge(static_cast<int>(rng.uniform_int(0, i - 1)), i);
    }
    return std::move(b).build();
  }
  if (family == "bipartite-complete") {
    const int n = pick_n(5);
    const int a = static_cast<int>(rng.uniform_int(2, n - 2));
    for (int i = 0; i < n; ++i) b.add_node();
    for (int i = 0; i < a; ++i) {
      for (int j = a; j < n; ++j) b.add_edge(i, j);
    }
    return std::move(b).build();
  }
  if (family == "general") {
    ErConfig er;
    er.n_range = {std::max(lo, 4), hi};
    er.p_range = {0.3, 0.7};
    return gen_er(er, rng);
  }
  throw_error(ErrorCategory::Generation, "unknown structure family \"" + family + "\"");
}

std::string render_mapping(const std::vector<NodeId>& map) {
  std::vector<int> v(map.begin(), map.end());
  return join_ints(v, ", ");
}

struct RecipeResult {
  bool ok = false;
  std::string unmet;  // constraint description when !ok
};

}  // namespace

const std::vector<std::string>& synth_task_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, d] : task_defaults()) v.push_back(name);
    return v;
  }();
  return names;
}

bool is_synth_task(const std::string& task) {
  return task_defaults().count(task) != 0;
}

std::string synth_task_level(const std::string& task) {
  return defaults_for(task).level;
}

std::map<std::string, std::string> description_binds(const AttributedGraph& g) {
  bool node_w = g.node_count() > 0;
  for (const NodeRecord& n : g.nodes()) {
    auto it = n.attrs.find("weight");
    if (it == n.attrs.end() || !it->second.is_integer()) {
      node_w = false;
      break;
    }
  }
  bool edge_w = g.edge_count() > 0;
  for (const EdgeRecord& e : g.edges()) {
    auto it = e.attrs.find("weight");
    if (it == e.attrs.end() || !it->second.is_integer()) {
      edge_w = false;
      break;
    }
  }
  std::string weight_note;
  if (node_w && edge_w) {
    weight_note = " with integer node and edge weights";
  } else if (node_w) {
    weight_note = " with integer node weights";
  } else if (edge_w) {
    weight_note = " with integer edge weights";
  }
  return {
      {"article", g.directed() ? "a" : "an"},
      {"directed_word", g.directed() ? "directed" : "undirected"},
      {"weight_note", weight_note},
      {"max_id", std::to_string(std::max(0, g.node_count() - 1))},
  };
}

namespace {

// Fills graph, target, answer, verifier, witness, and the template binds for
// one attempt. Returns ok=false with the unmet constraint when the drawn
// graph cannot host the question.
RecipeResult run_recipe(const std::string& task, const TaskDefaults& d,
                        const TaskGenSpec& spec, bool desired_yes, Rng& rng,
                        TaskInstance& inst,
                        std::map<std::string, std::string>& binds) {
  ErConfig er;
  er.n_range = spec.n_range.value_or(d.n_range);
  er.p_range = spec.p_range.value_or(d.p_range);
  er.directed = spec.directed.value_or(false);
  if (er.directed && !d.allow_directed) {
    throw_error(ErrorCategory::Config,
                "task \"" + task + "\" is defined on undirected graphs");
  }
  er.weighted = d.edge_weights;

  if (task == "graph_size_node" || task == "graph_size_edge") {
    inst.graph = gen_er(er, rng);
    const bool nodes = task == "graph_size_node";
    inst.answer = CanonicalAnswer::integer(nodes ? inst.graph.node_count()
                                                 : inst.graph.edge_count());
    inst.verifier = {VerifyRule::Kind::ExactMatch};
    return {true, ""};
  }

  if (task == "attr_retrieval_node") {
    AttributedGraph base = gen_er(er, rng);
    inst.graph = with_node_weights(base, rng, 1, 20);
    const NodeId t = static_cast<NodeId>(
        rng.uniform_int(0, inst.graph.node_count() - 1));
    inst.target = Target::node(t);
    inst.answer = CanonicalAnswer::integer(
        inst.graph.node(t).attrs.at("weight").as_integer());
    inst.verifier = {VerifyRule::Kind::ExactMatch};
    binds["attr"] = "weight";
    binds["target"] = std::to_string(t);
    inst.extra["attr"] = "weight";
    return {true, ""};
  }

  if (task == "attr_retrieval_edge") {
    inst.graph = gen_er(er, rng);
    if (inst.graph.edge_count() == 0) return {false, "at least one edge"};
    const auto& e = inst.graph.edges()[static_cast<std::size_t>(
        rng.uniform_int(0, inst.graph.edge_count() - 1))];
    inst.target = Target::edge(e.src, e.dst);
    inst.answer = CanonicalAnswer::integer(e.attrs.at("weight").as_integer());
    inst.verifier = {VerifyRule::Kind::ExactMatch};
    binds["attr"] = "weight";
    binds["src"] = std::to_string(e.src);
    binds["dst"] = std::to_string(e.dst);
    inst.extra["attr"] = "weight";
    return {true, ""};
  }

  if (task == "degree_count") {
    inst.graph = gen_er(er, rng);
    const NodeId t = static_cast<NodeId>(
        rng.uniform_int(0, inst.graph.node_count() - 1));
    inst.target = Target::node(t);
    inst.answer = CanonicalAnswer::integer(inst.graph.degree(t));
    inst.verifier = {VerifyRule::Kind::ExactMatch};
    binds["target"] = std::to_string(t);
    return {true, ""};
  }

  if (task == "shortest_path") {
    inst.graph = gen_er(er, rng);
    if (inst.graph.node_count() < 2) return {false, "two distinct endpoints"};
    const NodeId src = static_cast<NodeId>(
        rng.uniform_int(0, inst.graph.node_count() - 1));
    NodeId dst = static_cast<NodeId>(
        rng.uniform_int(0, inst.graph.node_count() - 2));
    if (dst >= src) ++dst;
    const auto sp = shortest_path(inst.graph, src, dst, true);
    if (!sp) return {false, "a reachable destination"};
    inst.target = Target::edge(src, dst);
    inst.answer = CanonicalAnswer::node_seq(sp->path);
    inst.verifier = {VerifyRule::Kind::ValidPath, 0.0, false, PathKind::ShortestPath};
    inst.weighted_paths = true;
    inst.optimal_length = sp->length;
    inst.witness = sp->path;
    binds["src"] = std::to_string(src);
    binds["dst"] = std::to_string(dst);
    binds["path_objective"] = " that minimizes the total edge weight";
    binds["length_word"] = "weight";
    binds["length"] = std::to_string(sp->length);
    inst.extra["length"] = std::to_string(sp->length);
    return {true, ""};
  }

  if (task == "max_triangle_sum") {
    AttributedGraph base = gen_er(er, rng);
    inst.graph = with_node_weights(base, rng, 1, 20);
    const auto tri = max_triangle_sum(inst.graph);
    if (!tri) return {false, "at least one triangle"};
    inst.answer = CanonicalAnswer::integer(tri->sum);
    inst.verifier = {VerifyRule::Kind::ExactMatch};
    inst.witness.assign(tri->nodes.begin(), tri->nodes.end());
    binds["triangle"] =
        join_ints({tri->nodes[0], tri->nodes[1], tri->nodes[2]}, ", ");
    return {true, ""};
  }

  if (task == "hamilton_path") {
    inst.graph = gen_er(er, rng);
    const auto path = find_hamilton_path(inst.graph);
    if (path.has_value() != desired_yes) {
      return {false, desired_yes ? "a graph with a Hamilton path"
                                 : "a graph without a Hamilton path"};
    }
    inst.answer = CanonicalAnswer::boolean(desired_yes);
    inst.verifier = {VerifyRule::Kind::ValidPath, 0.0, false, PathKind::HamiltonPath};
    binds["path_note"] = "";
    if (path) {
      inst.witness = *path;
      binds["path_note"] =
          " One such path is " + CanonicalAnswer::node_seq(*path).render() + ".";
    }
    return {true, ""};
  }

  if (task == "subgraph_matching") {
    inst.graph = gen_er(er, rng);
    ErConfig pat_cfg;
    pat_cfg.n_range = {3, 4};
    pat_cfg.p_range = {0.4, 0.8};
    pat_cfg.directed = er.directed;
    AttributedGraph pattern = gen_er(pat_cfg, rng);
    // Patterns must be connected or the question degenerates.
    {
      bool connected_ok = true;
      std::vector<bool> seen(static_cast<std::size_t>(pattern.node_count()), false);
      std::vector<NodeId> stack{0};
      seen[0] = true;
      int reached = 1;
      while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        for (NodeId v : pattern.neighbors(u)) {
          if (!seen[static_cast<std::size_t>(v)]) {
            seen[static_cast<std::size_t>(v)] = true;
            ++reached;
            stack.push_back(v);
          }
        }
      }
      connected_ok = reached == pattern.node_count();
      if (!connected_ok) return {false, "a connected pattern"};
    }
    const auto match = find_subgraph(inst.graph, pattern);
    if (match.has_value() != desired_yes) {
      return {false, desired_yes ? "a host containing the pattern"
                                 : "a host free of the pattern"};
    }
    std::string pattern_edges;
    for (std::size_t i = 0; i < pattern.edges().size(); ++i) {
      if (i != 0) pattern_edges += ", ";
      const auto& e = pattern.edges()[i];
      pattern_edges += std::to_string(e.src) +
                       (pattern.directed() ? " -> " : " -- ") +
                       std::to_string(e.dst);
    }
    inst.answer = CanonicalAnswer::boolean(desired_yes);
    inst.verifier = {VerifyRule::Kind::Boolean};
    binds["pattern_n"] = std::to_string(pattern.node_count());
    binds["pattern_edges"] = pattern_edges;
    binds["match_note"] = "";
    if (match) {
      inst.witness = *match;
      binds["match_note"] = " In order, the pattern nodes map to graph nodes " +
                            render_mapping(*match) + ".";
    }
    inst.extra["pattern_n"] = std::to_string(pattern.node_count());
    inst.extra["pattern_edges"] = pattern_edges;
    return {true, ""};
  }

  if (task == "graph_structure") {
    const auto& labels = structure_labels();
    const std::string family =
        labels[static_cast<std::size_t>(rng.below(labels.size()))];
    const auto range = spec.n_range.value_or(d.n_range);
    AttributedGraph canonical = build_family(family, range.first, range.second, rng);
    if (classify_structure(canonical) != family) {
      return {false, "a graph classifying as \"" + family + "\""};
    }
    inst.graph = permute_labels(canonical, rng);
    inst.answer = CanonicalAnswer::label(family);
    inst.verifier = {VerifyRule::Kind::ExactMatch};
    std::string choices;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (i != 0) choices += ", ";
      choices += labels[i];
    }
    binds["label_choices"] = choices;
    inst.extra["label_choices"] = choices;
    inst.extra["family"] = family;
    return {true, ""};
  }

  if (task == "graph_automorphism") {
    inst.graph = gen_er(er, rng);
    inst.answer = CanonicalAnswer::integer(count_automorphisms(inst.graph));
    inst.verifier = {VerifyRule::Kind::ExactMatch};
    return {true, ""};
  }

  throw_error(ErrorCategory::Config, "unknown task \"" + task + "\"");
}

}  // namespace

VerifyContext verify_context(const TaskInstance& inst) {
  VerifyContext ctx;
  ctx.graph = &inst.graph;
  if (inst.target.kind == Target::Kind::Edge) {
    ctx.src = inst.target.a;
    ctx.dst = inst.target.b;
  } else if (inst.target.kind == Target::Kind::Node) {
    ctx.src = inst.target.a;
  }
  ctx.optimal_length = inst.optimal_length;
  ctx.weighted = inst.weighted_paths;
  return ctx;
}

TaskInstance gen_task(const TaskGenSpec& spec, std::uint64_t root_seed,
                      std::size_t index, const TemplatePack& templates,
                      std::uint64_t attempt_base) {
  const TaskDefaults& d = defaults_for(spec.task);
  const std::uint64_t stream_seed =
      derive_seed(root_seed, "generate", spec.task, index);
  const bool desired_yes = index % 2 == 0;
  std::string last_unmet = "a satisfiable draw";

  for (int attempt = 0; attempt < kAttemptBudget; ++attempt) {
    Rng rng(derive_seed(stream_seed, "attempt", spec.task,
                        attempt_base + static_cast<std::uint64_t>(attempt)));
    TaskInstance inst;
    inst.task = spec.task;
    inst.level = d.level;
    inst.metric = "accuracy";
    inst.seed = stream_seed;

    std::map<std::string, std::string> binds;
    RecipeResult r = run_recipe(spec.task, d, spec, desired_yes, rng, inst, binds);
    if (!r.ok) {
      last_unmet = r.unmet;
      continue;
    }

    auto desc_binds = description_binds(inst.graph);
    binds.insert(desc_binds.begin(), desc_binds.end());
    binds["answer"] = inst.answer.render();

    const TaskTemplates& t = templates.for_task(spec.task);
    inst.description = render_template(t.description, binds);
    inst.query = render_template(t.query, binds);
    inst.answer_prose = render_template(t.answer, binds);
    return inst;
  }

  throw_error(ErrorCategory::Generation,
              "task \"" + spec.task + "\" instance " + std::to_string(index) +
                  ": exhausted " + std::to_string(kAttemptBudget) +
                  " attempts looking for " + last_unmet);
}

std::vector<TaskInstance> gen_batch(const TaskGenSpec& spec, std::uint64_t root_seed,
                                    const TemplatePack& templates, int jobs) {
  if (spec.count < 0) {
    throw_error(ErrorCategory::Config, "task count must be non-negative");
  }
  std::vector<TaskInstance> out(static_cast<std::size_t>(spec.count));
  parallel_for(out.size(), jobs, [&](std::size_t i) {
    out[i] = gen_task(spec, root_seed, i, templates);
  });

  // Content dedup: identical question+graph pairs would leak across splits.
  auto content_key = [](const TaskInstance& inst) {
    return fnv1a64(inst.task + "\x1f" + graph_to_string(inst.graph, false) +
                   "\x1f" + inst.query);
  };
  std::unordered_set<std::uint64_t> seen;
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint64_t round = 0;
    while (!seen.insert(content_key(out[i])).second) {
      ++round;
      if (round > 50) {
        throw_error(ErrorCategory::Generation,
                    "task \"" + spec.task + "\": cannot draw " +
                        std::to_string(spec.count) + " distinct instances");
      }
      out[i] = gen_task(spec, root_seed, i, templates,
                        round * static_cast<std::uint64_t>(kAttemptBudget));
    }
  }
  return out;
}

}  // namespace forge
