#include "forge/semantic.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "forge/error.hpp"
#include "forge/graph_json.hpp"
#include "forge/parallel.hpp"
#include "forge/rng.hpp"
#include "forge/task_gen.hpp"

namespace forge {

namespace {

const std::set<std::string>& valid_levels() {
  static const std::set<std::string> s = {"node", "link", "graph", "open-ended"};
  return s;
}

const std::set<std::string>& valid_types() {
  static const std::set<std::string> s = {"multiclass", "binary",
                                          "ordinal-regression", "regression",
                                          "text-generation"};
  return s;
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '-';
    if (!ok) return false;
  }
  return true;
}

std::string require_string(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string()) {
    throw_error(ErrorCategory::Config,
                std::string("semantic config: missing string field \"") + key +
                    "\"");
  }
  return j.at(key).get<std::string>();
}

}  // namespace

std::string semantic_metric(const std::string& type) {
  if (type == "multiclass" || type == "binary") return "accuracy";
  if (type == "regression" || type == "ordinal-regression") return "rmse";
  if (type == "text-generation") return "rouge_l";
  throw_error(ErrorCategory::Config, "unknown task type \"" + type + "\"");
}

SemanticTaskConfig parse_semantic_config(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw_error(ErrorCategory::Config, "semantic config: expected a JSON object");
  }
  static const std::set<std::string> known = {
      "name",  "graph_file",  "level",  "type",      "target_attr", "ego_radius",
      "description", "query", "answer", "label_set", "split_attr"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key())) {
      throw_error(ErrorCategory::Config,
                  "semantic config: unknown field \"" + it.key() + "\"");
    }
  }
  SemanticTaskConfig cfg;
  cfg.name = require_string(j, "name");
  if (!valid_name(cfg.name)) {
    throw_error(ErrorCategory::Config,
                "semantic config: name must match [a-z0-9_-]+, got \"" +
                    cfg.name + "\"");
  }
  cfg.graph_file = require_string(j, "graph_file");
  cfg.level = require_string(j, "level");
  if (!valid_levels().count(cfg.level)) {
    throw_error(ErrorCategory::Config,
                "semantic config: unknown level \"" + cfg.level + "\"");
  }
  cfg.type = require_string(j, "type");
  if (!valid_types().count(cfg.type)) {
    throw_error(ErrorCategory::Config,
                "semantic config: unknown type \"" + cfg.type + "\"");
  }
  if (j.contains("target_attr")) {
    cfg.target_attr = j.at("target_attr").get<std::string>();
  }
  if (j.contains("ego_radius")) {
    if (!j.at("ego_radius").is_number_integer()) {
      throw_error(ErrorCategory::Config,
                  "semantic config: ego_radius must be an integer");
    }
    cfg.ego_radius = j.at("ego_radius").get<int>();
    if (cfg.ego_radius < 0) {
      throw_error(ErrorCategory::Config,
                  "semantic config: ego_radius must be >= 0");
    }
  }
  cfg.description = require_string(j, "description");
  cfg.query = require_string(j, "query");
  if (j.contains("answer")) cfg.answer = j.at("answer").get<std::string>();
  if (j.contains("label_set")) {
    if (!j.at("label_set").is_array()) {
      throw_error(ErrorCategory::Config,
                  "semantic config: label_set must be an array");
    }
    for (const auto& v : j.at("label_set")) {
      cfg.label_set.push_back(v.get<std::string>());
    }
  }
  if (j.contains("split_attr")) {
    cfg.split_attr = j.at("split_attr").get<std::string>();
  }

  const bool link_prediction =
      cfg.level == "link" && cfg.type == "binary" && cfg.target_attr.empty();
  if (cfg.target_attr.empty() && !link_prediction) {
    throw_error(ErrorCategory::Config,
                "semantic config: target_attr is required except for link "
                "prediction (level=link, type=binary)");
  }
  if (cfg.type == "multiclass" && cfg.label_set.empty()) {
    throw_error(ErrorCategory::Config,
                "semantic config: multiclass tasks need a label_set");
  }
  return cfg;
}

SemanticTaskConfig load_semantic_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_error(ErrorCategory::Io, "cannot open semantic config " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw_error(ErrorCategory::Config, path + ": " + e.what());
  }
  try {
    return parse_semantic_config(j);
  } catch (const Error& e) {
    throw Error(e.category(), path + ": " + std::string(e.what()));
  }
}

namespace {

// Removes bookkeeping attributes from every element so they can never reach
// rendered text: the prediction target and the split assignment.
AttributedGraph strip_attrs(const AttributedGraph& g,
                            const std::vector<std::string>& names) {
  std::vector<NodeRecord> nodes = g.nodes();
  std::vector<EdgeRecord> edges = g.edges();
  AttrMap gattrs = g.graph_attrs();
  for (const auto& name : names) {
    if (name.empty()) continue;
    for (auto& n : nodes) n.attrs.erase(name);
    for (auto& e : edges) e.attrs.erase(name);
    gattrs.erase(name);
  }
  return AttributedGraph(g.directed(), std::move(nodes), std::move(edges),
                         std::move(gattrs));
}

// Ego extraction records the kept original ids in a graph attribute; pull
// that mapping out so it never renders, and return the relabeled graph.
struct EgoView {
  AttributedGraph graph;
  std::vector<NodeId> original_ids;
};

EgoView detach_ego_ids(AttributedGraph ego) {
  EgoView view{AttributedGraph(false, {}, {}), {}};
  AttrMap gattrs = ego.graph_attrs();
  auto it = gattrs.find("ego_original_ids");
  if (it == gattrs.end()) {
    throw_error(ErrorCategory::Validation, "ego graph lacks its id mapping");
  }
  const std::string csv = it->second.as_text();
  std::size_t pos = 0;
  while (pos <= csv.size() && !csv.empty()) {
    std::size_t next = csv.find(',', pos);
    std::string piece = csv.substr(
        pos, next == std::string::npos ? std::string::npos : next - pos);
    view.original_ids.push_back(std::stoi(piece));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  gattrs.erase(it);
  view.graph = AttributedGraph(ego.directed(), ego.nodes(), ego.edges(),
                               std::move(gattrs));
  return view;
}

AttributedGraph without_edge(const AttributedGraph& g, NodeId u, NodeId v) {
  std::vector<EdgeRecord> edges;
  edges.reserve(g.edges().size());
  bool removed = false;
  for (const auto& e : g.edges()) {
    const bool fwd = e.src == u && e.dst == v;
    const bool rev = !g.directed() && e.src == v && e.dst == u;
    if (!removed && (fwd || rev)) {
      removed = true;
      continue;
    }
    edges.push_back(e);
  }
  return AttributedGraph(g.directed(), g.nodes(), std::move(edges),
                         g.graph_attrs());
}

std::string joined_labels(const std::vector<std::string>& labels) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ", ";
    out += labels[i];
  }
  return out;
}

CanonicalAnswer answer_from_value(const SemanticTaskConfig& cfg,
                                  const AttrValue& v) {
  if (cfg.type == "multiclass") {
    const std::string label = v.render();
    if (!cfg.label_set.empty() &&
        std::find(cfg.label_set.begin(), cfg.label_set.end(), label) ==
            cfg.label_set.end()) {
      throw_error(ErrorCategory::Validation,
                  "target value \"" + label + "\" is not in the label set");
    }
    return CanonicalAnswer::label(label);
  }
  if (cfg.type == "binary") {
    if (v.kind() == AttrValue::Kind::Boolean) {
      return CanonicalAnswer::boolean(v.as_boolean());
    }
    return CanonicalAnswer::label(v.render());
  }
  if (cfg.type == "regression" || cfg.type == "ordinal-regression") {
    if (v.kind() == AttrValue::Kind::Integer) {
      return CanonicalAnswer::integer(v.as_integer());
    }
    if (v.kind() == AttrValue::Kind::Real) {
      return CanonicalAnswer::real(v.as_real());
    }
    throw_error(ErrorCategory::Validation,
                "regression target attribute must be numeric");
  }
  // text-generation
  return CanonicalAnswer::text(v.render());
}

VerifyRule verifier_for(const SemanticTaskConfig& cfg,
                        const CanonicalAnswer& answer) {
  VerifyRule rule;
  switch (answer.kind()) {
    case CanonicalAnswer::Kind::Boolean:
      rule.kind = VerifyRule::Kind::Boolean;
      break;
    case CanonicalAnswer::Kind::Integer:
    case CanonicalAnswer::Kind::Real:
      rule.kind = VerifyRule::Kind::NumericTolerance;
      rule.eps = 1e-9;
      rule.relative = true;
      break;
    default:
      rule.kind = VerifyRule::Kind::ExactMatch;
      break;
  }
  (void)cfg;
  return rule;
}

std::string split_from_attrs(const SemanticTaskConfig& cfg, const AttrMap& attrs,
                             const std::string& what) {
  auto it = attrs.find(cfg.split_attr);
  if (it == attrs.end()) {
    throw_error(ErrorCategory::Validation,
                what + " lacks split attribute \"" + cfg.split_attr + "\"");
  }
  const std::string v = it->second.render();
  if (v != "train" && v != "valid" && v != "test") {
    throw_error(ErrorCategory::Validation,
                what + ": split attribute value \"" + v +
                    "\" is not train/valid/test");
  }
  return v;
}

void finish_instance(TaskInstance& inst, const SemanticTaskConfig& cfg,
                     const TemplatePack& templates,
                     std::map<std::string, std::string> binds) {
  binds["label_choices"] = joined_labels(cfg.label_set);
  binds["answer"] = inst.answer.render();
  inst.description = render_template(cfg.description, binds);
  inst.query = render_template(cfg.query, binds);
  const std::string answer_tmpl =
      cfg.answer.empty() ? templates.for_task("semantic-default").answer
                         : cfg.answer;
  inst.answer_prose = render_template(answer_tmpl, binds);
  if (inst.metric == "accuracy" &&
      inst.answer.kind() != CanonicalAnswer::Kind::Boolean) {
    inst.extra["leak_check"] = "1";
  }
}

std::vector<TaskInstance> node_level_instances(const SemanticTaskConfig& cfg,
                                               const AttributedGraph& full,
                                               const AttributedGraph& stripped,
                                               std::uint64_t root_seed,
                                               const TemplatePack& templates,
                                               int jobs) {
  std::vector<NodeId> targets;
  for (const auto& n : full.nodes()) {
    if (n.attrs.count(cfg.target_attr)) targets.push_back(n.id);
  }
  if (targets.empty()) {
    throw_error(ErrorCategory::Validation,
                cfg.name + ": no node carries target attribute \"" +
                    cfg.target_attr + "\"");
  }
  const int radius = cfg.ego_radius > 0 ? cfg.ego_radius : 2;

  std::vector<TaskInstance> out(targets.size());
  std::vector<std::string> splits(targets.size());
  if (!cfg.split_attr.empty()) {
    for (std::size_t i = 0; i < targets.size(); ++i) {
      splits[i] = split_from_attrs(cfg, full.node(targets[i]).attrs,
                                   "node " + std::to_string(targets[i]));
    }
  }
  parallel_for(targets.size(), jobs, [&](std::size_t i) {
    const NodeId v = targets[i];
    EgoView ego = detach_ego_ids(stripped.ego_graph(v, radius));
    const auto pos = std::lower_bound(ego.original_ids.begin(),
                                      ego.original_ids.end(), v);
    const NodeId local = static_cast<NodeId>(pos - ego.original_ids.begin());

    TaskInstance inst;
    inst.task = cfg.name;
    inst.level = cfg.level;
    inst.metric = semantic_metric(cfg.type);
    inst.graph = std::move(ego.graph);
    inst.target = Target::node(local);
    inst.seed = derive_seed(root_seed, "semantic", cfg.name, i);
    inst.answer = answer_from_value(cfg, full.node(v).attrs.at(cfg.target_attr));
    inst.verifier = verifier_for(cfg, inst.answer);
    auto binds = description_binds(inst.graph);
    binds["target"] = std::to_string(local);
    finish_instance(inst, cfg, templates, std::move(binds));
    inst.extra["source_node"] = std::to_string(v);
    if (!cfg.split_attr.empty()) inst.extra["split"] = splits[i];
    out[i] = std::move(inst);
  });
  return out;
}

struct LinkQuery {
  NodeId u = -1;
  NodeId v = -1;
  bool positive = false;
  std::size_t edge_index = 0;  // positives only
};

std::vector<TaskInstance> link_level_instances(const SemanticTaskConfig& cfg,
                                               const AttributedGraph& full,
                                               const AttributedGraph& stripped,
                                               std::uint64_t root_seed,
                                               const TemplatePack& templates,
                                               int jobs) {
  const bool link_prediction = cfg.target_attr.empty();
  std::vector<LinkQuery> queries;

  if (link_prediction) {
    if (full.edge_count() == 0) {
      throw_error(ErrorCategory::Validation,
                  cfg.name + ": link prediction needs at least one edge");
    }
    // One seeded non-edge negative per positive, duplicates rejected.
    Rng rng(derive_seed(root_seed, "semantic", cfg.name + "-neg", 0));
    std::set<std::pair<NodeId, NodeId>> used;
    const int n = full.node_count();
    if (n < 2) {
      throw_error(ErrorCategory::Validation,
                  cfg.name + ": link prediction needs at least two nodes");
    }
    for (std::size_t ei = 0; ei < full.edges().size(); ++ei) {
      const auto& e = full.edges()[ei];
      queries.push_back({e.src, e.dst, true, ei});
      bool found = false;
      for (int attempt = 0; attempt < 10000 && !found; ++attempt) {
        NodeId a = static_cast<NodeId>(rng.below(n));
        NodeId b = static_cast<NodeId>(rng.below(n - 1));
        if (b >= a) ++b;
        std::pair<NodeId, NodeId> key{a, b};
        if (!full.directed() && key.first > key.second) {
          std::swap(key.first, key.second);
        }
        if (full.has_edge(a, b) || used.count(key)) continue;
        used.insert(key);
        queries.push_back({a, b, false, 0});
        found = true;
      }
      if (!found) {
        throw_error(ErrorCategory::Generation,
                    cfg.name + ": could not sample a fresh non-edge negative; "
                               "graph is too dense");
      }
    }
  } else {
    for (std::size_t ei = 0; ei < full.edges().size(); ++ei) {
      if (full.edges()[ei].attrs.count(cfg.target_attr)) {
        queries.push_back({full.edges()[ei].src, full.edges()[ei].dst, true, ei});
      }
    }
    if (queries.empty()) {
      throw_error(ErrorCategory::Validation,
                  cfg.name + ": no edge carries target attribute \"" +
                      cfg.target_attr + "\"");
    }
  }

  const int radius = cfg.ego_radius > 0 ? cfg.ego_radius : 1;
  std::vector<std::string> splits(queries.size());
  if (!cfg.split_attr.empty()) {
    // Negatives inherit the split of the positive they pair with.
    std::string last;
    for (std::size_t i = 0; i < queries.size(); ++i) {
      if (queries[i].positive) {
        last = split_from_attrs(
            cfg, full.edges()[queries[i].edge_index].attrs,
            "edge " + std::to_string(queries[i].edge_index));
      }
      splits[i] = last;
    }
  }

  std::vector<TaskInstance> out(queries.size());
  parallel_for(queries.size(), jobs, [&](std::size_t i) {
    const LinkQuery& q = queries[i];
    EgoView ego = detach_ego_ids(stripped.ego_graph(q.u, q.v, radius));
    const auto upos =
        std::lower_bound(ego.original_ids.begin(), ego.original_ids.end(), q.u);
    const auto vpos =
        std::lower_bound(ego.original_ids.begin(), ego.original_ids.end(), q.v);
    const NodeId lu = static_cast<NodeId>(upos - ego.original_ids.begin());
    const NodeId lv = static_cast<NodeId>(vpos - ego.original_ids.begin());

    TaskInstance inst;
    inst.task = cfg.name;
    inst.level = cfg.level;
    inst.metric = semantic_metric(cfg.type);
    // The queried edge never renders: its presence is the question in link
    // prediction and it carries the target everywhere else.
    inst.graph = q.positive ? without_edge(ego.graph, lu, lv)
                            : std::move(ego.graph);
    inst.target = Target::edge(lu, lv);
    inst.seed = derive_seed(root_seed, "semantic", cfg.name, i);
    if (link_prediction) {
      inst.answer = CanonicalAnswer::boolean(q.positive);
      inst.verifier.kind = VerifyRule::Kind::Boolean;
    } else {
      inst.answer = answer_from_value(
          cfg, full.edges()[q.edge_index].attrs.at(cfg.target_attr));
      inst.verifier = verifier_for(cfg, inst.answer);
    }
    auto binds = description_binds(inst.graph);
    binds["src"] = std::to_string(lu);
    binds["dst"] = std::to_string(lv);
    finish_instance(inst, cfg, templates, std::move(binds));
    inst.extra["source_src"] = std::to_string(q.u);
    inst.extra["source_dst"] = std::to_string(q.v);
    if (!cfg.split_attr.empty()) inst.extra["split"] = splits[i];
    out[i] = std::move(inst);
  });
  return out;
}

std::vector<TaskInstance> graph_level_instances(const SemanticTaskConfig& cfg,
                                                std::uint64_t root_seed,
                                                const TemplatePack& templates,
                                                int jobs) {
  namespace fs = std::filesystem;
  std::vector<std::string> files;
  if (fs::is_directory(cfg.graph_file)) {
    for (const auto& entry : fs::directory_iterator(cfg.graph_file)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") {
        files.push_back(entry.path().string());
      }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
      throw_error(ErrorCategory::Io,
                  cfg.name + ": no .json graphs in " + cfg.graph_file);
    }
  } else {
    files.push_back(cfg.graph_file);
  }

  std::vector<TaskInstance> out(files.size());
  parallel_for(files.size(), jobs, [&](std::size_t i) {
    const AttributedGraph full = load_graph_file(files[i]);
    auto it = full.graph_attrs().find(cfg.target_attr);
    if (it == full.graph_attrs().end()) {
      throw_error(ErrorCategory::Validation,
                  files[i] + ": graph lacks target attribute \"" +
                      cfg.target_attr + "\"");
    }
    TaskInstance inst;
    inst.task = cfg.name;
    inst.level = cfg.level;
    inst.metric = semantic_metric(cfg.type);
    inst.graph = strip_attrs(full, {cfg.target_attr, cfg.split_attr});
    inst.seed = derive_seed(root_seed, "semantic", cfg.name, i);
    inst.answer = answer_from_value(cfg, it->second);
    inst.verifier = verifier_for(cfg, inst.answer);
    finish_instance(inst, cfg, templates, description_binds(inst.graph));
    inst.extra["source_file"] = fs::path(files[i]).filename().string();
    if (!cfg.split_attr.empty()) {
      inst.extra["split"] =
          split_from_attrs(cfg, full.graph_attrs(), files[i]);
    }
    out[i] = std::move(inst);
  });
  return out;
}

}  // namespace

std::vector<TaskInstance> build_semantic_instances(const SemanticTaskConfig& cfg,
                                                   std::uint64_t root_seed,
                                                   const TemplatePack& templates,
                                                   int jobs) {
  if (cfg.level == "graph") {
    return graph_level_instances(cfg, root_seed, templates, jobs);
  }
  const AttributedGraph full = load_graph_file(cfg.graph_file);
  const AttributedGraph stripped =
      strip_attrs(full, {cfg.target_attr, cfg.split_attr});
  if (cfg.level == "link") {
    return link_level_instances(cfg, full, stripped, root_seed, templates, jobs);
  }
  // node and open-ended share the per-node extraction; open-ended differs
  // only in producing free text.
  return node_level_instances(cfg, full, stripped, root_seed, templates, jobs);
}

}  // namespace forge
