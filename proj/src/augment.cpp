#include "forge/augment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>

#include "forge/error.hpp"
#include "forge/graph_json.hpp"
#include "forge/lang.hpp"
#include "forge/rng.hpp"
#include "forge/task_gen.hpp"

namespace forge {

namespace {

std::string format_token(const FormatSpec& fmt) {
  std::string name(format_name(fmt.kind));
  if (fmt.compact) name += "-compact";
  return name;
}

}  // namespace

AugmentPlan parse_augment_plan(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw_error(ErrorCategory::Config, "augment plan: expected a JSON object");
  }
  AugmentPlan plan;
  if (!j.contains("formats") || !j.at("formats").is_array() ||
      j.at("formats").empty()) {
    throw_error(ErrorCategory::Config,
                "augment plan: \"formats\" must be a non-empty array");
  }
  for (const auto& f : j.at("formats")) {
    if (!f.is_string()) {
      throw_error(ErrorCategory::Config,
                  "augment plan: format names must be strings");
    }
    plan.formats.push_back(parse_format_name(f.get<std::string>()));
  }
  for (std::size_t i = 0; i < plan.formats.size(); ++i) {
    for (std::size_t k = i + 1; k < plan.formats.size(); ++k) {
      if (plan.formats[i].kind == plan.formats[k].kind &&
          plan.formats[i].compact == plan.formats[k].compact) {
        throw_error(ErrorCategory::Config,
                    "augment plan: duplicate format \"" +
                        format_token(plan.formats[i]) + "\"");
      }
    }
  }
  if (j.contains("tae")) {
    if (!j.at("tae").is_boolean()) {
      throw_error(ErrorCategory::Config, "augment plan: \"tae\" must be a boolean");
    }
    plan.tae = j.at("tae").get<bool>();
  }
  if (j.contains("fmae")) {
    const auto& f = j.at("fmae");
    if (!f.is_object()) {
      throw_error(ErrorCategory::Config, "augment plan: \"fmae\" must be an object");
    }
    if (f.contains("enabled")) plan.fmae.enabled = f.at("enabled").get<bool>();
    if (f.contains("mask_rate")) {
      if (!f.at("mask_rate").is_number()) {
        throw_error(ErrorCategory::Config,
                    "augment plan: \"mask_rate\" must be a number");
      }
      plan.fmae.mask_rate = f.at("mask_rate").get<double>();
    }
    if (plan.fmae.enabled &&
        !(plan.fmae.mask_rate > 0.0 && plan.fmae.mask_rate <= 1.0)) {
      throw_error(ErrorCategory::Config,
                  "augment plan: mask_rate must be in (0, 1]");
    }
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() != "formats" && it.key() != "tae" && it.key() != "fmae") {
      throw_error(ErrorCategory::Config,
                  "augment plan: unknown field \"" + it.key() + "\"");
    }
  }
  return plan;
}

AugmentPlan load_augment_plan(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw_error(ErrorCategory::Io, "cannot open augment plan " + path);
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw_error(ErrorCategory::Config, path + ": " + e.what());
  }
  try {
    return parse_augment_plan(j);
  } catch (const Error& e) {
    throw Error(e.category(), path + ": " + std::string(e.what()));
  }
}

bool has_maskable_attrs(const AttributedGraph& g) {
  for (const auto& n : g.nodes()) {
    for (const auto& [name, value] : n.attrs) {
      if (value.kind() != AttrValue::Kind::Boolean) return true;
    }
  }
  for (const auto& e : g.edges()) {
    for (const auto& [name, value] : e.attrs) {
      if (value.kind() != AttrValue::Kind::Boolean) return true;
    }
  }
  return false;
}

MaskedGraph mask_graph(const AttributedGraph& g, double rate,
                       std::uint64_t seed) {
  if (!(rate > 0.0 && rate <= 1.0)) {
    throw_error(ErrorCategory::Validation, "mask rate must be in (0, 1]");
  }
  std::vector<MaskTarget> population;
  for (const auto& n : g.nodes()) {
    for (const auto& [name, value] : n.attrs) {
      if (value.kind() == AttrValue::Kind::Boolean) continue;
      population.push_back({false, static_cast<std::size_t>(n.id), name, value});
    }
  }
  for (std::size_t ei = 0; ei < g.edges().size(); ++ei) {
    for (const auto& [name, value] : g.edges()[ei].attrs) {
      if (value.kind() == AttrValue::Kind::Boolean) continue;
      population.push_back({true, ei, name, value});
    }
  }
  if (population.empty()) {
    throw_error(ErrorCategory::Validation,
                "masking is not applicable: graph has no maskable attributes");
  }
  const auto k = static_cast<std::size_t>(
      std::ceil(rate * static_cast<double>(population.size())));

  Rng rng(seed);
  auto picks = rng.sample_without_replacement(population.size(), k);

  std::vector<NodeRecord> nodes = g.nodes();
  std::vector<EdgeRecord> edges = g.edges();
  MaskedGraph out{AttributedGraph(false, {}, {}), {}, 0};
  out.masked.reserve(k);
  for (std::size_t pi : picks) {
    const MaskTarget& t = population[pi];
    if (t.is_edge) {
      edges[t.index].attrs[t.attr] = AttrValue::text("unknown");
    } else {
      nodes[t.index].attrs[t.attr] = AttrValue::text("unknown");
    }
    out.masked.push_back(t);
  }
  out.probe = static_cast<std::size_t>(rng.below(out.masked.size()));
  out.graph = AttributedGraph(g.directed(), std::move(nodes), std::move(edges),
                              g.graph_attrs());
  return out;
}

TaskInstance make_tae_instance(const TaskInstance& parent,
                               const TemplatePack& templates) {
  const AttributedGraph& g = parent.graph;
  if (g.node_count() == 0) {
    throw_error(ErrorCategory::Validation, "topology probe needs a non-empty graph");
  }
  Rng rng(derive_seed(parent.seed, "ssl", "tae", 0));
  const NodeId target = static_cast<NodeId>(rng.below(g.node_count()));
  const auto mode = g.directed() ? NeighborMode::Out : NeighborMode::All;

  TaskInstance inst;
  inst.task = "tae";
  inst.level = "ssl";
  inst.metric = "accuracy";
  inst.graph = g;
  inst.target = Target::node(target);
  inst.seed = derive_seed(parent.seed, "ssl", "tae", 1);

  inst.answer = CanonicalAnswer::node_set(g.neighbors(target, mode));
  inst.verifier.kind = VerifyRule::Kind::SetEquality;

  auto binds = description_binds(g);
  binds["target"] = std::to_string(target);
  binds["direction_note"] =
      g.directed() ? " Consider only edges going out of node " +
                         std::to_string(target) + "."
                   : "";
  binds["answer"] = inst.answer.render();
  const TaskTemplates& t = templates.for_task("tae");
  inst.description = render_template(t.description, binds);
  inst.query = render_template(t.query, binds);
  inst.answer_prose = render_template(t.answer, binds);
  return inst;
}

namespace {

std::string probe_element_phrase(const AttributedGraph& g, const MaskTarget& t) {
  if (!t.is_edge) return "node " + std::to_string(t.index);
  const EdgeRecord& e = g.edges()[t.index];
  if (g.directed()) {
    return "the edge from node " + std::to_string(e.src) + " to node " +
           std::to_string(e.dst);
  }
  return "the edge between node " + std::to_string(e.src) + " and node " +
         std::to_string(e.dst);
}

bool has_whitespace(const std::string& s) {
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\n') return true;
  }
  return false;
}

}  // namespace

TaskInstance make_fmae_instance(const TaskInstance& parent,
                                const MaskedGraph& masked,
                                const TemplatePack& templates) {
  const MaskTarget& probe = masked.masked.at(masked.probe);

  TaskInstance inst;
  inst.level = "ssl";
  inst.graph = masked.graph;
  inst.seed = derive_seed(parent.seed, "ssl", "fmae", 1);
  if (probe.is_edge) {
    const EdgeRecord& e = masked.graph.edges()[probe.index];
    inst.target = Target::edge(e.src, e.dst);
  } else {
    inst.target = Target::node(static_cast<NodeId>(probe.index));
  }

  // Metric routing by probe value shape: numbers verify numerically, short
  // categorical text verifies exactly, running text scores by overlap.
  switch (probe.original.kind()) {
    case AttrValue::Kind::Integer:
      inst.task = "fmae";
      inst.metric = "accuracy";
      inst.answer = CanonicalAnswer::integer(probe.original.as_integer());
      inst.verifier.kind = VerifyRule::Kind::ExactMatch;
      break;
    case AttrValue::Kind::Real:
      inst.task = "fmae";
      inst.metric = "accuracy";
      inst.answer = CanonicalAnswer::real(probe.original.as_real());
      inst.verifier.kind = VerifyRule::Kind::NumericTolerance;
      inst.verifier.eps = 1e-6;
      inst.verifier.relative = true;
      break;
    case AttrValue::Kind::Text:
      if (has_whitespace(probe.original.as_text())) {
        inst.task = "fmae_text";
        inst.metric = "rouge_l";
        inst.answer = CanonicalAnswer::text(probe.original.as_text());
      } else {
        inst.task = "fmae";
        inst.metric = "accuracy";
        inst.answer = CanonicalAnswer::label(probe.original.as_text());
      }
      inst.verifier.kind = VerifyRule::Kind::ExactMatch;
      break;
    case AttrValue::Kind::Boolean:
      inst.task = "fmae";
      inst.metric = "accuracy";
      inst.answer = CanonicalAnswer::label(probe.original.render());
      inst.verifier.kind = VerifyRule::Kind::ExactMatch;
      break;
  }

  auto binds = description_binds(masked.graph);
  binds["attr"] = probe.attr;
  binds["element"] = probe_element_phrase(masked.graph, probe);
  binds["answer"] = inst.answer.render();
  const TaskTemplates& t = templates.for_task(inst.task);
  inst.description = render_template(t.description, binds);
  inst.query = render_template(t.query, binds);
  inst.answer_prose = render_template(t.answer, binds);

  inst.extra["probe_attr"] = probe.attr;
  inst.extra["probe_element"] = binds["element"];
  inst.extra["masked_count"] = std::to_string(masked.masked.size());
  return inst;
}

namespace {

std::vector<std::string> leak_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    const bool word = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                      (c >= '0' && c <= '9') || c == '_';
    if (word) {
      cur += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

// Token-level containment: the label, as a contiguous token run, must not
// appear in the rendered graph text of a classification instance.
bool contains_token_run(const std::vector<std::string>& haystack,
                        const std::vector<std::string>& needle) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  for (std::size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
    bool all = true;
    for (std::size_t k = 0; k < needle.size() && all; ++k) {
      all = haystack[i + k] == needle[k];
    }
    if (all) return true;
  }
  return false;
}

}  // namespace

std::string sample_id(const std::string& dataset, std::size_t index,
                      const FormatSpec& fmt, const std::string& suffix) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%05zu", index);
  std::string id = dataset + "-" + buf + "-" + format_token(fmt);
  if (!suffix.empty()) id += "-" + suffix;
  return id;
}

InstructionSample render_sample(const TaskInstance& inst, const FormatSpec& fmt,
                                const std::string& id,
                                const std::string& template_version) {
  InstructionSample s;
  s.id = id;
  s.task = inst.task;
  s.level = inst.level;
  s.format = format_token(fmt);
  const std::string graph_text = render_graph_text(inst.graph, fmt);
  if (inst.extra.count("leak_check") &&
      contains_token_run(leak_tokens(graph_text),
                         leak_tokens(inst.answer.render()))) {
    throw_error(ErrorCategory::Validation,
                "label leakage in sample " + id + ": answer \"" +
                    inst.answer.render() + "\" appears in the graph text");
  }
  s.input = lang_g(inst.description, graph_text, inst.query);
  s.output = lang_y(inst.answer_prose, inst.answer.render());

  auto& meta = s.meta;
  meta["seed"] = inst.seed;
  meta["n_nodes"] = inst.graph.node_count();
  meta["n_edges"] = inst.graph.edge_count();
  std::string aug = "none";
  if (inst.task == "tae") aug = "tae";
  if (inst.task == "fmae" || inst.task == "fmae_text") aug = "fmae";
  meta["augmentation"] = aug;
  meta["metric"] = inst.metric;
  meta["answer_kind"] = std::string(to_string(inst.answer.kind()));
  meta["answer"] = inst.answer.render();
  nlohmann::ordered_json verify = nlohmann::ordered_json::object();
  verify["kind"] = verify_rule_to_name(inst.verifier.kind);
  if (inst.verifier.kind == VerifyRule::Kind::NumericTolerance) {
    verify["eps"] = inst.verifier.eps;
    verify["relative"] = inst.verifier.relative;
  }
  if (inst.verifier.kind == VerifyRule::Kind::ValidPath) {
    verify["path_kind"] = inst.verifier.path_kind == PathKind::HamiltonPath
                              ? "hamilton"
                              : "shortest";
    VerifyContext ctx = verify_context(inst);
    verify["src"] = ctx.src;
    verify["dst"] = ctx.dst;
    verify["length"] = inst.optimal_length;
    verify["weighted"] = inst.weighted_paths;
  }
  meta["verify"] = verify;
  meta["template_pack"] = template_version;
  if (inst.verifier.kind == VerifyRule::Kind::ValidPath) {
    // Re-verification of alternative optimal witnesses needs the topology.
    std::string compact = graph_to_string(inst.graph, false);
    if (!compact.empty() && compact.back() == '\n') compact.pop_back();
    meta["graph"] = compact;
  }
  if (!inst.extra.empty()) {
    nlohmann::ordered_json extra = nlohmann::ordered_json::object();
    for (const auto& [k, v] : inst.extra) extra[k] = v;
    meta["extra"] = extra;
  }
  return s;
}

std::vector<InstructionSample> expand_instance(
    const TaskInstance& inst, const AugmentPlan& plan,
    const std::string& dataset, std::size_t index,
    const TemplatePack& templates, const std::string& template_version) {
  if (plan.formats.empty()) {
    throw_error(ErrorCategory::Config, "augment plan has no formats");
  }
  std::optional<TaskInstance> tae;
  std::optional<TaskInstance> fmae;
  if (plan.tae) tae = make_tae_instance(inst, templates);
  if (plan.fmae.enabled && has_maskable_attrs(inst.graph)) {
    MaskedGraph masked = mask_graph(inst.graph, plan.fmae.mask_rate,
                                    derive_seed(inst.seed, "ssl", "fmae", 0));
    fmae = make_fmae_instance(inst, masked, templates);
  }

  std::vector<InstructionSample> out;
  out.reserve(plan.formats.size() * 3);
  for (const auto& kind : plan.formats) {
    FormatSpec fmt = kind;
    out.push_back(render_sample(inst, fmt, sample_id(dataset, index, fmt),
                                template_version));
    if (tae) {
      out.push_back(render_sample(*tae, fmt, sample_id(dataset, index, fmt, "tae"),
                                  template_version));
    }
    if (fmae) {
      out.push_back(render_sample(*fmae, fmt,
                                  sample_id(dataset, index, fmt, "fmae"),
                                  template_version));
    }
  }
  return out;
}

}  // namespace forge
