#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "forge/augment.hpp"
#include "forge/er.hpp"
#include "forge/graph_json.hpp"
#include "forge/lang.hpp"
#include "forge/rng.hpp"
#include "forge/task_gen.hpp"
#include "support/checks.hpp"
#include "support/oracles.hpp"

using namespace forge;

namespace {

AugmentPlan plan_from(const std::string& text) {
  return parse_augment_plan(nlohmann::json::parse(text));
}

// n nodes in a ring, one integer attr per node: population size n.
AttributedGraph ring_with_weights(int n, bool directed = false) {
  std::vector<NodeRecord> nodes(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    nodes[static_cast<std::size_t>(i)].id = i;
    nodes[static_cast<std::size_t>(i)].attrs.emplace(
        "weight", AttrValue::integer(i + 1));
  }
  std::vector<EdgeRecord> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, {}});
  return AttributedGraph(directed, std::move(nodes), std::move(edges), {});
}

AttributedGraph bare_path(int n, bool directed = false) {
  GraphBuilder b(directed);
  for (int i = 0; i < n; ++i) b.add_node();
  for (int i = 0; i + 1 < n; ++i) b.add_edge(i, i + 1);
  return std::move(b).build();
}

// Two nodes, one edge, exactly one maskable attr carrying `value`: the FMAE
// probe is forced onto it.
AttributedGraph single_attr_graph(AttrValue value, bool on_edge,
                                  bool directed = false) {
  std::vector<NodeRecord> nodes(2);
  nodes[0].id = 0;
  nodes[1].id = 1;
  std::vector<EdgeRecord> edges{{0, 1, {}}};
  if (on_edge) {
    edges[0].attrs.emplace("v", std::move(value));
  } else {
    nodes[0].attrs.emplace("v", std::move(value));
  }
  return AttributedGraph(directed, std::move(nodes), std::move(edges), {});
}

TaskInstance parent_for(AttributedGraph g, std::uint64_t seed = 99) {
  TaskInstance inst;
  inst.task = "degree_count";
  inst.level = "entity";
  inst.metric = "accuracy";
  inst.graph = std::move(g);
  inst.target = Target::node(0);
  inst.answer = CanonicalAnswer::integer(inst.graph.degree(0));
  inst.verifier.kind = VerifyRule::Kind::ExactMatch;
  inst.description = "A test graph.";
  inst.query = "What is the degree of node 0?";
  inst.answer_prose = "Node 0 has degree " + inst.answer.render() + ".";
  inst.seed = seed;
  return inst;
}

std::size_t count_masked(const AttributedGraph& g) {
  std::size_t n = 0;
  auto scan = [&](const AttrMap& attrs) {
    for (const auto& [name, value] : attrs) {
      (void)name;
      if (value.is_text() && value.as_text() == "unknown") ++n;
    }
  };
  for (const auto& node : g.nodes()) scan(node.attrs);
  for (const auto& e : g.edges()) scan(e.attrs);
  return n;
}

}  // namespace

TEST_CASE("augment plans parse strictly") {
  const AugmentPlan p = plan_from(R"({
    "formats": ["gml", "json", "markdown"],
    "tae": true,
    "fmae": {"enabled": true, "mask_rate": 0.25}
  })");
  CHECK(p.formats.size() == 3);
  CHECK(p.formats[0].kind == FormatSpec::Kind::GML);
  CHECK(p.tae);
  CHECK(p.fmae.enabled);
  CHECK(p.fmae.mask_rate == doctest::Approx(0.25));

  const AugmentPlan defaults = plan_from(R"({"formats": ["json"]})");
  CHECK(!defaults.tae);
  CHECK(!defaults.fmae.enabled);

  CHECK(testsupport::throws_error([] { plan_from("[]"); }, ErrorCategory::Config,
                                  "expected a JSON object"));
  CHECK(testsupport::throws_error([] { plan_from("{}"); }, ErrorCategory::Config,
                                  "\"formats\" must be a non-empty array"));
  CHECK(testsupport::throws_error([] { plan_from(R"({"formats": []})"); },
                                  ErrorCategory::Config, "non-empty"));
  CHECK(testsupport::throws_error([] { plan_from(R"({"formats": [3]})"); },
                                  ErrorCategory::Config, "must be strings"));
  CHECK(testsupport::throws_error(
      [] { plan_from(R"({"formats": ["gml", "gml"]})"); }, ErrorCategory::Config,
      "duplicate format \"gml\""));
  CHECK(testsupport::throws_error(
      [] { plan_from(R"({"formats": ["yaml"]})"); }, ErrorCategory::Config,
      "unknown format"));
  CHECK(testsupport::throws_error(
      [] { plan_from(R"({"formats": ["json"], "tae": 1})"); },
      ErrorCategory::Config, "\"tae\" must be a boolean"));
  CHECK(testsupport::throws_error(
      [] { plan_from(R"({"formats": ["json"], "fmae": true})"); },
      ErrorCategory::Config, "\"fmae\" must be an object"));
  CHECK(testsupport::throws_error(
      [] {
        plan_from(R"({"formats": ["json"], "fmae": {"enabled": true, "mask_rate": 0}})");
      },
      ErrorCategory::Config, "mask_rate must be in (0, 1]"));
  CHECK(testsupport::throws_error(
      [] {
        plan_from(R"({"formats": ["json"], "fmae": {"enabled": true, "mask_rate": 1.5}})");
      },
      ErrorCategory::Config, "mask_rate must be in (0, 1]"));
  CHECK(testsupport::throws_error(
      [] { plan_from(R"({"formats": ["json"], "frmats": []})"); },
      ErrorCategory::Config, "unknown field \"frmats\""));

  testsupport::TempDir dir;
  const auto good = dir.path() / "plan.json";
  testsupport::write_text(good, R"({"formats": ["gml"], "tae": true})");
  CHECK(load_augment_plan(good.string()).tae);
  CHECK(testsupport::throws_error(
      [&] { load_augment_plan((dir.path() / "nope.json").string()); },
      ErrorCategory::Io, "cannot open"));
  const auto bad = dir.path() / "bad.json";
  testsupport::write_text(bad, "{oops");
  CHECK(testsupport::throws_error([&] { load_augment_plan(bad.string()); },
                                  ErrorCategory::Config, "bad.json"));
}

TEST_CASE("maskability requires a non-boolean node or edge attribute") {
  CHECK(!has_maskable_attrs(bare_path(3)));
  CHECK(has_maskable_attrs(ring_with_weights(3)));
  CHECK(has_maskable_attrs(single_attr_graph(AttrValue::text("hi"), true)));

  std::vector<NodeRecord> nodes(1);
  nodes[0].id = 0;
  nodes[0].attrs.emplace("flag", AttrValue::boolean(true));
  const AttributedGraph bool_only(false, std::move(nodes), {}, {});
  CHECK(!has_maskable_attrs(bool_only));

  // Graph-level attributes do not count: they are never masked.
  AttrMap gattrs;
  gattrs.emplace("title", AttrValue::text("x"));
  const AttributedGraph graph_attr_only(false, {{0, {}}}, {}, std::move(gattrs));
  CHECK(!has_maskable_attrs(graph_attr_only));
}

TEST_CASE("masking replaces a ceil fraction of the population") {
  const AttributedGraph g = ring_with_weights(10);  // population 10

  const MaskedGraph m2 = mask_graph(g, 0.2, 7);
  CHECK(m2.masked.size() == 2);
  CHECK(count_masked(m2.graph) == 2);
  const MaskedGraph m3 = mask_graph(g, 0.11, 7);  // ceil(1.1) = 2
  CHECK(m3.masked.size() == 2);
  const MaskedGraph mall = mask_graph(g, 1.0, 7);
  CHECK(mall.masked.size() == 10);
  CHECK(count_masked(mall.graph) == 10);
  const MaskedGraph mone = mask_graph(g, 0.05, 7);  // ceil(0.5) = 1
  CHECK(mone.masked.size() == 1);

  // Topology and unmasked values survive.
  CHECK(m2.graph.node_count() == g.node_count());
  CHECK(m2.graph.edge_count() == g.edge_count());
  CHECK(m2.graph.directed() == g.directed());
  CHECK(m2.probe < m2.masked.size());
  for (const MaskTarget& t : m2.masked) {
    CHECK(!t.is_edge);
    const auto& masked_value =
        m2.graph.node(static_cast<NodeId>(t.index)).attrs.at(t.attr);
    CHECK(masked_value.as_text() == "unknown");
    CHECK(t.original ==
          g.node(static_cast<NodeId>(t.index)).attrs.at(t.attr));
  }

  // Deterministic in the seed.
  const MaskedGraph again = mask_graph(g, 0.2, 7);
  CHECK(again.graph == m2.graph);
  CHECK(again.probe == m2.probe);
  bool differs = false;
  for (std::uint64_t s = 8; s < 16 && !differs; ++s) {
    differs = !(mask_graph(g, 0.2, s).graph == m2.graph);
  }
  CHECK(differs);

  CHECK(testsupport::throws_error([&] { mask_graph(g, 0.0, 1); },
                                  ErrorCategory::Validation,
                                  "mask rate must be in (0, 1]"));
  CHECK(testsupport::throws_error([&] { mask_graph(g, 1.5, 1); },
                                  ErrorCategory::Validation, "mask rate"));
  CHECK(testsupport::throws_error([&] { mask_graph(bare_path(3), 0.2, 1); },
                                  ErrorCategory::Validation,
                                  "masking is not applicable"));
}

TEST_CASE("boolean attributes are never masked") {
  std::vector<NodeRecord> nodes(2);
  nodes[0].id = 0;
  nodes[0].attrs.emplace("flag", AttrValue::boolean(true));
  nodes[0].attrs.emplace("score", AttrValue::integer(5));
  nodes[1].id = 1;
  nodes[1].attrs.emplace("flag", AttrValue::boolean(false));
  const AttributedGraph g(false, std::move(nodes), {{{0, 1, {}}}}, {});

  const MaskedGraph m = mask_graph(g, 1.0, 3);  // population is just "score"
  CHECK(m.masked.size() == 1);
  CHECK(m.masked[0].attr == "score");
  CHECK(m.graph.node(0).attrs.at("flag").is_boolean());
  CHECK(m.graph.node(1).attrs.at("flag").is_boolean());
}

TEST_CASE("tae instances list neighbors of a seed-derived node") {
  const TaskInstance parent = parent_for(ring_with_weights(6), 1234);
  const TaskInstance tae = make_tae_instance(parent, builtin_templates());
  CHECK(tae.task == "tae");
  CHECK(tae.level == "ssl");
  CHECK(tae.metric == "accuracy");
  CHECK(tae.verifier.kind == VerifyRule::Kind::SetEquality);
  CHECK(tae.answer.kind() == CanonicalAnswer::Kind::NodeSet);
  REQUIRE(tae.target.kind == Target::Kind::Node);
  CHECK(tae.answer.as_nodes() ==
        oracles::oracle_neighbors(parent.graph, tae.target.a, false));
  CHECK(tae.query.find("directly connected to node " +
                       std::to_string(tae.target.a)) != std::string::npos);
  CHECK(tae.query.find("Consider only edges going out") == std::string::npos);
  CHECK(verify_answer(tae.verifier, tae.answer, tae.answer, verify_context(tae)));

  // Same parent seed, same probe; the instance is a pure function of it.
  const TaskInstance again = make_tae_instance(parent, builtin_templates());
  CHECK(again.target.a == tae.target.a);
  CHECK(again.answer == tae.answer);
  CHECK(again.query == tae.query);

  const TaskInstance directed_parent = parent_for(ring_with_weights(6, true), 77);
  const TaskInstance dtae = make_tae_instance(directed_parent, builtin_templates());
  CHECK(dtae.answer.as_nodes() ==
        oracles::oracle_neighbors(directed_parent.graph, dtae.target.a, true));
  CHECK(dtae.query.find("Consider only edges going out of node " +
                        std::to_string(dtae.target.a)) != std::string::npos);

  TaskInstance empty_parent = parent_for(ring_with_weights(3));
  empty_parent.graph = AttributedGraph(false, {}, {}, {});
  CHECK(testsupport::throws_error(
      [&] { make_tae_instance(empty_parent, builtin_templates()); },
      ErrorCategory::Validation, "non-empty graph"));
}

TEST_CASE("tae answers agree with the oracle across many parents") {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    ErConfig cfg;
    cfg.n_range = {2, 10};
    cfg.p_range = {0.1, 0.7};
    cfg.directed = seed % 3 == 0;
    const TaskInstance parent = parent_for(gen_er(cfg, rng), seed * 31 + 1);
    const TaskInstance tae = make_tae_instance(parent, builtin_templates());
    CHECK(tae.answer.as_nodes() ==
          oracles::oracle_neighbors(parent.graph, tae.target.a,
                                    parent.graph.directed()));
    ++checked;
  }
  CHECK(checked == 100);
}

TEST_CASE("fmae routes metrics by the probed value shape") {
  auto fmae_for = [](AttrValue v, bool on_edge, bool directed = false) {
    const TaskInstance parent =
        parent_for(single_attr_graph(std::move(v), on_edge, directed), 5);
    const MaskedGraph masked =
        mask_graph(parent.graph, 1.0, derive_seed(parent.seed, "ssl", "fmae", 0));
    return make_fmae_instance(parent, masked, builtin_templates());
  };

  const TaskInstance ti = fmae_for(AttrValue::integer(42), false);
  CHECK(ti.task == "fmae");
  CHECK(ti.metric == "accuracy");
  CHECK(ti.answer.kind() == CanonicalAnswer::Kind::Integer);
  CHECK(ti.answer.as_integer() == 42);
  CHECK(ti.verifier.kind == VerifyRule::Kind::ExactMatch);
  CHECK(ti.extra.at("probe_attr") == "v");
  CHECK(ti.extra.at("probe_element") == "node 0");
  CHECK(ti.extra.at("masked_count") == "1");
  CHECK(ti.level == "ssl");
  // The masked graph, not the original, is what the sample shows.
  CHECK(ti.graph.node(0).attrs.at("v").as_text() == "unknown");

  const TaskInstance tr = fmae_for(AttrValue::real(2.75), false);
  CHECK(tr.task == "fmae");
  CHECK(tr.answer.kind() == CanonicalAnswer::Kind::Real);
  CHECK(tr.verifier.kind == VerifyRule::Kind::NumericTolerance);
  CHECK(tr.verifier.eps == doctest::Approx(1e-6));
  CHECK(tr.verifier.relative);

  const TaskInstance tw = fmae_for(AttrValue::text("deep running text"), true);
  CHECK(tw.task == "fmae_text");
  CHECK(tw.metric == "rouge_l");
  CHECK(tw.answer.kind() == CanonicalAnswer::Kind::Text);
  CHECK(tw.answer.as_text() == "deep running text");
  CHECK(tw.extra.at("probe_element") == "the edge between node 0 and node 1");

  const TaskInstance tl = fmae_for(AttrValue::text("category_a"), true, true);
  CHECK(tl.task == "fmae");
  CHECK(tl.metric == "accuracy");
  CHECK(tl.answer.kind() == CanonicalAnswer::Kind::Label);
  CHECK(tl.extra.at("probe_element") == "the edge from node 0 to node 1");
}

TEST_CASE("rendered samples compose prompt and response sections") {
  const TaskInstance parent = parent_for(ring_with_weights(4), 11);
  const FormatSpec fmt{FormatSpec::Kind::JSON, false};
  const InstructionSample s = render_sample(parent, fmt, "ds-00000-json", "builtin-1");

  CHECK(s.id == "ds-00000-json");
  CHECK(s.task == "degree_count");
  CHECK(s.level == "entity");
  CHECK(s.format == "json");
  const std::string graph_text = render_graph_text(parent.graph, fmt);
  CHECK(s.input == lang_g(parent.description, graph_text, parent.query));
  CHECK(s.input.rfind("# Graph Description\n", 0) == 0);
  CHECK(s.input.find("\n# Graph Text\n") != std::string::npos);
  CHECK(s.input.find("\n# Query\n") != std::string::npos);
  CHECK(s.output == lang_y(parent.answer_prose, parent.answer.render()));
  CHECK(s.output.rfind("# Answer\n", 0) == 0);
  CHECK(s.output.find("\nAnswer: 2\n") != std::string::npos);

  // Fixed metadata key order.
  std::vector<std::string> keys;
  for (auto it = s.meta.begin(); it != s.meta.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"seed", "n_nodes", "n_edges",
                                         "augmentation", "metric", "answer_kind",
                                         "answer", "verify", "template_pack"});
  CHECK(s.meta.at("seed").get<std::uint64_t>() == 11);
  CHECK(s.meta.at("n_nodes").get<int>() == 4);
  CHECK(s.meta.at("n_edges").get<int>() == 4);
  CHECK(s.meta.at("augmentation").get<std::string>() == "none");
  CHECK(s.meta.at("metric").get<std::string>() == "accuracy");
  CHECK(s.meta.at("answer_kind").get<std::string>() == "integer");
  CHECK(s.meta.at("answer").get<std::string>() == "2");
  CHECK(s.meta.at("verify").at("kind").get<std::string>() == "exact");
  CHECK(s.meta.at("template_pack").get<std::string>() == "builtin-1");
}

TEST_CASE("path verification metadata embeds the graph") {
  TaskInstance inst = parent_for(ring_with_weights(5), 21);
  inst.task = "hamilton_path";
  inst.level = "path";
  inst.answer = CanonicalAnswer::boolean(true);
  inst.verifier = {VerifyRule::Kind::ValidPath, 0.0, false, PathKind::HamiltonPath};
  inst.target = Target::none();
  inst.witness = {0, 1, 2, 3, 4};

  const InstructionSample s = render_sample(
      inst, FormatSpec{FormatSpec::Kind::GML, false}, "x-00001-gml", "builtin-1");
  const auto& verify = s.meta.at("verify");
  CHECK(verify.at("kind").get<std::string>() == "valid_path");
  CHECK(verify.at("path_kind").get<std::string>() == "hamilton");
  CHECK(verify.at("src").get<int>() == -1);
  CHECK(verify.at("dst").get<int>() == -1);
  CHECK(verify.at("length").get<std::int64_t>() == -1);
  CHECK(verify.at("weighted").get<bool>() == false);
  REQUIRE(s.meta.contains("graph"));
  const std::string embedded = s.meta.at("graph").get<std::string>();
  CHECK(embedded.find('\n') == std::string::npos);
  CHECK(graph_from_string(embedded) == inst.graph);

  // NumericTolerance rules carry eps and relative instead.
  TaskInstance tol = parent_for(ring_with_weights(4), 22);
  tol.verifier = {VerifyRule::Kind::NumericTolerance, 1e-6, true,
                  PathKind::ShortestPath};
  const InstructionSample s2 = render_sample(
      tol, FormatSpec{FormatSpec::Kind::JSON, true}, "x-00002-json-compact",
      "builtin-1");
  CHECK(s2.meta.at("verify").at("eps").get<double>() == doctest::Approx(1e-6));
  CHECK(s2.meta.at("verify").at("relative").get<bool>());
  CHECK(!s2.meta.contains("graph"));
  CHECK(s2.format == "json-compact");
}

TEST_CASE("leak check rejects answers readable from the graph text") {
  AttributedGraph g = single_attr_graph(AttrValue::text("redblue"), false);
  TaskInstance inst = parent_for(std::move(g), 31);
  inst.answer = CanonicalAnswer::label("redblue");
  inst.answer_prose = "The label is redblue.";

  // Without the marker the sample renders; classification datasets set it.
  const FormatSpec fmt{FormatSpec::Kind::JSON, false};
  CHECK(render_sample(inst, fmt, "a-00000-json", "v").output.find("redblue") !=
        std::string::npos);

  inst.extra["leak_check"] = "1";
  CHECK(testsupport::throws_error(
      [&] { render_sample(inst, fmt, "a-00000-json", "v"); },
      ErrorCategory::Validation,
      "label leakage in sample a-00000-json: answer \"redblue\""));

  // Multi-token answers leak only as contiguous runs.
  inst.answer = CanonicalAnswer::label("redblue extra");
  CHECK_NOTHROW(render_sample(inst, fmt, "a-00000-json", "v"));
}

TEST_CASE("sample ids pad the index and append format and suffix") {
  const FormatSpec json{FormatSpec::Kind::JSON, false};
  const FormatSpec jsonc{FormatSpec::Kind::JSON, true};
  CHECK(sample_id("web", 7, json) == "web-00007-json");
  CHECK(sample_id("web", 7, jsonc, "tae") == "web-00007-json-compact-tae");
  CHECK(sample_id("d", 12345, json) == "d-12345-json");
  CHECK(sample_id("d", 0, FormatSpec{FormatSpec::Kind::MarkdownTable, false},
                  "fmae") == "d-00000-markdown-fmae");
}

TEST_CASE("expansion yields per-format samples with shared ssl instances") {
  const AugmentPlan plan = plan_from(R"({
    "formats": ["gml", "graphml", "json", "markdown"],
    "tae": true,
    "fmae": {"enabled": true, "mask_rate": 0.2}
  })");
  const TaskInstance parent = parent_for(ring_with_weights(6), 404);
  const auto samples = expand_instance(parent, plan, "ds", 3,
                                       builtin_templates(), "builtin-1");
  REQUIRE(samples.size() == 12);  // (base + tae + fmae) x 4 formats

  const std::vector<std::string> expected_ids{
      "ds-00003-gml",      "ds-00003-gml-tae",      "ds-00003-gml-fmae",
      "ds-00003-graphml",  "ds-00003-graphml-tae",  "ds-00003-graphml-fmae",
      "ds-00003-json",     "ds-00003-json-tae",     "ds-00003-json-fmae",
      "ds-00003-markdown", "ds-00003-markdown-tae", "ds-00003-markdown-fmae"};
  for (std::size_t i = 0; i < samples.size(); ++i) {
    CHECK(samples[i].id == expected_ids[i]);
  }

  // Augmentation tag and task per slot.
  for (std::size_t f = 0; f < 4; ++f) {
    CHECK(samples[f * 3].meta.at("augmentation") == "none");
    CHECK(samples[f * 3 + 1].meta.at("augmentation") == "tae");
    CHECK(samples[f * 3 + 1].task == "tae");
    CHECK(samples[f * 3 + 2].meta.at("augmentation") == "fmae");
  }

  // The SSL instances are shared across formats: same answer, query, output.
  for (std::size_t f = 1; f < 4; ++f) {
    CHECK(samples[f * 3 + 1].output == samples[1].output);
    CHECK(samples[f * 3 + 1].meta.at("answer") == samples[1].meta.at("answer"));
    CHECK(samples[f * 3 + 2].output == samples[2].output);
    CHECK(samples[f * 3 + 2].meta.at("answer") == samples[2].meta.at("answer"));
  }

  // Graph text differs between formats, so inputs differ.
  CHECK(samples[0].input != samples[3].input);

  // A graph without maskable attributes drops only the FMAE slot.
  const TaskInstance bare = parent_for(bare_path(5), 405);
  const auto no_fmae = expand_instance(bare, plan, "ds", 4, builtin_templates(),
                                       "builtin-1");
  REQUIRE(no_fmae.size() == 8);
  for (const auto& s : no_fmae) {
    CHECK(s.meta.at("augmentation") != "fmae");
  }

  // No SSL flags: exactly one sample per format.
  const AugmentPlan slim = plan_from(R"({"formats": ["json", "gml"]})");
  CHECK(expand_instance(parent, slim, "ds", 5, builtin_templates(), "b").size() == 2);

  // Expansion is deterministic.
  const auto again = expand_instance(parent, plan, "ds", 3, builtin_templates(),
                                     "builtin-1");
  REQUIRE(again.size() == samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    CHECK(sample_to_json(again[i]) == sample_to_json(samples[i]));
  }
}

TEST_CASE("token counting groups word runs and counts symbols") {
  CHECK(count_tokens("") == 0);
  CHECK(count_tokens("   ") == 0);
  CHECK(count_tokens("hello world") == 2);
  CHECK(count_tokens("a_b c-d") == 4);       // a_b, c, -, d
  CHECK(count_tokens("0 -> 2 -> 5") == 7);   // 3 numbers + 4 symbol chars
  CHECK(count_tokens("{\"id\":3}") == 7);    // { " id " : 3 }
}
