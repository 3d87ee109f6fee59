#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "forge/textualize.hpp"
#include "support/checks.hpp"
#include "support/random_graphs.hpp"

using namespace forge;

namespace {

const FormatSpec kGml{FormatSpec::Kind::GML, false};
const FormatSpec kGmlCompact{FormatSpec::Kind::GML, true};
const FormatSpec kGraphml{FormatSpec::Kind::GraphML, false};
const FormatSpec kJson{FormatSpec::Kind::JSON, false};
const FormatSpec kJsonCompact{FormatSpec::Kind::JSON, true};
const FormatSpec kMarkdown{FormatSpec::Kind::MarkdownTable, false};

// Small mixed-attribute fixture shared by the golden-output checks.
AttributedGraph golden_graph() {
  std::vector<NodeRecord> nodes(3);
  nodes[0].id = 0;
  nodes[0].attrs.emplace("label", AttrValue::text("a b"));
  nodes[0].attrs.emplace("size", AttrValue::integer(3));
  nodes[1].id = 1;
  nodes[1].attrs.emplace("flag", AttrValue::boolean(true));
  nodes[2].id = 2;
  std::vector<EdgeRecord> edges(2);
  edges[0].src = 0;
  edges[0].dst = 1;
  edges[0].attrs.emplace("w", AttrValue::integer(2));
  edges[1].src = 1;
  edges[1].dst = 2;
  edges[1].attrs.emplace("note", AttrValue::text("x|y"));
  AttrMap graph_attrs;
  graph_attrs.emplace("name", AttrValue::text("triad"));
  graph_attrs.emplace("scale", AttrValue::real(1.5));
  return AttributedGraph(false, std::move(nodes), std::move(edges),
                         std::move(graph_attrs));
}

AttributedGraph plain(bool directed, int n,
                      std::vector<std::pair<int, int>> edge_list) {
  GraphBuilder b(directed);
  for (int i = 0; i < n; ++i) b.add_node();
  for (auto [u, v] : edge_list) b.add_edge(u, v);
  return std::move(b).build();
}

AttributedGraph with_graph_attr(const AttributedGraph& g, const std::string& name,
                                AttrValue v) {
  AttrMap attrs = g.graph_attrs();
  attrs.insert_or_assign(name, std::move(v));
  return AttributedGraph(g.directed(), g.nodes(), g.edges(), std::move(attrs));
}

AttributedGraph with_node_attr(const AttributedGraph& g, NodeId id,
                               const std::string& name, AttrValue v) {
  auto nodes = g.nodes();
  nodes[static_cast<std::size_t>(id)].attrs.insert_or_assign(name, std::move(v));
  return AttributedGraph(g.directed(), std::move(nodes), g.edges(), g.graph_attrs());
}

AttributedGraph with_edge_attr(const AttributedGraph& g, std::size_t index,
                               const std::string& name, AttrValue v) {
  auto edges = g.edges();
  edges[index].attrs.insert_or_assign(name, std::move(v));
  return AttributedGraph(g.directed(), g.nodes(), std::move(edges), g.graph_attrs());
}

}  // namespace

TEST_CASE("format names round-trip and enumerate all four formats") {
  CHECK(all_format_kinds().size() == 4);
  for (FormatSpec::Kind kind : all_format_kinds()) {
    const FormatSpec spec = parse_format_name(std::string(format_name(kind)));
    CHECK(spec.kind == kind);
    CHECK(!spec.compact);
  }
  CHECK(format_name(FormatSpec::Kind::GML) == "gml");
  CHECK(format_name(FormatSpec::Kind::GraphML) == "graphml");
  CHECK(format_name(FormatSpec::Kind::JSON) == "json");
  CHECK(format_name(FormatSpec::Kind::MarkdownTable) == "markdown");
  CHECK(testsupport::throws_error([] { parse_format_name("yaml"); },
                                  ErrorCategory::Config, "unknown format"));
}

TEST_CASE("gml rendering is bit-exact") {
  const std::string expected = R"(graph [
  directed 0
  name "triad"
  scale 1.5
  node [
    id 0
    label "a b"
    size 3
  ]
  node [
    id 1
    flag true
  ]
  node [
    id 2
  ]
  edge [
    source 0
    target 1
    w 2
  ]
  edge [
    source 1
    target 2
    note "x|y"
  ]
]
)";
  CHECK(render_graph_text(golden_graph(), kGml) == expected);

  const std::string compact =
      "graph [ directed 0 name \"triad\" scale 1.5 "
      "node [ id 0 label \"a b\" size 3 ] node [ id 1 flag true ] "
      "node [ id 2 ] edge [ source 0 target 1 w 2 ] "
      "edge [ source 1 target 2 note \"x|y\" ] ]\n";
  CHECK(render_graph_text(golden_graph(), kGmlCompact) == compact);
}

TEST_CASE("graphml rendering is bit-exact") {
  const std::string expected =
      R"(<?xml version="1.0" encoding="UTF-8"?>
<graphml xmlns="http://graphml.graphdrawing.org/xmlns">
  <key id="d0" for="graph" attr.name="name" attr.type="string"/>
  <key id="d1" for="graph" attr.name="scale" attr.type="double"/>
  <key id="d2" for="node" attr.name="flag" attr.type="boolean"/>
  <key id="d3" for="node" attr.name="label" attr.type="string"/>
  <key id="d4" for="node" attr.name="size" attr.type="long"/>
  <key id="d5" for="edge" attr.name="note" attr.type="string"/>
  <key id="d6" for="edge" attr.name="w" attr.type="long"/>
  <graph edgedefault="undirected">
    <data key="d0">triad</data>
    <data key="d1">1.5</data>
    <node id="n0">
      <data key="d3">a b</data>
      <data key="d4">3</data>
    </node>
    <node id="n1">
      <data key="d2">true</data>
    </node>
    <node id="n2"/>
    <edge source="n0" target="n1">
      <data key="d6">2</data>
    </edge>
    <edge source="n1" target="n2">
      <data key="d5">x|y</data>
    </edge>
  </graph>
</graphml>
)";
  CHECK(render_graph_text(golden_graph(), kGraphml) == expected);
}

TEST_CASE("node-link rendering is bit-exact") {
  const std::string expected = R"({
  "directed": false,
  "graph": {
    "name": "triad",
    "scale": 1.5
  },
  "nodes": [
    {
      "id": 0,
      "label": "a b",
      "size": 3
    },
    {
      "id": 1,
      "flag": true
    },
    {
      "id": 2
    }
  ],
  "links": [
    {
      "source": 0,
      "target": 1,
      "w": 2
    },
    {
      "source": 1,
      "target": 2,
      "note": "x|y"
    }
  ]
}
)";
  CHECK(render_graph_text(golden_graph(), kJson) == expected);

  const std::string compact =
      R"({"directed":false,"graph":{"name":"triad","scale":1.5},)"
      R"("nodes":[{"id":0,"label":"a b","size":3},{"id":1,"flag":true},{"id":2}],)"
      R"("links":[{"source":0,"target":1,"w":2},{"source":1,"target":2,"note":"x|y"}]})"
      "\n";
  CHECK(render_graph_text(golden_graph(), kJsonCompact) == compact);
}

TEST_CASE("markdown rendering is bit-exact") {
  const std::string expected = R"(| directed | name | scale |
| --- | --- | --- |
| false | triad | 1.5 |

| id | flag | label | size |
| --- | --- | --- | --- |
| 0 |  | a b | 3 |
| 1 | true |  |  |
| 2 |  |  |  |

| source | target | note | w |
| --- | --- | --- | --- |
| 0 | 1 |  | 2 |
| 1 | 2 | x\|y |  |
)";
  CHECK(render_graph_text(golden_graph(), kMarkdown) == expected);
}

TEST_CASE("every format round-trips random attributed graphs") {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const AttributedGraph g = testsupport::random_graph(seed);
    for (FormatSpec::Kind kind : all_format_kinds()) {
      for (bool compact : {false, true}) {
        const FormatSpec spec{kind, compact};
        const std::string text = render_graph_text(g, spec);
        const AttributedGraph back = parse_graph_text(text, spec);
        if (!(back == g)) {
          CAPTURE(seed);
          CAPTURE(format_name(kind));
          CAPTURE(compact);
          REQUIRE(back == g);
        }
        ++checked;
      }
    }
  }
  CHECK(checked == 200 * 4 * 2);
}

TEST_CASE("empty and edgeless graphs survive every format") {
  for (const AttributedGraph& g :
       {plain(false, 0, {}), plain(false, 4, {}), plain(true, 3, {{0, 1}})}) {
    for (FormatSpec::Kind kind : all_format_kinds()) {
      const FormatSpec spec{kind, false};
      CHECK(parse_graph_text(render_graph_text(g, spec), spec) == g);
    }
  }
}

TEST_CASE("markdown quoting protects lookalike and padded text") {
  AttributedGraph g = plain(false, 2, {{0, 1}});
  const std::vector<std::string> tricky{
      "", " ", "  padded  ", "true", "false", "42", "-3.5", "1e9",
      "\"quoted\"", "ends with space ", "a|b", "back\\slash"};
  for (std::size_t i = 0; i < tricky.size(); ++i) {
    g = with_node_attr(g, 0, "t" + std::to_string(i), AttrValue::text(tricky[i]));
  }
  const std::string text = render_graph_text(g, kMarkdown);
  const AttributedGraph back = parse_graph_text(text, kMarkdown);
  REQUIRE(back == g);
  // The lookalikes stayed text, not numbers or booleans.
  CHECK(back.node(0).attrs.at("t3").is_text());
  CHECK(back.node(0).attrs.at("t5").is_text());
  CHECK(back.node(0).attrs.at("t6").is_text());
}

TEST_CASE("renderers reject attributes their format cannot carry") {
  const AttributedGraph base = plain(false, 2, {{0, 1}});

  // GML reserves its structural keywords and restricts key spelling.
  for (const char* word : {"id", "source", "target", "graph", "node", "edge",
                           "directed"}) {
    CHECK(testsupport::throws_error(
        [&] {
          render_graph_text(with_node_attr(base, 0, word, AttrValue::integer(1)),
                            kGml);
        },
        ErrorCategory::Validation, "collides with a gml keyword"));
  }
  CHECK(testsupport::throws_error(
      [&] {
        render_graph_text(with_node_attr(base, 0, "bad-key", AttrValue::integer(1)),
                          kGml);
      },
      ErrorCategory::Validation, "keys must match"));
  CHECK(testsupport::throws_error(
      [&] {
        render_graph_text(
            with_graph_attr(base, "9lives", AttrValue::integer(1)), kGml);
      },
      ErrorCategory::Validation, "keys must match"));

  // Markdown reserves its fixed table columns.
  CHECK(testsupport::throws_error(
      [&] {
        render_graph_text(
            with_graph_attr(base, "directed", AttrValue::boolean(true)),
            kMarkdown);
      },
      ErrorCategory::Validation, "collides with the metadata column"));
  CHECK(testsupport::throws_error(
      [&] {
        render_graph_text(with_node_attr(base, 0, "id", AttrValue::integer(9)),
                          kMarkdown);
      },
      ErrorCategory::Validation, "collides with the node table column"));
  CHECK(testsupport::throws_error(
      [&] {
        render_graph_text(
            with_edge_attr(base, 0, "source", AttrValue::integer(9)), kMarkdown);
      },
      ErrorCategory::Validation, "collides with the edge table columns"));

  // Node-link reserves id/source/target field names.
  CHECK(testsupport::throws_error(
      [&] {
        render_graph_text(with_node_attr(base, 0, "id", AttrValue::integer(9)),
                          kJson);
      },
      ErrorCategory::Validation, "collides with the node-link id field"));
  CHECK(testsupport::throws_error(
      [&] {
        render_graph_text(
            with_edge_attr(base, 0, "target", AttrValue::integer(9)), kJson);
      },
      ErrorCategory::Validation, "node-link source/target fields"));

  // GraphML types each key; one name cannot mix value kinds.
  AttributedGraph mixed = with_node_attr(base, 0, "x", AttrValue::integer(1));
  mixed = with_node_attr(mixed, 1, "x", AttrValue::text("s"));
  CHECK(testsupport::throws_error(
      [&] { render_graph_text(mixed, kGraphml); }, ErrorCategory::Validation,
      "graphml keys are typed"));
  // Same name on different element domains is fine.
  AttributedGraph split_domain = with_node_attr(base, 0, "x", AttrValue::integer(1));
  split_domain = with_edge_attr(split_domain, 0, "x", AttrValue::text("s"));
  CHECK(parse_graph_text(render_graph_text(split_domain, kGraphml), kGraphml) ==
        split_domain);
}

TEST_CASE("gml parse errors carry line numbers") {
  CHECK(testsupport::throws_error(
      [] { parse_graph_text("digraph [\n]\n", kGml); }, ErrorCategory::Parse,
      "must start with \"graph\""));
  CHECK(testsupport::throws_error(
      [] { parse_graph_text("graph [\n  directed 2\n]\n", kGml); },
      ErrorCategory::Parse, "\"directed\" must be 0 or 1"));
  // The bare word sits on line 3.
  CHECK(testsupport::throws_error(
      [] {
        parse_graph_text("graph [\n  directed 0\n  title untitled\n]\n", kGml);
      },
      ErrorCategory::Parse, "line 3: bare word \"untitled\""));
  CHECK(testsupport::throws_error(
      [] { parse_graph_text("graph [\n  name \"a\\nb\"\n]\n", kGml); },
      ErrorCategory::Parse, "unsupported escape"));
  CHECK(testsupport::throws_error(
      [] { parse_graph_text("graph [\n  name \"open\n\"\n]\n", kGml); },
      ErrorCategory::Parse, "newline inside gml string"));
  CHECK(testsupport::throws_error(
      [] { parse_graph_text("graph [\n  directed 0\n  directed 0\n]\n", kGml); },
      ErrorCategory::Parse, "duplicate graph key"));
  CHECK(testsupport::throws_error(
      [] { parse_graph_text("graph [\n  node [\n    color \"red\"\n  ]\n]\n", kGml); },
      ErrorCategory::Parse, "node without \"id\""));
  CHECK(testsupport::throws_error(
      [] { parse_graph_text("graph [\n  edge [\n    source 0\n  ]\n]\n", kGml); },
      ErrorCategory::Parse, "edge needs \"source\" and \"target\""));
  CHECK(testsupport::throws_error(
      [] { parse_graph_text("graph [\n  directed 0\n]\nleftover\n", kGml); },
      ErrorCategory::Parse, "trailing content"));
  CHECK(testsupport::throws_error(
      [] { parse_graph_text("graph [\n  name \"open\n", kGml); },
      ErrorCategory::Parse, ""));
}

TEST_CASE("graphml parse rejects out-of-subset documents") {
  const std::string ok = render_graph_text(golden_graph(), kGraphml);
  CHECK(parse_graph_text(ok, kGraphml) == golden_graph());

  CHECK(testsupport::throws_error(
      [] { parse_graph_text("<gexf></gexf>", kGraphml); }, ErrorCategory::Parse,
      "root element must be <graphml>"));
  CHECK(testsupport::throws_error(
      [] {
        parse_graph_text(
            "<graphml><graph edgedefault=\"undirected\">"
            "<node id=\"n0\"><data key=\"zz\">1</data></node>"
            "</graph></graphml>",
            kGraphml);
      },
      ErrorCategory::Parse, "unknown data key"));
  CHECK(testsupport::throws_error(
      [] {
        parse_graph_text(
            "<graphml><key id=\"d0\" for=\"node\" attr.name=\"x\" "
            "attr.type=\"float\"/><graph edgedefault=\"undirected\">"
            "</graph></graphml>",
            kGraphml);
      },
      ErrorCategory::Parse, "unsupported attr.type"));
  CHECK(testsupport::throws_error(
      [] { parse_graph_text("<graphml><graph></graph></graphml>", kGraphml); },
      ErrorCategory::Parse, "edgedefault"));
  CHECK(testsupport::throws_error(
      [] {
        parse_graph_text(
            "<graphml><key id=\"d0\" for=\"node\" attr.name=\"x\" "
            "attr.type=\"long\"/><key id=\"d0\" for=\"edge\" attr.name=\"y\" "
            "attr.type=\"long\"/><graph edgedefault=\"undirected\">"
            "</graph></graphml>",
            kGraphml);
      },
      ErrorCategory::Parse, "duplicate key id"));
  CHECK(testsupport::throws_error(
      [] {
        parse_graph_text(
            "<graphml><graph edgedefault=\"undirected\"></graph></graphml>"
            "<extra/>",
            kGraphml);
      },
      ErrorCategory::Parse, "trailing content"));
  CHECK(testsupport::throws_error(
      [] {
        parse_graph_text(
            "<graphml><graph edgedefault=\"undirected\">"
            "<node id=\"n0\"/><node id=\"n0\"/></graph></graphml>",
            kGraphml);
      },
      ErrorCategory::Validation, "ids must be 0..n-1"));
  CHECK(testsupport::throws_error(
      [] { parse_graph_text("<graphml>&copy;</graphml>", kGraphml); },
      ErrorCategory::Parse, "unsupported xml entity"));
}

TEST_CASE("node-link parse rejects out-of-subset documents") {
  CHECK(testsupport::throws_error(
      [] { parse_graph_text("[1, 2]", kJson); }, ErrorCategory::Parse,
      "must be a JSON object"));
  CHECK(testsupport::throws_error(
      [] {
        parse_graph_text(
            "{\"directed\": false, \"nodes\": [], \"links\": [], "
            "\"multigraph\": false}",
            kJson);
      },
      ErrorCategory::Parse, "unsupported node-link field \"multigraph\""));
  CHECK(testsupport::throws_error(
      [] { parse_graph_text("{\"nodes\": [], \"links\": []}", kJson); },
      ErrorCategory::Parse, "needs boolean \"directed\""));
  CHECK(testsupport::throws_error(
      [] { parse_graph_text("{\"directed\": false, \"nodes\": []}", kJson); },
      ErrorCategory::Parse, "\"nodes\" and \"links\" arrays"));
  CHECK(testsupport::throws_error(
      [] {
        parse_graph_text(
            "{\"directed\": false, \"graph\": 3, \"nodes\": [], \"links\": []}",
            kJson);
      },
      ErrorCategory::Parse, "\"graph\" must be an object"));
  CHECK(testsupport::throws_error(
      [] {
        parse_graph_text(
            "{\"directed\": false, \"nodes\": [{\"name\": 1}], \"links\": []}",
            kJson);
      },
      ErrorCategory::Parse, "nodes[0]: needs integer \"id\""));
  CHECK(testsupport::throws_error(
      [] {
        parse_graph_text(
            "{\"directed\": false, \"nodes\": [{\"id\": 0}], "
            "\"links\": [{\"source\": 0}]}",
            kJson);
      },
      ErrorCategory::Parse, "links[0]: needs integer \"source\" and \"target\""));
  // Syntax errors report the line they occur on.
  CHECK(testsupport::throws_error(
      [] { parse_graph_text("{\n  \"directed\": false,\n  oops\n}", kJson); },
      ErrorCategory::Parse, "line 3"));
}

TEST_CASE("markdown parse rejects malformed tables") {
  CHECK(testsupport::throws_error(
      [] { parse_graph_text("| directed |\n| --- |\n| false |\n", kMarkdown); },
      ErrorCategory::Parse, "found 1 blocks"));
  CHECK(testsupport::throws_error(
      [] {
        parse_graph_text(
            "| directed |\n| --- | --- |\n| false |\n\n"
            "| id |\n| --- |\n\n| source | target |\n| --- | --- |\n",
            kMarkdown);
      },
      ErrorCategory::Parse, "separator width"));
  CHECK(testsupport::throws_error(
      [] {
        parse_graph_text(
            "| directed |\n| ~~~ |\n| false |\n\n"
            "| id |\n| --- |\n\n| source | target |\n| --- | --- |\n",
            kMarkdown);
      },
      ErrorCategory::Parse, "malformed separator row"));
  CHECK(testsupport::throws_error(
      [] {
        parse_graph_text(
            "| directed |\n| --- |\n| false | extra |\n\n"
            "| id |\n| --- |\n\n| source | target |\n| --- | --- |\n",
            kMarkdown);
      },
      ErrorCategory::Parse, "row width"));
  CHECK(testsupport::throws_error(
      [] {
        parse_graph_text(
            "| nodes |\n| --- |\n| false |\n\n"
            "| id |\n| --- |\n\n| source | target |\n| --- | --- |\n",
            kMarkdown);
      },
      ErrorCategory::Parse, "must start with a \"directed\" column"));
  CHECK(testsupport::throws_error(
      [] {
        parse_graph_text(
            "| directed |\n| --- |\n| false |\n| true |\n\n"
            "| id |\n| --- |\n\n| source | target |\n| --- | --- |\n",
            kMarkdown);
      },
      ErrorCategory::Parse, "exactly one row"));
  CHECK(testsupport::throws_error(
      [] {
        parse_graph_text(
            "| directed |\n| --- |\n| false |\n\n"
            "| id |\n| --- |\n| seven |\n\n"
            "| source | target |\n| --- | --- |\n",
            kMarkdown);
      },
      ErrorCategory::Parse, "is not an integer"));
  CHECK(testsupport::throws_error(
      [] {
        parse_graph_text(
            "| directed |\n| --- |\n| false |\n\n"
            "| id |\n| --- |\n| 0 |\n| 1 |\n\n"
            "| source | target |\n| --- | --- |\n| 0 | q |\n",
            kMarkdown);
      },
      ErrorCategory::Parse, "edge endpoints must be integers"));
  CHECK(testsupport::throws_error(
      [] {
        parse_graph_text(
            "| directed | note |\n| --- | --- |\n| false | \"open |\n\n"
            "| id |\n| --- |\n\n| source | target |\n| --- | --- |\n",
            kMarkdown);
      },
      ErrorCategory::Parse, "unterminated quoted cell"));
  CHECK(testsupport::throws_error(
      [] {
        parse_graph_text(
            "| directed |\n| --- |\n| false | junk\n\n"
            "| id |\n| --- |\n\n| source | target |\n| --- | --- |\n",
            kMarkdown);
      },
      ErrorCategory::Parse, "content after the closing '|'"));
  CHECK(testsupport::throws_error(
      [] {
        parse_graph_text(
            "no pipe\n\n| id |\n| --- |\n\n"
            "| source | target |\n| --- | --- |\n",
            kMarkdown);
      },
      ErrorCategory::Parse, "table rows must start with '|'"));
}

TEST_CASE("parsed structural mistakes surface as graph validation errors") {
  // A well-formed document can still describe a broken graph.
  CHECK(testsupport::throws_error(
      [] {
        parse_graph_text("graph [\n  directed 0\n  node [\n    id 5\n  ]\n]\n",
                         kGml);
      },
      ErrorCategory::Validation, "ids must be 0..n-1"));
  CHECK(testsupport::throws_error(
      [] {
        parse_graph_text(
            "{\"directed\": false, \"nodes\": [{\"id\": 0}], "
            "\"links\": [{\"source\": 0, \"target\": 3}]}",
            kJson);
      },
      ErrorCategory::Validation, "missing node"));
}

TEST_CASE("docs golden files pin each format grammar bit-exact") {
  const std::string root = FORGE_REPO_DIR "/docs/golden/";
  const AttributedGraph g = graph_from_string(
      testsupport::read_text(root + "example_graph.json"));
  const std::pair<FormatSpec, std::string> renders[] = {
      {kGml, "example.gml"},
      {kGraphml, "example.graphml"},
      {kJson, "example.json"},
      {kMarkdown, "example.md"},
  };
  for (const auto& [fmt, name] : renders) {
    CAPTURE(name);
    const std::string want = testsupport::read_text(root + name);
    REQUIRE(!want.empty());
    CHECK(render_graph_text(g, fmt) == want);
    CHECK(parse_graph_text(want, fmt) == g);
  }
}
