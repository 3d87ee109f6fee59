#include "forge/graph_json.hpp"

#include <fstream>
#include <sstream>

#include "forge/error.hpp"
#include "forge/rng.hpp"

namespace forge {
namespace {

AttrMap attrs_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_object()) {
    throw_error(ErrorCategory::Parse, where + ": attrs must be an object");
  }
  AttrMap out;
  for (const auto& [key, value] : j.items()) {
    out.insert_or_assign(key, attr_from_json(value, where + "." + key));
  }
  return out;
}

nlohmann::ordered_json attrs_to_json(const AttrMap& attrs) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (const auto& [key, value] : attrs) out[key] = attr_to_json(value);
  return out;
}

}  // namespace

nlohmann::ordered_json attr_to_json(const AttrValue& v) {
  switch (v.kind()) {
    case AttrValue::Kind::Text: return v.as_text();
    case AttrValue::Kind::Integer: return v.as_integer();
    case AttrValue::Kind::Real: return v.as_real();
    case AttrValue::Kind::Boolean: return v.as_boolean();
  }
  throw_error(ErrorCategory::Validation, "unreachable attr kind");
}

AttrValue attr_from_json(const nlohmann::json& j, const std::string& where) {
  switch (j.type()) {
    case nlohmann::json::value_t::string:
      return AttrValue::text(j.get<std::string>());
    case nlohmann::json::value_t::number_integer:
    case nlohmann::json::value_t::number_unsigned:
      return AttrValue::integer(j.get<std::int64_t>());
    case nlohmann::json::value_t::number_float:
      return AttrValue::real(j.get<double>());
    case nlohmann::json::value_t::boolean:
      return AttrValue::boolean(j.get<bool>());
    default:
      throw_error(ErrorCategory::Parse,
                  where + ": attribute values must be string, number, or bool");
  }
}

nlohmann::ordered_json graph_to_json(const AttributedGraph& g) {
  nlohmann::ordered_json j;
  j["directed"] = g.directed();
  j["graph"] = attrs_to_json(g.graph_attrs());
  auto& nodes = j["nodes"] = nlohmann::ordered_json::array();
  for (const NodeRecord& n : g.nodes()) {
    nlohmann::ordered_json jn;
    jn["id"] = n.id;
    jn["attrs"] = attrs_to_json(n.attrs);
    nodes.push_back(std::move(jn));
  }
  auto& edges = j["edges"] = nlohmann::ordered_json::array();
  for (const EdgeRecord& e : g.edges()) {
    nlohmann::ordered_json je;
    je["src"] = e.src;
    je["dst"] = e.dst;
    je["attrs"] = attrs_to_json(e.attrs);
    edges.push_back(std::move(je));
  }
  return j;
}

AttributedGraph graph_from_json(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw_error(ErrorCategory::Parse, "graph document must be a JSON object");
  }
  if (!j.contains("directed") || !j["directed"].is_boolean()) {
    throw_error(ErrorCategory::Parse, "graph document needs boolean \"directed\"");
  }
  if (!j.contains("nodes") || !j["nodes"].is_array()) {
    throw_error(ErrorCategory::Parse, "graph document needs \"nodes\" array");
  }
  if (!j.contains("edges") || !j["edges"].is_array()) {
    throw_error(ErrorCategory::Parse, "graph document needs \"edges\" array");
  }
  AttrMap graph_attrs;
  if (j.contains("graph")) graph_attrs = attrs_from_json(j["graph"], "graph");

  std::vector<NodeRecord> nodes;
  nodes.reserve(j["nodes"].size());
  for (std::size_t i = 0; i < j["nodes"].size(); ++i) {
    const auto& jn = j["nodes"][i];
    const std::string where = "nodes[" + std::to_string(i) + "]";
    if (!jn.is_object() || !jn.contains("id") || !jn["id"].is_number_integer()) {
      throw_error(ErrorCategory::Parse, where + ": needs integer \"id\"");
    }
    NodeRecord rec;
    rec.id = jn["id"].get<int>();
    if (jn.contains("attrs")) rec.attrs = attrs_from_json(jn["attrs"], where);
    nodes.push_back(std::move(rec));
  }

  std::vector<EdgeRecord> edges;
  edges.reserve(j["edges"].size());
  for (std::size_t i = 0; i < j["edges"].size(); ++i) {
    const auto& je = j["edges"][i];
    const std::string where = "edges[" + std::to_string(i) + "]";
    if (!je.is_object() || !je.contains("src") || !je["src"].is_number_integer() ||
        !je.contains("dst") || !je["dst"].is_number_integer()) {
      throw_error(ErrorCategory::Parse, where + ": needs integer \"src\" and \"dst\"");
    }
    EdgeRecord rec;
    rec.src = je["src"].get<int>();
    rec.dst = je["dst"].get<int>();
    if (je.contains("attrs")) rec.attrs = attrs_from_json(je["attrs"], where);
    edges.push_back(std::move(rec));
  }

  return AttributedGraph(j["directed"].get<bool>(), std::move(nodes),
                         std::move(edges), std::move(graph_attrs));
}

std::string graph_to_string(const AttributedGraph& g, bool pretty) {
  const auto j = graph_to_json(g);
  return (pretty ? j.dump(2) : j.dump()) + "\n";
}

AttributedGraph graph_from_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    const std::size_t stop = std::min(e.byte, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') ++line;
    }
    throw_error(ErrorCategory::Parse,
                "invalid JSON at line " + std::to_string(line) + ": " + e.what());
  }
  return graph_from_json(j);
}

AttributedGraph load_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw_error(ErrorCategory::Io, "cannot open graph file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return graph_from_string(buf.str());
  } catch (const Error& e) {
    throw Error(e.category(), path + ": " + e.what());
  }
}

void save_graph_file(const AttributedGraph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw_error(ErrorCategory::Io, "cannot write graph file: " + path);
  }
  out << graph_to_string(g, true);
  if (!out) {
    throw_error(ErrorCategory::Io, "write failed: " + path);
  }
}

std::uint64_t graph_content_hash(const AttributedGraph& g) {
  return fnv1a64(graph_to_string(g, false));
}

}  // namespace forge
