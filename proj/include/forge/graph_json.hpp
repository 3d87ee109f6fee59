#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "forge/graph.hpp"

namespace forge {

// Canonical JSON form used for on-disk graphs and content hashing. Key order
// is fixed (directed, graph, nodes, edges); attr maps are lexicographically
// sorted; reals always carry a '.' or exponent so the value kind survives a
// round trip.
nlohmann::ordered_json graph_to_json(const AttributedGraph& g);
AttributedGraph graph_from_json(const nlohmann::json& j);

std::string graph_to_string(const AttributedGraph& g, bool pretty = true);
AttributedGraph graph_from_string(const std::string& text);

AttributedGraph load_graph_file(const std::string& path);
void save_graph_file(const AttributedGraph& g, const std::string& path);

// AttrValue <-> JSON helpers shared by the textualizer and the pipeline.
nlohmann::ordered_json attr_to_json(const AttrValue& v);
AttrValue attr_from_json(const nlohmann::json& j, const std::string& where);

// FNV-1a over the compact canonical serialization; split disjointness and
// dedup both key on this.
std::uint64_t graph_content_hash(const AttributedGraph& g);

}  // namespace forge
