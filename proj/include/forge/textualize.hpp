#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "forge/graph.hpp"

namespace forge {

// One of the four supported graph exchange formats. compact selects a
// single-line layout where the format has one; attribute order is always
// lexicographic by name.
struct FormatSpec {
  enum class Kind { GML, GraphML, JSON, MarkdownTable };
  Kind kind = Kind::JSON;
  bool compact = false;
};

// Canonical lowercase names used in sample metadata and CLI flags.
std::string_view format_name(FormatSpec::Kind kind);
FormatSpec parse_format_name(const std::string& name);
const std::vector<FormatSpec::Kind>& all_format_kinds();

// Deterministic rendering of g in the given format. Attribute values a
// format cannot carry raise a rendering (validation) error naming the
// offending attribute.
std::string render_graph_text(const AttributedGraph& g, const FormatSpec& fmt);

// Structural inverse of render_graph_text on its image. Syntax problems
// raise parse errors with a location; constructs outside the supported
// subset raise unsupported-feature parse errors.
AttributedGraph parse_graph_text(const std::string& text, const FormatSpec& fmt);

}  // namespace forge
