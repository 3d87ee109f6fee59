#pragma once

// Random attributed graphs for serializer round-trip tests. The generator
// deliberately produces values that stress every escaping path: pipes,
// quotes, backslashes, leading/trailing spaces, empty strings, and text
// that looks like numbers or booleans. Attribute names come from a pool
// every exchange format can carry, and each name keeps one value kind per
// element class so typed formats stay consistent.

#include <cstdint>
#include <string>
#include <vector>

#include "forge/attr_value.hpp"
#include "forge/graph.hpp"
#include "forge/rng.hpp"

namespace testsupport {

inline const std::vector<std::string>& attr_name_pool() {
  static const std::vector<std::string> pool{
      "weight", "label", "color", "role",  "score",
      "flag",   "title", "rank",  "group", "note",
  };
  return pool;
}

// Printable ASCII only; control characters are a documented rendering error
// for the table and gml formats, so round-trip inputs stay clear of them.
inline std::string random_text(forge::Rng& rng) {
  static const std::string tricky[] = {
      "", " ", "  padded  ", "true", "false", "42", "-3.5", "1e9",
      "a|b|c", "quote\"inside", "back\\slash", "\"quoted\"",
      "ends with space ", " starts with space", "comma, semi; colon:",
      "<tag> & entity", "[bracket] text", "| pipe first",
  };
  const std::uint64_t pick = rng.below(4);
  if (pick == 0) {
    return tricky[rng.below(sizeof(tricky) / sizeof(tricky[0]))];
  }
  const std::size_t len = static_cast<std::size_t>(rng.below(18));
  std::string out;
  out.reserve(len);
  for (std::size_t i = 0; i < len; ++i) {
    out += static_cast<char>(0x20 + rng.below(0x7f - 0x20));
  }
  return out;
}

inline forge::AttrValue random_value(forge::Rng& rng, forge::AttrValue::Kind kind) {
  using forge::AttrValue;
  switch (kind) {
    case AttrValue::Kind::Text: return AttrValue::text(random_text(rng));
    case AttrValue::Kind::Integer:
      return AttrValue::integer(rng.uniform_int(-1000000, 1000000));
    case AttrValue::Kind::Real: {
      // Round to a short decimal about half the time; keep full-precision
      // doubles the rest of the time to exercise shortest-round-trip output.
      double v = rng.uniform_real(-1000.0, 1000.0);
      if (rng.bernoulli(0.5)) {
        v = static_cast<double>(rng.uniform_int(-100000, 100000)) / 100.0;
      }
      return AttrValue::real(v);
    }
    case AttrValue::Kind::Boolean: return AttrValue::boolean(rng.bernoulli(0.5));
  }
  return AttrValue::integer(0);
}

// One kind per attr name, drawn once per graph; nodes/edges/graph share the
// assignment so graphml's typed keys never see a conflict.
inline forge::AttributedGraph random_graph(std::uint64_t seed) {
  using forge::AttrValue;
  forge::Rng rng(seed);
  const bool directed = rng.bernoulli(0.4);
  const int n = static_cast<int>(rng.uniform_int(0, 14));

  const auto& pool = attr_name_pool();
  std::vector<AttrValue::Kind> kind_of(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    kind_of[i] = static_cast<AttrValue::Kind>(rng.below(4));
  }

  auto random_attrs = [&](double density) {
    forge::AttrMap attrs;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (rng.bernoulli(density)) {
        attrs.emplace(pool[i], random_value(rng, kind_of[i]));
      }
    }
    return attrs;
  };

  forge::GraphBuilder b(directed);
  for (int v = 0; v < n; ++v) {
    b.add_node(random_attrs(0.3));
  }
  const double p = rng.uniform_real(0.0, 0.5);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      if (!directed && u > v) continue;
      if (directed && b.has_edge(u, v)) continue;
      if (rng.bernoulli(p)) {
        b.add_edge(u, v, random_attrs(0.25));
      }
    }
  }
  if (rng.bernoulli(0.5)) {
    forge::AttrMap gattrs = random_attrs(0.4);
    for (auto& [name, value] : gattrs) {
      b.set_graph_attr(name, value);
    }
  }
  return std::move(b).build();
}

}  // namespace testsupport
