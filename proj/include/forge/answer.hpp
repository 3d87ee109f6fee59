#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "forge/graph.hpp"

namespace forge {

// Typed answer with one canonical textual rendering per kind. The canonical
// form is what reference outputs carry; the evaluator parses predictions back
// into this shape before scoring.
class CanonicalAnswer {
public:
  enum class Kind { Integer, Real, Boolean, Label, NodeSet, NodeSeq, Text };

  static CanonicalAnswer integer(std::int64_t v);
  static CanonicalAnswer real(double v);
  static CanonicalAnswer boolean(bool v);
  static CanonicalAnswer label(std::string v);
  static CanonicalAnswer node_set(std::vector<NodeId> v);  // sorted, deduped
  static CanonicalAnswer node_seq(std::vector<NodeId> v);  // order preserved
  static CanonicalAnswer text(std::string v);

  Kind kind() const noexcept { return kind_; }
  std::int64_t as_integer() const { return int_; }
  double as_real() const { return real_; }
  bool as_boolean() const { return bool_; }
  const std::string& as_text() const { return text_; }
  const std::vector<NodeId>& as_nodes() const { return nodes_; }

  // Integer "7"; real shortest round-trip; boolean "Yes"/"No"; label and text
  // verbatim; node set "1, 3, 8" or "none"; node sequence "0 -> 2 -> 5".
  std::string render() const;

  bool operator==(const CanonicalAnswer& other) const;

private:
  Kind kind_ = Kind::Text;
  std::int64_t int_ = 0;
  double real_ = 0.0;
  bool bool_ = false;
  std::string text_;
  std::vector<NodeId> nodes_;
};

std::string_view to_string(CanonicalAnswer::Kind k);
std::optional<CanonicalAnswer::Kind> answer_kind_from_string(std::string_view s);

enum class PathKind { ShortestPath, HamiltonPath };

// How a prediction is compared to the reference. ValidPath rules accept any
// witness that satisfies the task, not just the stored one, so they need the
// graph back at verification time.
struct VerifyRule {
  enum class Kind { ExactMatch, SetEquality, NumericTolerance, ValidPath, Boolean };

  Kind kind = Kind::ExactMatch;
  double eps = 0.0;
  bool relative = false;
  PathKind path_kind = PathKind::ShortestPath;
};

struct VerifyContext {
  const AttributedGraph* graph = nullptr;
  NodeId src = -1;
  NodeId dst = -1;
  std::int64_t optimal_length = -1;
  bool weighted = false;
  std::string weight_attr = "weight";
};

// Label comparison form: lowercased, edge punctuation stripped, internal
// whitespace collapsed to single spaces.
std::string normalize_label(std::string_view s);

// True when the prediction answers the task correctly under the rule.
// Label-kind exact matches compare in normalized form.
bool verify_answer(const VerifyRule& rule, const CanonicalAnswer& reference,
                   const CanonicalAnswer& predicted, const VerifyContext& ctx);

// Walk validity helpers shared with the test oracles.
bool is_walk(const AttributedGraph& g, const std::vector<NodeId>& path);
std::optional<std::int64_t> walk_weight(const AttributedGraph& g,
                                        const std::vector<NodeId>& path,
                                        bool weighted,
                                        const std::string& weight_attr = "weight");
bool is_hamilton_path(const AttributedGraph& g, const std::vector<NodeId>& path);

}  // namespace forge
