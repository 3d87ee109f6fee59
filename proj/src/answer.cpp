#include "forge/answer.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "forge/error.hpp"

namespace forge {

CanonicalAnswer CanonicalAnswer::integer(std::int64_t v) {
  CanonicalAnswer a;
  a.kind_ = Kind::Integer;
  a.int_ = v;
  return a;
}

CanonicalAnswer CanonicalAnswer::real(double v) {
  if (!std::isfinite(v)) {
    throw_error(ErrorCategory::Validation, "real answer must be finite");
  }
  CanonicalAnswer a;
  a.kind_ = Kind::Real;
  a.real_ = v;
  return a;
}

CanonicalAnswer CanonicalAnswer::boolean(bool v) {
  CanonicalAnswer a;
  a.kind_ = Kind::Boolean;
  a.bool_ = v;
  return a;
}

CanonicalAnswer CanonicalAnswer::label(std::string v) {
  CanonicalAnswer a;
  a.kind_ = Kind::Label;
  a.text_ = std::move(v);
  return a;
}

CanonicalAnswer CanonicalAnswer::node_set(std::vector<NodeId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  CanonicalAnswer a;
  a.kind_ = Kind::NodeSet;
  a.nodes_ = std::move(v);
  return a;
}

CanonicalAnswer CanonicalAnswer::node_seq(std::vector<NodeId> v) {
  CanonicalAnswer a;
  a.kind_ = Kind::NodeSeq;
  a.nodes_ = std::move(v);
  return a;
}

CanonicalAnswer CanonicalAnswer::text(std::string v) {
  CanonicalAnswer a;
  a.kind_ = Kind::Text;
  a.text_ = std::move(v);
  return a;
}

std::string CanonicalAnswer::render() const {
  switch (kind_) {
    case Kind::Integer: return std::to_string(int_);
    case Kind::Real: return format_real(real_);
    case Kind::Boolean: return bool_ ? "Yes" : "No";
    case Kind::Label:
    case Kind::Text: return text_;
    case Kind::NodeSet: {
      if (nodes_.empty()) return "none";
      std::string out;
      for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (i != 0) out += ", ";
        out += std::to_string(nodes_[i]);
      }
      return out;
    }
    case Kind::NodeSeq: {
      std::string out;
      for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (i != 0) out += " -> ";
        out += std::to_string(nodes_[i]);
      }
      return out;
    }
  }
  return text_;
}

bool CanonicalAnswer::operator==(const CanonicalAnswer& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case Kind::Integer: return int_ == other.int_;
    case Kind::Real: return real_ == other.real_;
    case Kind::Boolean: return bool_ == other.bool_;
    case Kind::Label:
    case Kind::Text: return text_ == other.text_;
    case Kind::NodeSet:
    case Kind::NodeSeq: return nodes_ == other.nodes_;
  }
  return false;
}

std::string_view to_string(CanonicalAnswer::Kind k) {
  switch (k) {
    case CanonicalAnswer::Kind::Integer: return "integer";
    case CanonicalAnswer::Kind::Real: return "real";
    case CanonicalAnswer::Kind::Boolean: return "boolean";
    case CanonicalAnswer::Kind::Label: return "label";
    case CanonicalAnswer::Kind::NodeSet: return "node_set";
    case CanonicalAnswer::Kind::NodeSeq: return "node_seq";
    case CanonicalAnswer::Kind::Text: return "text";
  }
  return "text";
}

std::optional<CanonicalAnswer::Kind> answer_kind_from_string(std::string_view s) {
  using K = CanonicalAnswer::Kind;
  if (s == "integer") return K::Integer;
  if (s == "real") return K::Real;
  if (s == "boolean") return K::Boolean;
  if (s == "label") return K::Label;
  if (s == "node_set") return K::NodeSet;
  if (s == "node_seq") return K::NodeSeq;
  if (s == "text") return K::Text;
  return std::nullopt;
}

bool is_walk(const AttributedGraph& g, const std::vector<NodeId>& path) {
  if (path.empty()) return false;
  for (NodeId v : path) {
    if (!g.has_node(v)) return false;
  }
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (!g.has_edge(path[i], path[i + 1])) return false;
  }
  return true;
}

std::optional<std::int64_t> walk_weight(const AttributedGraph& g,
                                        const std::vector<NodeId>& path,
                                        bool weighted,
                                        const std::string& weight_attr) {
  if (!is_walk(g, path)) return std::nullopt;
  std::int64_t total = 0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (!weighted) {
      total += 1;
      continue;
    }
    const EdgeRecord* e = g.find_edge(path[i], path[i + 1]);
    auto it = e->attrs.find(weight_attr);
    if (it == e->attrs.end() || !it->second.is_integer()) return std::nullopt;
    total += it->second.as_integer();
  }
  return total;
}

bool is_hamilton_path(const AttributedGraph& g, const std::vector<NodeId>& path) {
  if (static_cast<int>(path.size()) != g.node_count()) return false;
  std::set<NodeId> seen(path.begin(), path.end());
  if (static_cast<int>(seen.size()) != g.node_count()) return false;
  return is_walk(g, path);
}

namespace {

bool numeric_close(double reference, double predicted, double eps, bool relative) {
  const double diff = std::fabs(reference - predicted);
  if (!relative) return diff <= eps;
  const double scale = std::max(std::fabs(reference), 1.0);
  return diff <= eps * scale;
}

double numeric_value(const CanonicalAnswer& a, bool* ok) {
  *ok = true;
  if (a.kind() == CanonicalAnswer::Kind::Integer) {
    return static_cast<double>(a.as_integer());
  }
  if (a.kind() == CanonicalAnswer::Kind::Real) return a.as_real();
  *ok = false;
  return 0.0;
}

bool verify_shortest_path(const CanonicalAnswer& reference,
                          const CanonicalAnswer& predicted,
                          const VerifyContext& ctx) {
  // Numeric reply: must equal the optimal length.
  bool ok = false;
  const double value = numeric_value(predicted, &ok);
  if (ok) {
    return value == static_cast<double>(ctx.optimal_length);
  }
  // Path reply: any valid src..dst walk of optimal total weight counts.
  if (predicted.kind() == CanonicalAnswer::Kind::NodeSeq && ctx.graph != nullptr) {
    const auto& path = predicted.as_nodes();
    if (path.empty() || path.front() != ctx.src || path.back() != ctx.dst) {
      return false;
    }
    const auto w = walk_weight(*ctx.graph, path, ctx.weighted, ctx.weight_attr);
    return w.has_value() && *w == ctx.optimal_length;
  }
  return predicted == reference;
}

bool verify_hamilton(const CanonicalAnswer& reference,
                     const CanonicalAnswer& predicted, const VerifyContext& ctx) {
  if (predicted.kind() == CanonicalAnswer::Kind::Boolean) {
    return reference.kind() == CanonicalAnswer::Kind::Boolean &&
           predicted.as_boolean() == reference.as_boolean();
  }
  // A concrete path is accepted only when one exists and the supplied path
  // really is a Hamilton path of this graph.
  if (predicted.kind() == CanonicalAnswer::Kind::NodeSeq && ctx.graph != nullptr) {
    if (reference.kind() == CanonicalAnswer::Kind::Boolean && !reference.as_boolean()) {
      return false;
    }
    return is_hamilton_path(*ctx.graph, predicted.as_nodes());
  }
  return false;
}

}  // namespace

std::string normalize_label(std::string_view s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  auto is_word = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9');
  };
  while (begin < end && !is_word(s[begin])) ++begin;
  while (end > begin && !is_word(s[end - 1])) --end;
  std::string out;
  bool pending_space = false;
  for (std::size_t i = begin; i < end; ++i) {
    const char c = s[i];
    if (c == ' ' || c == '\t' || c == '\n') {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty()) out += ' ';
    pending_space = false;
    out += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
  }
  return out;
}

bool verify_answer(const VerifyRule& rule, const CanonicalAnswer& reference,
                   const CanonicalAnswer& predicted, const VerifyContext& ctx) {
  switch (rule.kind) {
    case VerifyRule::Kind::ExactMatch:
      if (predicted.kind() == CanonicalAnswer::Kind::Label &&
          reference.kind() == CanonicalAnswer::Kind::Label) {
        return normalize_label(predicted.as_text()) ==
               normalize_label(reference.as_text());
      }
      return predicted == reference;
    case VerifyRule::Kind::SetEquality: {
      if (predicted.kind() != CanonicalAnswer::Kind::NodeSet ||
          reference.kind() != CanonicalAnswer::Kind::NodeSet) {
        return predicted == reference;
      }
      return predicted.as_nodes() == reference.as_nodes();
    }
    case VerifyRule::Kind::NumericTolerance: {
      bool ref_ok = false;
      bool pred_ok = false;
      const double r = numeric_value(reference, &ref_ok);
      const double p = numeric_value(predicted, &pred_ok);
      if (!ref_ok || !pred_ok) return false;
      return numeric_close(r, p, rule.eps, rule.relative);
    }
    case VerifyRule::Kind::Boolean:
      return predicted.kind() == CanonicalAnswer::Kind::Boolean &&
             reference.kind() == CanonicalAnswer::Kind::Boolean &&
             predicted.as_boolean() == reference.as_boolean();
    case VerifyRule::Kind::ValidPath:
      return rule.path_kind == PathKind::ShortestPath
                 ? verify_shortest_path(reference, predicted, ctx)
                 : verify_hamilton(reference, predicted, ctx);
  }
  return false;
}

}  // namespace forge
