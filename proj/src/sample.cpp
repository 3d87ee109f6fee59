#include "forge/sample.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

#include "forge/error.hpp"
#include "forge/graph_json.hpp"

namespace forge {

namespace {

std::string require_string(const nlohmann::json& j, const char* key,
                           const char* where) {
  if (!j.contains(key) || !j.at(key).is_string()) {
    throw_error(ErrorCategory::Parse,
                std::string(where) + ": missing string field \"" + key + "\"");
  }
  return j.at(key).get<std::string>();
}

bool parse_int64(const std::string& s, std::int64_t& out) {
  if (s.empty()) return false;
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto res = std::from_chars(begin, end, out);
  return res.ec == std::errc() && res.ptr == end;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && std::isfinite(out);
}

}  // namespace

nlohmann::ordered_json sample_to_json(const InstructionSample& s) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  j["id"] = s.id;
  j["task"] = s.task;
  j["level"] = s.level;
  j["format"] = s.format;
  j["split"] = s.split;
  j["input"] = s.input;
  j["output"] = s.output;
  j["meta"] = s.meta;
  return j;
}

InstructionSample sample_from_json(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw_error(ErrorCategory::Parse, "sample: expected a JSON object");
  }
  static const char* kKeys[] = {"id",    "task",  "level",  "format",
                                "split", "input", "output", "meta"};
  for (const char* key : kKeys) {
    if (!j.contains(key)) {
      throw_error(ErrorCategory::Parse,
                  std::string("sample: missing field \"") + key + "\"");
    }
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* key : kKeys) {
      if (it.key() == key) known = true;
    }
    if (!known) {
      throw_error(ErrorCategory::Parse,
                  "sample: unsupported field \"" + it.key() + "\"");
    }
  }
  InstructionSample s;
  s.id = require_string(j, "id", "sample");
  s.task = require_string(j, "task", "sample");
  s.level = require_string(j, "level", "sample");
  s.format = require_string(j, "format", "sample");
  s.split = require_string(j, "split", "sample");
  s.input = require_string(j, "input", "sample");
  s.output = require_string(j, "output", "sample");
  if (!j.at("meta").is_object()) {
    throw_error(ErrorCategory::Parse, "sample: \"meta\" must be an object");
  }
  s.meta = j.at("meta");
  return s;
}

std::string verify_rule_to_name(VerifyRule::Kind k) {
  switch (k) {
    case VerifyRule::Kind::ExactMatch: return "exact";
    case VerifyRule::Kind::SetEquality: return "set";
    case VerifyRule::Kind::NumericTolerance: return "numeric";
    case VerifyRule::Kind::ValidPath: return "valid_path";
    case VerifyRule::Kind::Boolean: return "boolean";
  }
  throw_error(ErrorCategory::Validation, "unknown verify rule kind");
}

VerifyRule::Kind verify_rule_from_name(const std::string& name) {
  if (name == "exact") return VerifyRule::Kind::ExactMatch;
  if (name == "set") return VerifyRule::Kind::SetEquality;
  if (name == "numeric") return VerifyRule::Kind::NumericTolerance;
  if (name == "valid_path") return VerifyRule::Kind::ValidPath;
  if (name == "boolean") return VerifyRule::Kind::Boolean;
  throw_error(ErrorCategory::Parse, "unknown verify rule \"" + name + "\"");
}

std::optional<CanonicalAnswer> parse_canonical(CanonicalAnswer::Kind kind,
                                               const std::string& text) {
  using Kind = CanonicalAnswer::Kind;
  switch (kind) {
    case Kind::Integer: {
      std::int64_t v = 0;
      if (!parse_int64(text, v)) return std::nullopt;
      return CanonicalAnswer::integer(v);
    }
    case Kind::Real: {
      double v = 0.0;
      if (!parse_double(text, v)) return std::nullopt;
      return CanonicalAnswer::real(v);
    }
    case Kind::Boolean: {
      if (text == "Yes") return CanonicalAnswer::boolean(true);
      if (text == "No") return CanonicalAnswer::boolean(false);
      return std::nullopt;
    }
    case Kind::Label:
      return CanonicalAnswer::label(text);
    case Kind::Text:
      return CanonicalAnswer::text(text);
    case Kind::NodeSet: {
      if (text == "none") return CanonicalAnswer::node_set({});
      std::vector<NodeId> ids;
      std::size_t pos = 0;
      while (pos < text.size()) {
        std::size_t next = text.find(", ", pos);
        std::string piece = text.substr(
            pos, next == std::string::npos ? std::string::npos : next - pos);
        std::int64_t v = 0;
        if (!parse_int64(piece, v)) return std::nullopt;
        ids.push_back(static_cast<NodeId>(v));
        if (next == std::string::npos) break;
        pos = next + 2;
      }
      if (ids.empty()) return std::nullopt;
      return CanonicalAnswer::node_set(ids);
    }
    case Kind::NodeSeq: {
      std::vector<NodeId> ids;
      std::size_t pos = 0;
      while (pos < text.size()) {
        std::size_t next = text.find(" -> ", pos);
        std::string piece = text.substr(
            pos, next == std::string::npos ? std::string::npos : next - pos);
        std::int64_t v = 0;
        if (!parse_int64(piece, v)) return std::nullopt;
        ids.push_back(static_cast<NodeId>(v));
        if (next == std::string::npos) break;
        pos = next + 4;
      }
      if (ids.empty()) return std::nullopt;
      return CanonicalAnswer::node_seq(ids);
    }
  }
  return std::nullopt;
}

namespace {

nlohmann::ordered_json verify_to_json(const VerifyRule& rule) {
  nlohmann::ordered_json v = nlohmann::ordered_json::object();
  v["kind"] = verify_rule_to_name(rule.kind);
  if (rule.kind == VerifyRule::Kind::NumericTolerance) {
    v["eps"] = rule.eps;
    v["relative"] = rule.relative;
  }
  if (rule.kind == VerifyRule::Kind::ValidPath) {
    v["path_kind"] = rule.path_kind == PathKind::HamiltonPath ? "hamilton"
                                                              : "shortest";
  }
  return v;
}

VerifyRule verify_from_json(const nlohmann::json& v) {
  VerifyRule rule;
  rule.kind = verify_rule_from_name(require_string(v, "kind", "verify"));
  if (rule.kind == VerifyRule::Kind::NumericTolerance) {
    if (v.contains("eps")) rule.eps = v.at("eps").get<double>();
    if (v.contains("relative")) rule.relative = v.at("relative").get<bool>();
  }
  if (rule.kind == VerifyRule::Kind::ValidPath) {
    std::string pk = require_string(v, "path_kind", "verify");
    if (pk == "hamilton") {
      rule.path_kind = PathKind::HamiltonPath;
    } else if (pk == "shortest") {
      rule.path_kind = PathKind::ShortestPath;
    } else {
      throw_error(ErrorCategory::Parse, "verify: unknown path_kind \"" + pk + "\"");
    }
  }
  return rule;
}

std::string target_kind_name(Target::Kind k) {
  switch (k) {
    case Target::Kind::None: return "none";
    case Target::Kind::Node: return "node";
    case Target::Kind::Edge: return "edge";
  }
  return "none";
}

}  // namespace

nlohmann::ordered_json instance_to_json(const TaskInstance& inst) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  j["task"] = inst.task;
  j["level"] = inst.level;
  j["metric"] = inst.metric;
  j["seed"] = inst.seed;
  j["graph"] = graph_to_json(inst.graph);
  nlohmann::ordered_json target = nlohmann::ordered_json::object();
  target["kind"] = target_kind_name(inst.target.kind);
  if (inst.target.kind != Target::Kind::None) target["a"] = inst.target.a;
  if (inst.target.kind == Target::Kind::Edge) target["b"] = inst.target.b;
  j["target"] = target;
  j["description"] = inst.description;
  j["query"] = inst.query;
  j["answer_prose"] = inst.answer_prose;
  nlohmann::ordered_json answer = nlohmann::ordered_json::object();
  answer["kind"] = std::string(to_string(inst.answer.kind()));
  answer["value"] = inst.answer.render();
  j["answer"] = answer;
  j["verify"] = verify_to_json(inst.verifier);
  if (inst.verifier.kind == VerifyRule::Kind::ValidPath) {
    j["weighted_paths"] = inst.weighted_paths;
    j["optimal_length"] = inst.optimal_length;
  }
  if (!inst.witness.empty()) j["witness"] = inst.witness;
  if (!inst.extra.empty()) {
    nlohmann::ordered_json extra = nlohmann::ordered_json::object();
    for (const auto& [k, v] : inst.extra) extra[k] = v;
    j["extra"] = extra;
  }
  return j;
}

TaskInstance instance_from_json(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw_error(ErrorCategory::Parse, "instance: expected a JSON object");
  }
  TaskInstance inst;
  inst.task = require_string(j, "task", "instance");
  inst.level = require_string(j, "level", "instance");
  inst.metric = require_string(j, "metric", "instance");
  if (!j.contains("seed") || !j.at("seed").is_number_unsigned()) {
    throw_error(ErrorCategory::Parse, "instance: missing unsigned field \"seed\"");
  }
  inst.seed = j.at("seed").get<std::uint64_t>();
  if (!j.contains("graph")) {
    throw_error(ErrorCategory::Parse, "instance: missing field \"graph\"");
  }
  inst.graph = graph_from_json(j.at("graph"));
  if (j.contains("target")) {
    const auto& t = j.at("target");
    std::string kind = require_string(t, "kind", "instance target");
    if (kind == "node") {
      inst.target = Target::node(t.at("a").get<NodeId>());
    } else if (kind == "edge") {
      inst.target = Target::edge(t.at("a").get<NodeId>(), t.at("b").get<NodeId>());
    } else if (kind != "none") {
      throw_error(ErrorCategory::Parse,
                  "instance: unknown target kind \"" + kind + "\"");
    }
  }
  inst.description = require_string(j, "description", "instance");
  inst.query = require_string(j, "query", "instance");
  inst.answer_prose = require_string(j, "answer_prose", "instance");
  if (!j.contains("answer") || !j.at("answer").is_object()) {
    throw_error(ErrorCategory::Parse, "instance: missing object field \"answer\"");
  }
  std::string kind_name = require_string(j.at("answer"), "kind", "instance answer");
  auto kind = answer_kind_from_string(kind_name);
  if (!kind) {
    throw_error(ErrorCategory::Parse,
                "instance: unknown answer kind \"" + kind_name + "\"");
  }
  auto parsed = parse_canonical(
      *kind, require_string(j.at("answer"), "value", "instance answer"));
  if (!parsed) {
    throw_error(ErrorCategory::Parse, "instance: malformed canonical answer");
  }
  inst.answer = *parsed;
  if (!j.contains("verify")) {
    throw_error(ErrorCategory::Parse, "instance: missing field \"verify\"");
  }
  inst.verifier = verify_from_json(j.at("verify"));
  if (j.contains("weighted_paths")) {
    inst.weighted_paths = j.at("weighted_paths").get<bool>();
  }
  if (j.contains("optimal_length")) {
    inst.optimal_length = j.at("optimal_length").get<std::int64_t>();
  }
  if (j.contains("witness")) {
    inst.witness = j.at("witness").get<std::vector<NodeId>>();
  }
  if (j.contains("extra")) {
    for (auto it = j.at("extra").begin(); it != j.at("extra").end(); ++it) {
      inst.extra[it.key()] = it.value().get<std::string>();
    }
  }
  return inst;
}

}  // namespace forge
