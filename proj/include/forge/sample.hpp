#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "forge/task.hpp"

namespace forge {

// One instruction-tuning pair, fully rendered. Serialized as a single JSONL
// object with the fixed key order id, task, level, format, split, input,
// output, meta.
struct InstructionSample {
  std::string id;
  std::string task;
  std::string level;
  std::string format;
  std::string split;
  std::string input;
  std::string output;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
};

nlohmann::ordered_json sample_to_json(const InstructionSample& s);
InstructionSample sample_from_json(const nlohmann::json& j);

// Instances serialize with their graph embedded so the augment stage can run
// standalone on a generate stage's output.
nlohmann::ordered_json instance_to_json(const TaskInstance& inst);
TaskInstance instance_from_json(const nlohmann::json& j);

// Strict parser for the canonical renderings produced by
// CanonicalAnswer::render; inverse of render on its image.
std::optional<CanonicalAnswer> parse_canonical(CanonicalAnswer::Kind kind,
                                               const std::string& text);

std::string verify_rule_to_name(VerifyRule::Kind k);
VerifyRule::Kind verify_rule_from_name(const std::string& name);

}  // namespace forge
