#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "forge/sample.hpp"

namespace forge {

inline constexpr const char* kSchemaVersion = "1";
inline constexpr const char* kToolVersion = "0.1.0";

struct SplitSpec {
  int train = 500;
  int valid = 100;
  int test = 200;
};

// Seeded shuffle, then prefix assignment train/valid/test. Items beyond the
// three quotas get an empty split name and are dropped from emission.
// Fewer items than the quotas demand is an error naming the shortfall.
std::vector<std::string> assign_splits(std::size_t count, const SplitSpec& spec,
                                       std::uint64_t seed);

struct Corpus {
  std::vector<InstructionSample> samples;  // sorted by id
  nlohmann::ordered_json manifest;
};

// Sorts by id, rejects duplicate ids, and builds the manifest. counts of
// generated/assigned/dropped instances per dataset come from the caller.
Corpus assemble_corpus(std::vector<InstructionSample> samples,
                       const nlohmann::ordered_json& datasets,
                       const std::vector<std::string>& formats,
                       const std::string& template_pack_version,
                       std::uint64_t config_hash);

// Writes train.jsonl / valid.jsonl / test.jsonl / manifest.json under dir.
void emit_corpus(const Corpus& corpus, const std::string& dir);

Corpus load_corpus(const std::string& dir);

}  // namespace forge
