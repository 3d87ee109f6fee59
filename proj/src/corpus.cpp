#include "forge/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "forge/error.hpp"
#include "forge/rng.hpp"

namespace forge {

std::vector<std::string> assign_splits(std::size_t count, const SplitSpec& spec,
                                       std::uint64_t seed) {
  if (spec.train < 0 || spec.valid < 0 || spec.test < 0) {
    throw_error(ErrorCategory::Config, "split sizes must be non-negative");
  }
  const std::size_t need = static_cast<std::size_t>(spec.train) +
                           static_cast<std::size_t>(spec.valid) +
                           static_cast<std::size_t>(spec.test);
  if (count < need) {
    throw_error(ErrorCategory::Validation,
                "not enough instances to split: need " + std::to_string(need) +
                    ", have " + std::to_string(count) + " (short by " +
                    std::to_string(need - count) + ")");
  }
  std::vector<std::size_t> order(count);
  for (std::size_t i = 0; i < count; ++i) order[i] = i;
  Rng rng(seed);
  rng.shuffle(order);

  std::vector<std::string> out(count);
  std::size_t k = 0;
  for (int i = 0; i < spec.train; ++i) out[order[k++]] = "train";
  for (int i = 0; i < spec.valid; ++i) out[order[k++]] = "valid";
  for (int i = 0; i < spec.test; ++i) out[order[k++]] = "test";
  return out;
}

Corpus assemble_corpus(std::vector<InstructionSample> samples,
                       const nlohmann::ordered_json& datasets,
                       const std::vector<std::string>& formats,
                       const std::string& template_pack_version,
                       std::uint64_t config_hash) {
  std::sort(samples.begin(), samples.end(),
            [](const InstructionSample& a, const InstructionSample& b) {
              return a.id < b.id;
            });
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].id == samples[i - 1].id) {
      throw_error(ErrorCategory::Validation,
                  "duplicate sample id \"" + samples[i].id + "\"");
    }
  }

  std::map<std::string, int> split_counts;
  struct TaskAgg {
    std::string metric;
    std::string level;
    std::string answer_kind;
    std::map<std::string, int> splits;
  };
  std::map<std::string, TaskAgg> tasks;
  for (const auto& s : samples) {
    if (s.split != "train" && s.split != "valid" && s.split != "test") {
      throw_error(ErrorCategory::Validation,
                  "sample " + s.id + " has no split assignment");
    }
    ++split_counts[s.split];
    auto& agg = tasks[s.task];
    agg.metric = s.meta.value("metric", "");
    agg.level = s.level;
    agg.answer_kind = s.meta.value("answer_kind", "");
    ++agg.splits[s.split];
  }

  Corpus corpus;
  corpus.samples = std::move(samples);

  nlohmann::ordered_json m = nlohmann::ordered_json::object();
  m["schema_version"] = kSchemaVersion;
  m["tool_version"] = kToolVersion;
  m["template_pack"] = template_pack_version;
  char hex[32];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(config_hash));
  m["config_hash"] = hex;
  nlohmann::ordered_json splits = nlohmann::ordered_json::object();
  splits["train"] = split_counts["train"];
  splits["valid"] = split_counts["valid"];
  splits["test"] = split_counts["test"];
  m["splits"] = splits;
  m["datasets"] = datasets;
  nlohmann::ordered_json jt = nlohmann::ordered_json::object();
  for (const auto& [name, agg] : tasks) {
    nlohmann::ordered_json t = nlohmann::ordered_json::object();
    t["metric"] = agg.metric;
    t["level"] = agg.level;
    t["answer_kind"] = agg.answer_kind;
    nlohmann::ordered_json ts = nlohmann::ordered_json::object();
    for (const char* sp : {"train", "valid", "test"}) {
      ts[sp] = agg.splits.count(sp) ? agg.splits.at(sp) : 0;
    }
    t["splits"] = ts;
    jt[name] = t;
  }
  m["tasks"] = jt;
  m["formats"] = formats;
  m["samples"] = static_cast<std::int64_t>(corpus.samples.size());
  corpus.manifest = std::move(m);
  return corpus;
}

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw_error(ErrorCategory::Io, "cannot write " + path);
  out << content;
  if (!out) throw_error(ErrorCategory::Io, "write failed for " + path);
}

}  // namespace

void emit_corpus(const Corpus& corpus, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw_error(ErrorCategory::Io, "cannot create directory " + dir + ": " +
                                       ec.message());
  }
  std::map<std::string, std::string> bodies = {
      {"train", ""}, {"valid", ""}, {"test", ""}};
  for (const auto& s : corpus.samples) {
    bodies[s.split] += sample_to_json(s).dump();
    bodies[s.split] += '\n';
  }
  for (const auto& [split, body] : bodies) {
    write_file((fs::path(dir) / (split + ".jsonl")).string(), body);
  }
  write_file((fs::path(dir) / "manifest.json").string(),
             corpus.manifest.dump(2) + "\n");
}

Corpus load_corpus(const std::string& dir) {
  namespace fs = std::filesystem;
  Corpus corpus;
  const std::string manifest_path = (fs::path(dir) / "manifest.json").string();
  std::ifstream min(manifest_path, std::ios::binary);
  if (!min) throw_error(ErrorCategory::Io, "cannot open " + manifest_path);
  try {
    corpus.manifest = nlohmann::ordered_json::parse(min);
  } catch (const nlohmann::json::parse_error& e) {
    throw_error(ErrorCategory::Parse, manifest_path + ": " + e.what());
  }
  if (!corpus.manifest.is_object() ||
      corpus.manifest.value("schema_version", "") != kSchemaVersion) {
    throw_error(ErrorCategory::Parse,
                manifest_path + ": unsupported corpus schema");
  }
  for (const char* split : {"train", "valid", "test"}) {
    const std::string path =
        (fs::path(dir) / (std::string(split) + ".jsonl")).string();
    std::ifstream in(path, std::ios::binary);
    if (!in) throw_error(ErrorCategory::Io, "cannot open " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::parse_error& e) {
        throw_error(ErrorCategory::Parse, path + ":" + std::to_string(lineno) +
                                              ": " + e.what());
      }
      InstructionSample s = sample_from_json(j);
      if (s.split != split) {
        throw_error(ErrorCategory::Validation,
                    path + ":" + std::to_string(lineno) + ": sample " + s.id +
                        " carries split \"" + s.split + "\"");
      }
      corpus.samples.push_back(std::move(s));
    }
  }
  std::sort(corpus.samples.begin(), corpus.samples.end(),
            [](const InstructionSample& a, const InstructionSample& b) {
              return a.id < b.id;
            });
  for (std::size_t i = 1; i < corpus.samples.size(); ++i) {
    if (corpus.samples[i].id == corpus.samples[i - 1].id) {
      throw_error(ErrorCategory::Validation,
                  "duplicate sample id \"" + corpus.samples[i].id + "\"");
    }
  }
  return corpus;
}

}  // namespace forge
