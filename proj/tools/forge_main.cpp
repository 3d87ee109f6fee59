#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "forge/augment.hpp"
#include "forge/corpus.hpp"
#include "forge/error.hpp"
#include "forge/evaluate.hpp"
#include "forge/llm_client.hpp"
#include "forge/parallel.hpp"
#include "forge/sample.hpp"
#include "forge/suite.hpp"

namespace {

namespace fs = std::filesystem;

std::string version_line() {
  return std::string("graphforge ") + forge::kToolVersion + " (schema " +
         forge::kSchemaVersion + ", templates " +
         forge::builtin_templates().version + ")";
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) forge::throw_error(forge::ErrorCategory::Io, "cannot write " + path);
  out << content;
  if (!out) {
    forge::throw_error(forge::ErrorCategory::Io, "write failed for " + path);
  }
}

struct CommonOpts {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> templates;
  int jobs = 0;
};

forge::BuildOverrides overrides_from(const CommonOpts& c) {
  forge::BuildOverrides o;
  o.seed = c.seed;
  o.templates_path = c.templates;
  o.jobs = c.jobs;
  return o;
}

int run_generate(const std::string& config_path, const std::string& out_dir,
                 const CommonOpts& common) {
  forge::SuiteConfig cfg = forge::load_suite_config(config_path);
  auto datasets = forge::generate_instances(cfg, overrides_from(common));
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    forge::throw_error(forge::ErrorCategory::Io,
                       "cannot create directory " + out_dir + ": " + ec.message());
  }
  std::string body;
  std::size_t total = 0;
  for (const auto& [name, instances] : datasets) {
    for (std::size_t i = 0; i < instances.size(); ++i) {
      nlohmann::ordered_json line = nlohmann::ordered_json::object();
      line["dataset"] = name;
      line["index"] = i;
      line["instance"] = forge::instance_to_json(instances[i]);
      body += line.dump();
      body += '\n';
      ++total;
    }
  }
  write_text((fs::path(out_dir) / "instances.jsonl").string(), body);
  std::printf("generated %zu instances across %zu datasets -> %s\n", total,
              datasets.size(), out_dir.c_str());
  return 0;
}

int run_augment(const std::string& in_dir, const std::string& plan_path,
                const std::string& out_dir, const CommonOpts& common) {
  const std::string in_path = (fs::path(in_dir) / "instances.jsonl").string();
  std::ifstream in(in_path, std::ios::binary);
  if (!in) {
    forge::throw_error(forge::ErrorCategory::Io, "cannot open " + in_path);
  }
  forge::AugmentPlan plan = forge::load_augment_plan(plan_path);
  forge::TemplatePack storage;
  const forge::TemplatePack* templates = &forge::builtin_templates();
  if (common.templates) {
    storage = forge::load_template_pack(*common.templates);
    templates = &storage;
  }

  std::vector<forge::InstructionSample> samples;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      forge::throw_error(forge::ErrorCategory::Parse,
                         in_path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (!j.contains("dataset") || !j.contains("index") ||
        !j.contains("instance")) {
      forge::throw_error(forge::ErrorCategory::Parse,
                         in_path + ":" + std::to_string(lineno) +
                             ": need dataset, index, and instance fields");
    }
    forge::TaskInstance inst = forge::instance_from_json(j.at("instance"));
    auto rendered = forge::expand_instance(
        inst, plan, j.at("dataset").get<std::string>(),
        j.at("index").get<std::size_t>(), *templates, templates->version);
    for (auto& s : rendered) samples.push_back(std::move(s));
  }
  std::sort(samples.begin(), samples.end(),
            [](const forge::InstructionSample& a,
               const forge::InstructionSample& b) { return a.id < b.id; });
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    forge::throw_error(forge::ErrorCategory::Io,
                       "cannot create directory " + out_dir + ": " + ec.message());
  }
  std::string body;
  for (const auto& s : samples) {
    body += forge::sample_to_json(s).dump();
    body += '\n';
  }
  write_text((fs::path(out_dir) / "samples.jsonl").string(), body);
  std::printf("rendered %zu samples -> %s\n", samples.size(), out_dir.c_str());
  return 0;
}

int run_build(const std::string& config_path, const std::string& out_dir,
              const CommonOpts& common) {
  forge::SuiteConfig cfg = forge::load_suite_config(config_path);
  forge::Corpus corpus = forge::build_corpus(cfg, overrides_from(common));
  forge::emit_corpus(corpus, out_dir);
  const auto& splits = corpus.manifest.at("splits");
  std::printf("built corpus: %zu samples (train %lld / valid %lld / test %lld) -> %s\n",
              corpus.samples.size(),
              static_cast<long long>(splits.at("train").get<std::int64_t>()),
              static_cast<long long>(splits.at("valid").get<std::int64_t>()),
              static_cast<long long>(splits.at("test").get<std::int64_t>()),
              out_dir.c_str());
  return 0;
}

int run_infer(const std::string& corpus_dir, const std::string& split,
              const std::string& endpoint_path, const std::string& out_path,
              std::int64_t limit, bool no_resume) {
  forge::Corpus corpus = forge::load_corpus(corpus_dir);
  forge::EndpointConfig endpoint = forge::load_endpoint_config(endpoint_path);
  forge::InferOptions opt;
  opt.split = split;
  opt.resume = !no_resume;
  opt.limit = limit;
  forge::InferStats stats = forge::run_inference(corpus, endpoint, opt, out_path);
  std::printf("inference: %zu sent, %zu completed, %zu failed, %zu resumed -> %s\n",
              stats.requested, stats.completed, stats.failed, stats.skipped,
              out_path.c_str());
  return stats.failed == 0 ? 0 : 1;
}

int run_eval(const std::string& corpus_dir, const std::string& split,
             const std::string& preds_path, const std::string& report_path,
             std::optional<double> penalty) {
  forge::Corpus corpus = forge::load_corpus(corpus_dir);
  auto preds = forge::load_predictions(preds_path);
  forge::EvalOptions opt;
  opt.split = split;
  opt.unparseable_error = penalty;
  forge::EvalReport report = forge::evaluate_predictions(corpus, preds, opt);
  write_text(report_path, forge::report_to_json(report).dump(2) + "\n");
  std::fputs(forge::report_table(report).c_str(), stdout);
  std::printf("report -> %s\n", report_path.c_str());
  return 0;
}

int run_format_report(const std::string& corpus_dir, const std::string& split,
                      const std::string& preds_path,
                      const std::string& out_path) {
  forge::Corpus corpus = forge::load_corpus(corpus_dir);
  std::optional<std::map<std::string, std::string>> preds;
  if (!preds_path.empty()) preds = forge::load_predictions(preds_path);
  nlohmann::ordered_json report =
      forge::format_report(corpus, split, preds ? &*preds : nullptr);
  std::fputs(forge::format_report_table(report).c_str(), stdout);
  if (!out_path.empty()) {
    write_text(out_path, report.dump(2) + "\n");
    std::printf("report -> %s\n", out_path.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic toolkit for graph instruction corpora"};
  app.set_version_flag("--version", version_line());
  app.require_subcommand(1);

  CommonOpts common;
  std::string config_path, out_dir, in_dir, plan_path;
  std::string corpus_dir, split = "test", endpoint_path, out_path, preds_path;
  std::string report_path = "report.json";
  std::int64_t limit = -1;
  bool no_resume = false;
  std::optional<double> penalty;

  auto add_common = [&](CLI::App* cmd, bool with_seed) {
    if (with_seed) {
      cmd->add_option("--seed", common.seed, "override the config seed");
    }
    cmd->add_option("--jobs", common.jobs, "worker threads (0 = auto)");
    cmd->add_option("--templates", common.templates,
                    "prose template pack JSON overriding the builtin pack");
  };

  auto* gen = app.add_subcommand("generate",
                                 "generate task instances from a config");
  gen->add_option("--config", config_path, "suite config JSON")->required();
  gen->add_option("--out", out_dir, "output directory")->required();
  add_common(gen, true);

  auto* aug = app.add_subcommand(
      "augment", "render generated instances under a format plan");
  aug->add_option("--in", in_dir, "directory holding instances.jsonl")
      ->required();
  aug->add_option("--plan", plan_path, "augment plan JSON")->required();
  aug->add_option("--out", out_dir, "output directory")->required();
  add_common(aug, false);

  auto* build = app.add_subcommand("build",
                                   "run the full pipeline into a corpus");
  build->add_option("--config", config_path, "suite config JSON")->required();
  build->add_option("--out", out_dir, "corpus output directory")->required();
  add_common(build, true);

  auto* infer = app.add_subcommand("infer",
                                   "send one split to a model endpoint");
  infer->add_option("--corpus", corpus_dir, "corpus directory")->required();
  infer->add_option("--split", split, "split to answer (default test)");
  infer->add_option("--endpoint", endpoint_path, "endpoint config JSON")
      ->required();
  infer->add_option("--out", out_path, "predictions JSONL path")->required();
  infer->add_option("--limit", limit, "answer at most N samples");
  infer->add_flag("--no-resume", no_resume,
                  "ignore answers already present in the output file");

  auto* eval = app.add_subcommand("eval", "score predictions against a corpus");
  eval->add_option("--corpus", corpus_dir, "corpus directory")->required();
  eval->add_option("--split", split, "split to score (default test)");
  eval->add_option("--preds", preds_path, "predictions JSONL")->required();
  eval->add_option("--report", report_path,
                   "report JSON path (default report.json)");
  eval->add_option("--penalize-unparseable", penalty,
                   "score an unparseable regression answer as this absolute "
                   "error instead of excluding it");

  auto* freport = app.add_subcommand(
      "format-report", "compare sample length and accuracy across formats");
  freport->add_option("--corpus", corpus_dir, "corpus directory")->required();
  freport->add_option("--split", split, "restrict to one split (default test)");
  freport->add_option("--preds", preds_path,
                      "predictions JSONL for per-format accuracy");
  freport->add_option("--out", out_path, "also write the report JSON here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return run_generate(config_path, out_dir, common);
    if (aug->parsed()) return run_augment(in_dir, plan_path, out_dir, common);
    if (build->parsed()) return run_build(config_path, out_dir, common);
    if (infer->parsed()) {
      return run_infer(corpus_dir, split, endpoint_path, out_path, limit,
                       no_resume);
    }
    if (eval->parsed()) {
      return run_eval(corpus_dir, split, preds_path, report_path, penalty);
    }
    if (freport->parsed()) {
      return run_format_report(corpus_dir, split, preds_path, out_path);
    }
  } catch (const forge::Error& e) {
    std::fprintf(stderr, "forge: error: %s: %s\n",
                 std::string(forge::to_string(e.category())).c_str(), e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "forge: error: internal: %s\n", e.what());
    return 1;
  }
  return 0;
}
