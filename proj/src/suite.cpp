#include "forge/suite.hpp"

#include <fstream>
#include <set>

#include "forge/error.hpp"
#include "forge/parallel.hpp"
#include "forge/rng.hpp"

namespace forge {

namespace {

TaskGenSpec parse_task_spec(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw_error(ErrorCategory::Config, "task spec: expected a JSON object");
  }
  static const std::set<std::string> known = {"task", "count", "n_range",
                                              "p_range", "directed"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key())) {
      throw_error(ErrorCategory::Config,
                  "task spec: unknown field \"" + it.key() + "\"");
    }
  }
  TaskGenSpec spec;
  if (!j.contains("task") || !j.at("task").is_string()) {
    throw_error(ErrorCategory::Config, "task spec: missing string field \"task\"");
  }
  spec.task = j.at("task").get<std::string>();
  if (!is_synth_task(spec.task)) {
    throw_error(ErrorCategory::Config,
                "task spec: unknown task \"" + spec.task + "\"");
  }
  if (!j.contains("count") || !j.at("count").is_number_integer()) {
    throw_error(ErrorCategory::Config,
                "task spec: missing integer field \"count\"");
  }
  spec.count = j.at("count").get<int>();
  if (spec.count < 1) {
    throw_error(ErrorCategory::Config, "task spec: count must be >= 1");
  }
  if (j.contains("n_range")) {
    const auto& r = j.at("n_range");
    if (!r.is_array() || r.size() != 2) {
      throw_error(ErrorCategory::Config,
                  "task spec: n_range must be [min, max]");
    }
    spec.n_range = std::pair<int, int>{r.at(0).get<int>(), r.at(1).get<int>()};
  }
  if (j.contains("p_range")) {
    const auto& r = j.at("p_range");
    if (!r.is_array() || r.size() != 2) {
      throw_error(ErrorCategory::Config,
                  "task spec: p_range must be [min, max]");
    }
    spec.p_range =
        std::pair<double, double>{r.at(0).get<double>(), r.at(1).get<double>()};
  }
  if (j.contains("directed")) {
    spec.directed = j.at("directed").get<bool>();
  }
  return spec;
}

}  // namespace

SuiteConfig parse_suite_config(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw_error(ErrorCategory::Config, "suite config: expected a JSON object");
  }
  static const std::set<std::string> known = {"seed",     "templates", "tasks",
                                              "semantic", "augment",   "split"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key())) {
      throw_error(ErrorCategory::Config,
                  "suite config: unknown field \"" + it.key() + "\"");
    }
  }
  SuiteConfig cfg;
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) {
      throw_error(ErrorCategory::Config,
                  "suite config: seed must be a non-negative integer");
    }
    cfg.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("templates")) {
    cfg.templates_path = j.at("templates").get<std::string>();
  }
  if (j.contains("tasks")) {
    if (!j.at("tasks").is_array()) {
      throw_error(ErrorCategory::Config, "suite config: tasks must be an array");
    }
    for (const auto& t : j.at("tasks")) cfg.tasks.push_back(parse_task_spec(t));
  }
  if (j.contains("semantic")) {
    if (!j.at("semantic").is_array()) {
      throw_error(ErrorCategory::Config,
                  "suite config: semantic must be an array");
    }
    for (const auto& s : j.at("semantic")) {
      cfg.semantic.push_back(parse_semantic_config(s));
    }
  }
  if (cfg.tasks.empty() && cfg.semantic.empty()) {
    throw_error(ErrorCategory::Config,
                "suite config: needs at least one task or semantic dataset");
  }
  {
    // Dataset names must be unique: synthetic batches are keyed by task name.
    std::set<std::string> names;
    for (const auto& t : cfg.tasks) {
      if (!names.insert(t.task).second) {
        throw_error(ErrorCategory::Config,
                    "suite config: duplicate task \"" + t.task + "\"");
      }
    }
    for (const auto& s : cfg.semantic) {
      if (!names.insert(s.name).second) {
        throw_error(ErrorCategory::Config,
                    "suite config: duplicate dataset name \"" + s.name + "\"");
      }
    }
  }
  if (j.contains("augment")) {
    cfg.augment = parse_augment_plan(j.at("augment"));
  } else {
    cfg.augment.formats.push_back(FormatSpec{});
  }
  if (j.contains("split")) {
    const auto& s = j.at("split");
    if (!s.is_object()) {
      throw_error(ErrorCategory::Config, "suite config: split must be an object");
    }
    for (auto it = s.begin(); it != s.end(); ++it) {
      if (it.key() != "train" && it.key() != "valid" && it.key() != "test" &&
          it.key() != "mode") {
        throw_error(ErrorCategory::Config,
                    "suite config: unknown split field \"" + it.key() + "\"");
      }
    }
    if (s.contains("mode")) {
      const std::string mode = s.at("mode").get<std::string>();
      if (mode == "respect-original") {
        cfg.respect_original_splits = true;
      } else if (mode != "random") {
        throw_error(ErrorCategory::Config,
                    "suite config: split mode must be random or "
                    "respect-original");
      }
    }
    if (s.contains("train")) cfg.split.train = s.at("train").get<int>();
    if (s.contains("valid")) cfg.split.valid = s.at("valid").get<int>();
    if (s.contains("test")) cfg.split.test = s.at("test").get<int>();
  }
  return cfg;
}

SuiteConfig load_suite_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_error(ErrorCategory::Io, "cannot open suite config " + path);
  std::string raw((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(raw);
  } catch (const nlohmann::json::parse_error& e) {
    throw_error(ErrorCategory::Config, path + ": " + e.what());
  }
  try {
    SuiteConfig cfg = parse_suite_config(j);
    cfg.config_hash = fnv1a64(raw);
    return cfg;
  } catch (const Error& e) {
    throw Error(e.category(), path + ": " + std::string(e.what()));
  }
}

namespace {

const TemplatePack& resolve_templates(const SuiteConfig& cfg,
                                      const BuildOverrides& overrides,
                                      TemplatePack& storage) {
  std::string path = cfg.templates_path;
  if (overrides.templates_path) path = *overrides.templates_path;
  if (path.empty()) return builtin_templates();
  storage = load_template_pack(path);
  return storage;
}

}  // namespace

std::vector<std::pair<std::string, std::vector<TaskInstance>>> generate_instances(
    const SuiteConfig& cfg, const BuildOverrides& overrides) {
  const std::uint64_t seed = overrides.seed ? *overrides.seed : cfg.seed;
  const int jobs = overrides.jobs > 0 ? overrides.jobs : default_jobs();
  TemplatePack storage;
  const TemplatePack& templates = resolve_templates(cfg, overrides, storage);

  std::vector<std::pair<std::string, std::vector<TaskInstance>>> out;
  for (const auto& spec : cfg.tasks) {
    out.emplace_back(spec.task, gen_batch(spec, seed, templates, jobs));
  }
  for (const auto& sem : cfg.semantic) {
    out.emplace_back(sem.name,
                     build_semantic_instances(sem, seed, templates, jobs));
  }
  return out;
}

Corpus build_corpus(const SuiteConfig& cfg, const BuildOverrides& overrides) {
  const std::uint64_t seed = overrides.seed ? *overrides.seed : cfg.seed;
  const int jobs = overrides.jobs > 0 ? overrides.jobs : default_jobs();
  TemplatePack storage;
  const TemplatePack& templates = resolve_templates(cfg, overrides, storage);

  auto datasets = generate_instances(cfg, overrides);

  nlohmann::ordered_json dataset_meta = nlohmann::ordered_json::object();
  std::vector<InstructionSample> samples;
  for (auto& [name, instances] : datasets) {
    std::vector<std::string> splits;
    if (cfg.respect_original_splits) {
      splits.resize(instances.size());
      for (std::size_t i = 0; i < instances.size(); ++i) {
        auto it = instances[i].extra.find("split");
        if (it == instances[i].extra.end()) {
          throw_error(ErrorCategory::Validation,
                      name + ": respect-original splits need a split "
                             "attribute on every element");
        }
        splits[i] = it->second;
      }
    } else {
      splits = assign_splits(instances.size(), cfg.split,
                             derive_seed(seed, "split", name, 0));
    }

    std::size_t assigned = 0;
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < instances.size(); ++i) {
      if (!splits[i].empty()) {
        ++assigned;
        kept.push_back(i);
      }
    }
    nlohmann::ordered_json d = nlohmann::ordered_json::object();
    d["generated"] = instances.size();
    d["assigned"] = assigned;
    d["dropped"] = instances.size() - assigned;
    dataset_meta[name] = d;

    // The split bookkeeping key never reaches sample metadata.
    for (auto& inst : instances) inst.extra.erase("split");

    // Expansion is pure per instance; render in parallel, splice in order.
    std::vector<std::vector<InstructionSample>> rendered(kept.size());
    parallel_for(kept.size(), jobs, [&](std::size_t k) {
      const std::size_t i = kept[k];
      rendered[k] = expand_instance(instances[i], cfg.augment, name, i,
                                    templates, templates.version);
      for (auto& s : rendered[k]) s.split = splits[i];
    });
    for (auto& group : rendered) {
      for (auto& s : group) samples.push_back(std::move(s));
    }
  }

  std::vector<std::string> format_names;
  for (const auto& f : cfg.augment.formats) {
    std::string n(format_name(f.kind));
    if (f.compact) n += "-compact";
    format_names.push_back(n);
  }
  return assemble_corpus(std::move(samples), dataset_meta, format_names,
                         templates.version, cfg.config_hash);
}

}  // namespace forge
