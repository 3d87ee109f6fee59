#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "forge/answer.hpp"
#include "forge/corpus.hpp"

namespace forge {

struct Extraction {
  bool ok = false;
  CanonicalAnswer answer;
};

// Pulls a machine-checkable answer out of free-form model text: the content
// after the last "Answer:" marker when present, otherwise the last match of
// the expected kind's grammar anywhere in the text.
Extraction extract_answer(const std::string& raw, CanonicalAnswer::Kind kind,
                          const VerifyRule& rule);

struct EvalOptions {
  std::string split = "test";
  // When set, an unparseable prediction on an RMSE task contributes this
  // absolute error instead of being excluded.
  std::optional<double> unparseable_error;
};

struct MetricScore {
  std::string metric;
  double value = 0.0;
  std::size_t n = 0;
  std::size_t n_scored = 0;       // RMSE: pairs entering the mean
  std::size_t n_unparseable = 0;  // includes missing predictions
};

struct EvalReport {
  std::string split;
  std::map<std::string, MetricScore> per_task;
  std::map<std::string, MetricScore> aggregate;  // keyed by metric name
  std::vector<std::string> missing_ids;
  nlohmann::ordered_json per_sample;  // id -> verdict record
};

// Predictions keyed by sample id; a line whose object carries "header" is
// run metadata and is skipped. Duplicate ids are an error.
std::map<std::string, std::string> load_predictions(const std::string& path);

// Scores one split. Unknown prediction ids are an error; missing ones are
// reported and scored as unparseable.
EvalReport evaluate_predictions(const Corpus& corpus,
                                const std::map<std::string, std::string>& preds,
                                const EvalOptions& opt);

nlohmann::ordered_json report_to_json(const EvalReport& r);
std::string report_table(const EvalReport& r);

// Per-format sample counts, mean input token lengths, and (with predictions)
// accuracy. A single-format corpus is an error: there is nothing to compare.
nlohmann::ordered_json format_report(
    const Corpus& corpus, const std::string& split,
    const std::map<std::string, std::string>* preds);
std::string format_report_table(const nlohmann::ordered_json& report);

}  // namespace forge
