#include "forge/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "forge/error.hpp"
#include "forge/graph_json.hpp"
#include "forge/lang.hpp"
#include "forge/metrics.hpp"
#include "forge/sample.hpp"

namespace forge {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || is_digit(c) ||
         c == '_';
}

struct NumberToken {
  double value = 0.0;
  std::int64_t int_value = 0;
  bool integral = false;
  std::size_t begin = 0;
  std::size_t end = 0;  // one past
};

// Decimal numbers with optional sign, fraction, and exponent. A '-' counts
// as a sign only when it does not follow a word character, so "3-4" reads as
// two numbers, not "3" and "-4" glued to it.
std::vector<NumberToken> scan_numbers(const std::string& s, bool allow_real) {
  std::vector<NumberToken> out;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t start = i;
    bool neg = false;
    if (s[i] == '-' && i + 1 < s.size() && is_digit(s[i + 1]) &&
        (i == 0 || (!is_word_char(s[i - 1]) && s[i - 1] != '-'))) {
      neg = true;
      ++i;
    }
    if (i >= s.size() || !is_digit(s[i]) ||
        (i > 0 && !neg && is_word_char(s[i - 1]))) {
      i = start + 1;
      continue;
    }
    std::size_t num_begin = i;
    while (i < s.size() && is_digit(s[i])) ++i;
    bool integral = true;
    if (allow_real && i + 1 < s.size() && s[i] == '.' && is_digit(s[i + 1])) {
      integral = false;
      ++i;
      while (i < s.size() && is_digit(s[i])) ++i;
    }
    if (allow_real && i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
      std::size_t j = i + 1;
      if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
      if (j < s.size() && is_digit(s[j])) {
        integral = false;
        i = j;
        while (i < s.size() && is_digit(s[i])) ++i;
      }
    }
    // Reject digits glued to trailing word characters ("12th" is not 12)
    // except a plain ordinal-free boundary.
    if (i < s.size() && is_word_char(s[i])) {
      while (i < s.size() && is_word_char(s[i])) ++i;
      continue;
    }
    NumberToken tok;
    tok.begin = neg ? num_begin - 1 : num_begin;
    tok.end = i;
    const std::string text = s.substr(tok.begin, i - tok.begin);
    tok.integral = integral;
    tok.value = std::strtod(text.c_str(), nullptr);
    if (integral) {
      try {
        tok.int_value = std::stoll(text);
      } catch (...) {
        tok.integral = false;
      }
    }
    out.push_back(tok);
  }
  return out;
}

std::optional<bool> last_boolean_word(const std::string& s) {
  std::optional<bool> found;
  std::string cur;
  auto flush = [&]() {
    if (cur == "yes" || cur == "true") found = true;
    if (cur == "no" || cur == "false") found = false;
    cur.clear();
  };
  for (char c : s) {
    if (is_word_char(c)) {
      cur += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
    } else {
      flush();
    }
  }
  flush();
  return found;
}

// Maximal runs of integers joined by "->"; returns the last run of length
// >= 2, i.e. an explicit node sequence.
std::optional<std::vector<NodeId>> last_arrow_chain(const std::string& s) {
  auto nums = scan_numbers(s, false);
  std::optional<std::vector<NodeId>> best;
  std::vector<NodeId> cur;
  for (std::size_t i = 0; i < nums.size(); ++i) {
    if (!nums[i].integral) {
      cur.clear();
      continue;
    }
    if (!cur.empty()) {
      // Connector between the previous number and this one must be an arrow.
      std::string between = s.substr(nums[i - 1].end,
                                     nums[i].begin - nums[i - 1].end);
      std::string squeezed;
      for (char c : between) {
        if (c != ' ' && c != '\t' && c != '\n') squeezed += c;
      }
      if (squeezed != "->") cur.clear();
    }
    cur.push_back(static_cast<NodeId>(nums[i].int_value));
    if (cur.size() >= 2) best = cur;
  }
  return best;
}

bool contains_word(const std::string& s, const std::string& word) {
  std::string cur;
  for (char c : s) {
    if (is_word_char(c)) {
      cur += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
    } else {
      if (cur == word) return true;
      cur.clear();
    }
  }
  return cur == word;
}

std::string trimmed(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\n' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\n' ||
                   s[e - 1] == '\r')) --e;
  return s.substr(b, e - b);
}

Extraction from_grammar(const std::string& content, CanonicalAnswer::Kind kind,
                        const VerifyRule& rule) {
  Extraction ex;
  if (rule.kind == VerifyRule::Kind::ValidPath) {
    // A witness path is the strongest evidence for shortest-path tasks; the
    // primary answer for reachability-style tasks is yes/no.
    if (rule.path_kind == PathKind::HamiltonPath) {
      if (auto b = last_boolean_word(content)) {
        ex.ok = true;
        ex.answer = CanonicalAnswer::boolean(*b);
        return ex;
      }
    }
    if (auto chain = last_arrow_chain(content)) {
      ex.ok = true;
      ex.answer = CanonicalAnswer::node_seq(*chain);
      return ex;
    }
    auto nums = scan_numbers(content, false);
    for (auto it = nums.rbegin(); it != nums.rend(); ++it) {
      if (it->integral) {
        ex.ok = true;
        ex.answer = CanonicalAnswer::integer(it->int_value);
        return ex;
      }
    }
    return ex;
  }
  switch (kind) {
    case CanonicalAnswer::Kind::Integer: {
      auto nums = scan_numbers(content, true);
      for (auto it = nums.rbegin(); it != nums.rend(); ++it) {
        if (it->integral) {
          ex.ok = true;
          ex.answer = CanonicalAnswer::integer(it->int_value);
          return ex;
        }
      }
      return ex;
    }
    case CanonicalAnswer::Kind::Real: {
      auto nums = scan_numbers(content, true);
      if (!nums.empty()) {
        ex.ok = true;
        ex.answer = CanonicalAnswer::real(nums.back().value);
      }
      return ex;
    }
    case CanonicalAnswer::Kind::Boolean: {
      if (auto b = last_boolean_word(content)) {
        ex.ok = true;
        ex.answer = CanonicalAnswer::boolean(*b);
      }
      return ex;
    }
    case CanonicalAnswer::Kind::Label: {
      const std::string label = normalize_label(content);
      if (!label.empty()) {
        ex.ok = true;
        ex.answer = CanonicalAnswer::label(label);
      }
      return ex;
    }
    case CanonicalAnswer::Kind::NodeSet: {
      auto nums = scan_numbers(content, false);
      std::vector<NodeId> ids;
      for (const auto& t : nums) {
        if (t.integral) ids.push_back(static_cast<NodeId>(t.int_value));
      }
      if (ids.empty()) {
        if (contains_word(content, "none") || contains_word(content, "empty")) {
          ex.ok = true;
          ex.answer = CanonicalAnswer::node_set({});
        }
        return ex;
      }
      ex.ok = true;
      ex.answer = CanonicalAnswer::node_set(ids);
      return ex;
    }
    case CanonicalAnswer::Kind::NodeSeq: {
      if (auto chain = last_arrow_chain(content)) {
        ex.ok = true;
        ex.answer = CanonicalAnswer::node_seq(*chain);
      }
      return ex;
    }
    case CanonicalAnswer::Kind::Text: {
      const std::string body = trimmed(content);
      if (!body.empty()) {
        ex.ok = true;
        ex.answer = CanonicalAnswer::text(body);
      }
      return ex;
    }
  }
  return ex;
}

}  // namespace

Extraction extract_answer(const std::string& raw, CanonicalAnswer::Kind kind,
                          const VerifyRule& rule) {
  static const std::string kMarker = "Answer:";
  const std::size_t pos = raw.rfind(kMarker);
  if (pos != std::string::npos) {
    const std::size_t content_begin = pos + kMarker.size();
    // Free text runs to the end of the output; everything else sits on the
    // marker's line.
    std::size_t content_end = raw.size();
    if (kind != CanonicalAnswer::Kind::Text) {
      const std::size_t nl = raw.find('\n', content_begin);
      if (nl != std::string::npos) content_end = nl;
    }
    return from_grammar(raw.substr(content_begin, content_end - content_begin),
                        kind, rule);
  }
  return from_grammar(raw, kind, rule);
}

std::map<std::string, std::string> load_predictions(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_error(ErrorCategory::Io, "cannot open predictions " + path);
  std::map<std::string, std::string> preds;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trimmed(line).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw_error(ErrorCategory::Parse,
                  path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (!j.is_object()) {
      throw_error(ErrorCategory::Parse, path + ":" + std::to_string(lineno) +
                                            ": expected a JSON object");
    }
    if (j.contains("header")) continue;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.key() != "id" && it.key() != "prediction" && it.key() != "error") {
        throw_error(ErrorCategory::Parse,
                    path + ":" + std::to_string(lineno) +
                        ": unsupported field \"" + it.key() + "\"");
      }
    }
    if (!j.contains("id") || !j.at("id").is_string() ||
        !j.contains("prediction") || !j.at("prediction").is_string()) {
      throw_error(ErrorCategory::Parse,
                  path + ":" + std::to_string(lineno) +
                      ": need string fields \"id\" and \"prediction\"");
    }
    const std::string id = j.at("id").get<std::string>();
    if (preds.count(id)) {
      throw_error(ErrorCategory::Validation,
                  path + ": duplicate prediction for id \"" + id + "\"");
    }
    preds[id] = j.at("prediction").get<std::string>();
  }
  return preds;
}

namespace {

struct TaskBucket {
  std::string metric;
  std::size_t n = 0;
  std::size_t n_unparseable = 0;
  std::size_t correct = 0;                 // accuracy
  std::vector<double> pred_values;         // rmse
  std::vector<double> ref_values;          // rmse
  double f1_sum = 0.0;                     // rouge_l
};

MetricScore finish_bucket(const std::string& name, const TaskBucket& b,
                          const EvalOptions& opt) {
  MetricScore score;
  score.metric = b.metric;
  score.n = b.n;
  score.n_unparseable = b.n_unparseable;
  if (b.metric == "accuracy") {
    score.n_scored = b.n;
    score.value = b.n == 0 ? 0.0
                           : static_cast<double>(b.correct) /
                                 static_cast<double>(b.n);
  } else if (b.metric == "rmse") {
    score.n_scored = b.pred_values.size();
    if (b.pred_values.empty()) {
      throw_error(ErrorCategory::Validation,
                  "task \"" + name +
                      "\": zero parseable predictions; RMSE is undefined "
                      "(use the unparseable penalty to score anyway)");
    }
    score.value = rmse(b.pred_values, b.ref_values);
  } else if (b.metric == "rouge_l") {
    score.n_scored = b.n;
    score.value = b.n == 0 ? 0.0 : b.f1_sum / static_cast<double>(b.n);
  } else {
    throw_error(ErrorCategory::Validation,
                "task \"" + name + "\": unknown metric \"" + b.metric + "\"");
  }
  (void)opt;
  return score;
}

}  // namespace

EvalReport evaluate_predictions(const Corpus& corpus,
                                const std::map<std::string, std::string>& preds,
                                const EvalOptions& opt) {
  if (opt.split != "train" && opt.split != "valid" && opt.split != "test") {
    throw_error(ErrorCategory::Usage, "unknown split \"" + opt.split + "\"");
  }
  std::vector<const InstructionSample*> samples;
  std::set<std::string> known_ids;
  for (const auto& s : corpus.samples) {
    if (s.split == opt.split) {
      samples.push_back(&s);
      known_ids.insert(s.id);
    }
  }
  if (samples.empty()) {
    throw_error(ErrorCategory::Validation,
                "corpus has no samples in split \"" + opt.split + "\"");
  }
  std::vector<std::string> unknown;
  for (const auto& [id, text] : preds) {
    if (!known_ids.count(id)) unknown.push_back(id);
  }
  if (!unknown.empty()) {
    std::string msg = "predictions reference unknown sample ids: ";
    for (std::size_t i = 0; i < unknown.size() && i < 10; ++i) {
      if (i) msg += ", ";
      msg += unknown[i];
    }
    if (unknown.size() > 10) {
      msg += ", and " + std::to_string(unknown.size() - 10) + " more";
    }
    throw_error(ErrorCategory::Validation, msg);
  }

  EvalReport report;
  report.split = opt.split;
  report.per_sample = nlohmann::ordered_json::object();
  std::map<std::string, TaskBucket> buckets;
  TaskBucket agg_acc{"accuracy", 0, 0, 0, {}, {}, 0.0};
  TaskBucket agg_rmse{"rmse", 0, 0, 0, {}, {}, 0.0};
  TaskBucket agg_rouge{"rouge_l", 0, 0, 0, {}, {}, 0.0};

  for (const InstructionSample* sp : samples) {
    const InstructionSample& s = *sp;
    const std::string metric = s.meta.value("metric", "accuracy");
    auto& bucket = buckets[s.task];
    bucket.metric = metric;
    ++bucket.n;

    const std::string kind_name = s.meta.value("answer_kind", "");
    auto kind = answer_kind_from_string(kind_name);
    if (!kind) {
      throw_error(ErrorCategory::Validation,
                  "sample " + s.id + ": unknown answer kind \"" + kind_name +
                      "\"");
    }
    auto reference = parse_canonical(*kind, s.meta.value("answer", ""));
    if (!reference) {
      throw_error(ErrorCategory::Validation,
                  "sample " + s.id + ": malformed reference answer");
    }
    VerifyRule rule;
    if (!s.meta.contains("verify") || !s.meta.at("verify").is_object()) {
      throw_error(ErrorCategory::Validation,
                  "sample " + s.id + ": missing verify metadata");
    }
    const auto& vj = s.meta.at("verify");
    rule.kind = verify_rule_from_name(vj.value("kind", ""));
    if (rule.kind == VerifyRule::Kind::NumericTolerance) {
      rule.eps = vj.value("eps", 1e-9);
      rule.relative = vj.value("relative", true);
    }
    std::optional<AttributedGraph> graph;
    VerifyContext ctx;
    if (rule.kind == VerifyRule::Kind::ValidPath) {
      rule.path_kind = vj.value("path_kind", "shortest") == "hamilton"
                           ? PathKind::HamiltonPath
                           : PathKind::ShortestPath;
      if (!s.meta.contains("graph")) {
        throw_error(ErrorCategory::Validation,
                    "sample " + s.id + ": path verification needs the graph");
      }
      graph = graph_from_string(s.meta.at("graph").get<std::string>());
      ctx.graph = &*graph;
      ctx.src = vj.value("src", -1);
      ctx.dst = vj.value("dst", -1);
      ctx.optimal_length = vj.value("length", static_cast<std::int64_t>(-1));
      ctx.weighted = vj.value("weighted", false);
    }

    auto it = preds.find(s.id);
    const bool missing = it == preds.end();
    if (missing) report.missing_ids.push_back(s.id);

    nlohmann::ordered_json rec = nlohmann::ordered_json::object();
    rec["task"] = s.task;
    rec["metric"] = metric;

    if (metric == "accuracy") {
      Extraction ex;
      if (!missing) ex = extract_answer(it->second, *kind, rule);
      rec["parsed"] = ex.ok;
      const bool correct = ex.ok && verify_answer(rule, *reference, ex.answer, ctx);
      if (!ex.ok) ++bucket.n_unparseable;
      if (correct) ++bucket.correct;
      rec["correct"] = correct;
      ++agg_acc.n;
      if (!ex.ok) ++agg_acc.n_unparseable;
      if (correct) ++agg_acc.correct;
    } else if (metric == "rmse") {
      double ref_value = reference->kind() == CanonicalAnswer::Kind::Integer
                             ? static_cast<double>(reference->as_integer())
                             : reference->as_real();
      // Numeric extraction for regression always reads a real.
      Extraction rex;
      if (!missing) {
        rex = extract_answer(it->second, CanonicalAnswer::Kind::Real, rule);
      }
      rec["parsed"] = rex.ok;
      ++agg_rmse.n;
      if (rex.ok) {
        bucket.pred_values.push_back(rex.answer.as_real());
        bucket.ref_values.push_back(ref_value);
        agg_rmse.pred_values.push_back(rex.answer.as_real());
        agg_rmse.ref_values.push_back(ref_value);
        rec["prediction"] = rex.answer.as_real();
        rec["reference"] = ref_value;
      } else {
        ++bucket.n_unparseable;
        ++agg_rmse.n_unparseable;
        if (opt.unparseable_error) {
          bucket.pred_values.push_back(ref_value + *opt.unparseable_error);
          bucket.ref_values.push_back(ref_value);
          agg_rmse.pred_values.push_back(ref_value + *opt.unparseable_error);
          agg_rmse.ref_values.push_back(ref_value);
        }
      }
    } else if (metric == "rouge_l") {
      Extraction ex;
      if (!missing) ex = extract_answer(it->second, *kind, rule);
      rec["parsed"] = ex.ok;
      double f1 = 0.0;
      if (ex.ok) {
        f1 = rouge_l(ex.answer.as_text(), reference->as_text()).f1;
      } else {
        ++bucket.n_unparseable;
        ++agg_rouge.n_unparseable;
      }
      bucket.f1_sum += f1;
      agg_rouge.f1_sum += f1;
      ++agg_rouge.n;
      rec["f1"] = f1;
    } else {
      throw_error(ErrorCategory::Validation,
                  "sample " + s.id + ": unknown metric \"" + metric + "\"");
    }
    report.per_sample[s.id] = std::move(rec);
  }

  for (const auto& [name, bucket] : buckets) {
    report.per_task[name] = finish_bucket(name, bucket, opt);
  }
  if (agg_acc.n) report.aggregate["accuracy"] = finish_bucket("accuracy", agg_acc, opt);
  if (agg_rmse.n) report.aggregate["rmse"] = finish_bucket("rmse", agg_rmse, opt);
  if (agg_rouge.n) {
    report.aggregate["rouge_l"] = finish_bucket("rouge_l", agg_rouge, opt);
  }
  return report;
}

namespace {

nlohmann::ordered_json score_to_json(const MetricScore& s) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  j["metric"] = s.metric;
  j["value"] = s.value;
  j["n"] = s.n;
  j["n_scored"] = s.n_scored;
  j["n_unparseable"] = s.n_unparseable;
  return j;
}

}  // namespace

nlohmann::ordered_json report_to_json(const EvalReport& r) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  j["split"] = r.split;
  nlohmann::ordered_json tasks = nlohmann::ordered_json::object();
  for (const auto& [name, score] : r.per_task) tasks[name] = score_to_json(score);
  j["tasks"] = tasks;
  nlohmann::ordered_json agg = nlohmann::ordered_json::object();
  for (const auto& [name, score] : r.aggregate) agg[name] = score_to_json(score);
  j["aggregate"] = agg;
  j["missing"] = r.missing_ids;
  j["samples"] = r.per_sample;
  return j;
}

namespace {

std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

void table_row(std::string& out, const std::string& a, const std::string& b,
               const std::string& c, const std::string& d,
               const std::string& e) {
  auto pad = [](const std::string& s, std::size_t w, bool left) {
    if (s.size() >= w) return s;
    std::string fill(w - s.size(), ' ');
    return left ? s + fill : fill + s;
  };
  out += pad(a, 28, true) + "  " + pad(b, 9, true) + "  " + pad(c, 8, false) +
         "  " + pad(d, 7, false) + "  " + pad(e, 12, false) + "\n";
}

}  // namespace

std::string report_table(const EvalReport& r) {
  std::string out;
  table_row(out, "task", "metric", "value", "n", "unparseable");
  table_row(out, std::string(28, '-'), std::string(9, '-'), std::string(8, '-'),
            std::string(7, '-'), std::string(12, '-'));
  for (const auto& [name, s] : r.per_task) {
    table_row(out, name, s.metric, fixed3(s.value), std::to_string(s.n),
              std::to_string(s.n_unparseable));
  }
  for (const auto& [name, s] : r.aggregate) {
    table_row(out, "(all " + name + ")", s.metric, fixed3(s.value),
              std::to_string(s.n), std::to_string(s.n_unparseable));
  }
  if (!r.missing_ids.empty()) {
    out += "missing predictions: " + std::to_string(r.missing_ids.size()) + "\n";
  }
  return out;
}

nlohmann::ordered_json format_report(
    const Corpus& corpus, const std::string& split,
    const std::map<std::string, std::string>* preds) {
  std::map<std::string, std::vector<const InstructionSample*>> by_format;
  for (const auto& s : corpus.samples) {
    if (!split.empty() && s.split != split) continue;
    by_format[s.format].push_back(&s);
  }
  if (by_format.size() < 2) {
    throw_error(ErrorCategory::Validation,
                "format comparison needs at least two formats; corpus has " +
                    std::to_string(by_format.size()));
  }
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  j["split"] = split.empty() ? "all" : split;
  nlohmann::ordered_json formats = nlohmann::ordered_json::object();
  for (const auto& [fmt, list] : by_format) {
    nlohmann::ordered_json f = nlohmann::ordered_json::object();
    f["n"] = list.size();
    double tokens = 0.0;
    for (const auto* s : list) {
      tokens += static_cast<double>(count_tokens(s->input));
    }
    f["mean_input_tokens"] = tokens / static_cast<double>(list.size());
    if (preds) {
      std::size_t n_acc = 0;
      std::size_t correct = 0;
      for (const auto* s : list) {
        if (s->meta.value("metric", "") != "accuracy") continue;
        ++n_acc;
        auto it = preds->find(s->id);
        if (it == preds->end()) continue;
        const std::string kind_name = s->meta.value("answer_kind", "");
        auto kind = answer_kind_from_string(kind_name);
        auto reference = kind ? parse_canonical(*kind, s->meta.value("answer", ""))
                              : std::nullopt;
        if (!kind || !reference) continue;
        VerifyRule rule;
        const auto& vj = s->meta.at("verify");
        rule.kind = verify_rule_from_name(vj.value("kind", ""));
        if (rule.kind == VerifyRule::Kind::NumericTolerance) {
          rule.eps = vj.value("eps", 1e-9);
          rule.relative = vj.value("relative", true);
        }
        std::optional<AttributedGraph> graph;
        VerifyContext ctx;
        if (rule.kind == VerifyRule::Kind::ValidPath) {
          rule.path_kind = vj.value("path_kind", "shortest") == "hamilton"
                               ? PathKind::HamiltonPath
                               : PathKind::ShortestPath;
          graph = graph_from_string(s->meta.at("graph").get<std::string>());
          ctx.graph = &*graph;
          ctx.src = vj.value("src", -1);
          ctx.dst = vj.value("dst", -1);
          ctx.optimal_length = vj.value("length", static_cast<std::int64_t>(-1));
          ctx.weighted = vj.value("weighted", false);
        }
        Extraction ex = extract_answer(it->second, *kind, rule);
        if (ex.ok && verify_answer(rule, *reference, ex.answer, ctx)) ++correct;
      }
      if (n_acc) {
        f["accuracy"] = static_cast<double>(correct) / static_cast<double>(n_acc);
        f["accuracy_n"] = n_acc;
      }
    }
    formats[fmt] = f;
  }
  j["formats"] = formats;
  return j;
}

std::string format_report_table(const nlohmann::ordered_json& report) {
  std::string out;
  table_row(out, "format", "n", "tokens", "acc", "acc n");
  table_row(out, std::string(28, '-'), std::string(9, '-'), std::string(8, '-'),
            std::string(7, '-'), std::string(12, '-'));
  for (auto it = report.at("formats").begin(); it != report.at("formats").end();
       ++it) {
    const auto& f = it.value();
    table_row(out, it.key(), std::to_string(f.at("n").get<std::size_t>()),
              fixed3(f.at("mean_input_tokens").get<double>()),
              f.contains("accuracy") ? fixed3(f.at("accuracy").get<double>())
                                     : "-",
              f.contains("accuracy_n")
                  ? std::to_string(f.at("accuracy_n").get<std::size_t>())
                  : "-");
  }
  return out;
}

}  // namespace forge
