#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "forge/evaluate.hpp"
#include "forge/graph_json.hpp"
#include "forge/lang.hpp"
#include "forge/metrics.hpp"
#include "forge/suite.hpp"
#include "support/checks.hpp"

using namespace forge;

namespace {

VerifyRule exact_rule() { return VerifyRule{}; }

VerifyRule path_rule(PathKind pk) {
  VerifyRule r;
  r.kind = VerifyRule::Kind::ValidPath;
  r.path_kind = pk;
  return r;
}

// Minimal well-formed sample for the evaluator: meta carries the scoring
// contract (metric, answer kind, canonical answer, verify rule).
InstructionSample mk_sample(const std::string& id, const std::string& task,
                            const std::string& metric, const std::string& kind,
                            const std::string& answer,
                            const std::string& verify_kind,
                            const std::string& format = "json") {
  InstructionSample s;
  s.id = id;
  s.task = task;
  s.level = "entity";
  s.format = format;
  s.split = "test";
  s.input = "# Query\nirrelevant\n";
  s.output = "# Answer\nAnswer: " + answer + "\n";
  s.meta["metric"] = metric;
  s.meta["answer_kind"] = kind;
  s.meta["answer"] = answer;
  s.meta["verify"] = {{"kind", verify_kind}};
  return s;
}

}  // namespace

TEST_CASE("integer extraction reads the last clean number") {
  auto get_int = [](const std::string& raw) {
    return extract_answer(raw, CanonicalAnswer::Kind::Integer, exact_rule());
  };
  auto ex = get_int("The degree of node 3 is 7.");
  REQUIRE(ex.ok);
  CHECK(ex.answer.as_integer() == 7);

  CHECK(get_int("Answer: 12").answer.as_integer() == 12);
  CHECK(get_int("Answer: -4").answer.as_integer() == -4);
  // The marker line bounds the search for non-text kinds.
  CHECK(get_int("Answer: 5 or 6\nbut surely 7").answer.as_integer() == 6);
  // The last marker wins.
  CHECK(get_int("Answer: 3\nAnswer: 9").answer.as_integer() == 9);
  // Digits glued to word characters are not numbers.
  CHECK_FALSE(get_int("Answer: the 12th node").ok);
  CHECK(get_int("node7 has degree 2").answer.as_integer() == 2);
  // A minus after a word character is a separator, not a sign.
  CHECK(get_int("value x-4").answer.as_integer() == 4);
  CHECK(get_int("range 3-4").answer.as_integer() == 4);
  // Reals do not backslide into integers.
  CHECK_FALSE(get_int("Answer: roughly 2.5").ok);
  CHECK_FALSE(get_int("Answer: 1e3").ok);
  CHECK_FALSE(get_int("Answer: none").ok);
  // A bare trailing dot is not a fraction.
  CHECK(get_int("Answer: 3.").answer.as_integer() == 3);
}

TEST_CASE("real extraction takes the last numeric token of any shape") {
  auto get_real = [](const std::string& raw) {
    return extract_answer(raw, CanonicalAnswer::Kind::Real, exact_rule());
  };
  CHECK(get_real("Answer: 2.50").answer.as_real() == doctest::Approx(2.5));
  CHECK(get_real("around 1 then 3.25").answer.as_real() == doctest::Approx(3.25));
  CHECK(get_real("Answer: 2.5e3").answer.as_real() == doctest::Approx(2500.0));
  CHECK(get_real("Answer: -0.125").answer.as_real() == doctest::Approx(-0.125));
  CHECK(get_real("Answer: 7").answer.as_real() == doctest::Approx(7.0));
  // "1e" is a glued word, not an exponent.
  CHECK(get_real("take 1e piece 7").answer.as_real() == doctest::Approx(7.0));
  CHECK_FALSE(get_real("no digits here").ok);
}

TEST_CASE("boolean and label extraction normalize their content") {
  auto get_bool = [](const std::string& raw) {
    return extract_answer(raw, CanonicalAnswer::Kind::Boolean, exact_rule());
  };
  CHECK(get_bool("I think YES.").answer.as_boolean());
  CHECK_FALSE(get_bool("Yes... wait, actually false").answer.as_boolean());
  CHECK(get_bool("Answer: True").answer.as_boolean());
  CHECK_FALSE(get_bool("affirmative").ok);
  CHECK_FALSE(get_bool("does not exist").ok);  // "not" is not a verdict word

  auto get_label = [](const std::string& raw) {
    return extract_answer(raw, CanonicalAnswer::Kind::Label, exact_rule());
  };
  CHECK(get_label("Answer:  Bipartite-Complete ").answer.as_text() ==
        "bipartite-complete");
  CHECK(get_label("Answer: THE  shortest\tone!").answer.as_text() ==
        "the shortest one");
  CHECK_FALSE(get_label("Answer:   ").ok);

  CHECK(normalize_label("  Hello,  World!! ") == "hello, world");
  CHECK(normalize_label("--x--") == "x");
  CHECK(normalize_label("") == "");
}

TEST_CASE("node set and node sequence extraction") {
  auto get_set = [](const std::string& raw) {
    return extract_answer(raw, CanonicalAnswer::Kind::NodeSet, exact_rule());
  };
  CHECK(get_set("Answer: 1, 3, 8").answer == CanonicalAnswer::node_set({1, 3, 8}));
  CHECK(get_set("8 then 3 then 1 and 3").answer ==
        CanonicalAnswer::node_set({1, 3, 8}));
  CHECK(get_set("Answer: none").answer == CanonicalAnswer::node_set({}));
  CHECK(get_set("the set is EMPTY").answer == CanonicalAnswer::node_set({}));
  CHECK_FALSE(get_set("no neighbors worth naming").ok);

  auto get_seq = [](const std::string& raw) {
    return extract_answer(raw, CanonicalAnswer::Kind::NodeSeq, exact_rule());
  };
  CHECK(get_seq("Answer: 0 -> 2 -> 5").answer ==
        CanonicalAnswer::node_seq({0, 2, 5}));
  // Whitespace inside the arrow is tolerated; other connectors are not.
  CHECK(get_seq("0 - > 2 ->\n7").answer == CanonicalAnswer::node_seq({0, 2, 7}));
  CHECK(get_seq("maybe 3 -> 4, but 9 -> 1 -> 0").answer ==
        CanonicalAnswer::node_seq({9, 1, 0}));
  CHECK_FALSE(get_seq("0, 2, 5").ok);
  CHECK_FALSE(get_seq("just 7").ok);
}

TEST_CASE("witness-path extraction prefers the strongest evidence") {
  const auto ham = path_rule(PathKind::HamiltonPath);
  auto h1 = extract_answer("Yes: 0 -> 1 -> 2", CanonicalAnswer::Kind::Boolean, ham);
  REQUIRE(h1.ok);
  CHECK(h1.answer == CanonicalAnswer::boolean(true));  // verdict outranks chain
  auto h2 = extract_answer("0 -> 1 -> 2", CanonicalAnswer::Kind::Boolean, ham);
  REQUIRE(h2.ok);
  CHECK(h2.answer == CanonicalAnswer::node_seq({0, 1, 2}));
  CHECK_FALSE(extract_answer("hmm", CanonicalAnswer::Kind::Boolean, ham).ok);

  const auto sp = path_rule(PathKind::ShortestPath);
  auto s1 = extract_answer("Yes, take 0 -> 2", CanonicalAnswer::Kind::NodeSeq, sp);
  REQUIRE(s1.ok);
  CHECK(s1.answer == CanonicalAnswer::node_seq({0, 2}));  // no verdict shortcut
  auto s2 = extract_answer("total weight 7", CanonicalAnswer::Kind::NodeSeq, sp);
  REQUIRE(s2.ok);
  CHECK(s2.answer == CanonicalAnswer::integer(7));
}

TEST_CASE("free text extraction runs past line breaks") {
  auto ex = extract_answer("Answer: the cat\nsat on the mat",
                           CanonicalAnswer::Kind::Text, exact_rule());
  REQUIRE(ex.ok);
  CHECK(ex.answer.as_text() == "the cat\nsat on the mat");
  auto bare = extract_answer("  just prose  ", CanonicalAnswer::Kind::Text,
                             exact_rule());
  REQUIRE(bare.ok);
  CHECK(bare.answer.as_text() == "just prose");
  CHECK_FALSE(extract_answer("Answer:   \n ", CanonicalAnswer::Kind::Text,
                             exact_rule())
                  .ok);
}

TEST_CASE("rmse and rouge-l match their definitions") {
  CHECK(rmse({1.0, 2.0}, {1.0, 4.0}) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(rmse({3.0}, {3.0}) == doctest::Approx(0.0));
  CHECK(rmse({0.0, 0.0, 0.0}, {1.0, -1.0, 1.0}) == doctest::Approx(1.0));
  CHECK(testsupport::throws_error([] { rmse({1.0}, {1.0, 2.0}); },
                                  ErrorCategory::Validation,
                                  "rmse needs aligned vectors, got 1 and 2"));
  CHECK(testsupport::throws_error([] { rmse({}, {}); },
                                  ErrorCategory::Validation,
                                  "rmse of zero pairs is undefined"));

  const auto s = rouge_l("the cat sat", "the cat");
  CHECK(s.precision == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(s.recall == doctest::Approx(1.0));
  CHECK(s.f1 == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(rouge_l("", "").f1 == doctest::Approx(0.0));
  CHECK(rouge_l("words", "").f1 == doctest::Approx(0.0));
  CHECK(rouge_l("a b c", "a b c").f1 == doctest::Approx(1.0));
  // Case-folded; punctuation splits; underscores split too.
  CHECK(overlap_tokens("Hello, World_x") ==
        std::vector<std::string>{"hello", "world", "x"});
  CHECK(lcs_length({"a", "b", "c", "d"}, {"b", "d"}) == 2);
  CHECK(lcs_length({"a", "b"}, {"c"}) == 0);
  // count_tokens (input length accounting) keeps underscores and counts
  // punctuation characters individually.
  CHECK(count_tokens("a_b c-d") == 4);
  CHECK(count_tokens("0 -> 2") == 4);
}

TEST_CASE("prediction files are strict jsonl with an optional header") {
  testsupport::TempDir dir;
  const auto path = dir.path() / "preds.jsonl";
  testsupport::write_text(path,
                          R"({"header": {"model": "stub", "split": "test"}})"
                          "\n"
                          R"({"id": "a", "prediction": "Answer: 3"})"
                          "\n\n"
                          R"({"id": "b", "prediction": "Answer: 4", "error": ""})"
                          "\n");
  const auto preds = load_predictions(path.string());
  CHECK(preds.size() == 2);
  CHECK(preds.at("a") == "Answer: 3");
  CHECK(preds.at("b") == "Answer: 4");

  testsupport::write_text(path, R"({"id": "a", "prediction": "x"})"
                                "\n"
                                R"({"id": "a", "prediction": "y"})"
                                "\n");
  CHECK(testsupport::throws_error([&] { load_predictions(path.string()); },
                                  ErrorCategory::Validation,
                                  "duplicate prediction for id \"a\""));
  testsupport::write_text(path,
                          R"({"id": "a", "prediction": "x", "confidence": 1})"
                          "\n");
  CHECK(testsupport::throws_error([&] { load_predictions(path.string()); },
                                  ErrorCategory::Parse,
                                  "unsupported field \"confidence\""));
  testsupport::write_text(path, R"({"id": "a", "prediction": 3})"
                                "\n");
  CHECK(testsupport::throws_error(
      [&] { load_predictions(path.string()); }, ErrorCategory::Parse,
      "need string fields \"id\" and \"prediction\""));
  testsupport::write_text(path, "{\"id\": \"a\", \"prediction\": \"x\"}\n{oops\n");
  CHECK(testsupport::throws_error([&] { load_predictions(path.string()); },
                                  ErrorCategory::Parse, "preds.jsonl:2"));
  CHECK(testsupport::throws_error(
      [&] { load_predictions((dir.path() / "none.jsonl").string()); },
      ErrorCategory::Io, "cannot open predictions"));
}

TEST_CASE("evaluation buckets by task and aggregates by metric") {
  Corpus corpus;
  corpus.samples.push_back(mk_sample("deg-1", "deg", "accuracy", "integer", "3",
                                     "exact"));
  corpus.samples.push_back(mk_sample("deg-2", "deg", "accuracy", "integer", "1",
                                     "exact"));
  corpus.samples.push_back(mk_sample("deg-3", "deg", "accuracy", "integer", "4",
                                     "exact"));
  auto reg1 = mk_sample("reg-1", "reg", "rmse", "real", "1", "numeric");
  reg1.meta["verify"] = {{"kind", "numeric"}, {"eps", 1e-9}, {"relative", true}};
  corpus.samples.push_back(reg1);
  auto reg2 = reg1;
  reg2.id = "reg-2";
  reg2.meta["answer"] = "2";
  corpus.samples.push_back(reg2);
  corpus.samples.push_back(mk_sample("gen-1", "gen", "rouge_l", "text",
                                     "the cat sat", "exact"));

  std::map<std::string, std::string> preds{
      {"deg-1", "Answer: 3"},          // correct
      {"deg-2", "Answer: 2"},          // wrong
      {"deg-3", "total gibberish"},    // unparseable
      {"reg-1", "Answer: 1"},          // exact
      {"reg-2", "Answer: 4"},          // off by 2
      {"gen-1", "Answer: the cat"},    // rouge f1 0.8
  };
  const EvalReport r = evaluate_predictions(corpus, preds, EvalOptions{});
  CHECK(r.split == "test");
  CHECK(r.missing_ids.empty());
  CHECK(r.per_task.at("deg").value == doctest::Approx(1.0 / 3.0));
  CHECK(r.per_task.at("deg").n == 3);
  CHECK(r.per_task.at("deg").n_unparseable == 1);
  CHECK(r.per_task.at("reg").value ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(r.per_task.at("reg").n_scored == 2);
  CHECK(r.per_task.at("gen").value == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(r.aggregate.at("accuracy").n == 3);
  CHECK(r.aggregate.at("rmse").value ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(r.aggregate.at("rouge_l").value == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(r.per_sample.at("deg-1").at("correct") == true);
  CHECK(r.per_sample.at("deg-2").at("correct") == false);
  CHECK(r.per_sample.at("deg-3").at("parsed") == false);
  CHECK(r.per_sample.at("gen-1").at("f1") == doctest::Approx(0.8));

  const auto j = report_to_json(r);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"split", "tasks", "aggregate",
                                         "missing", "samples"});
  CHECK(j.at("tasks").at("deg").at("n_unparseable") == 1);

  const std::string table = report_table(r);
  CHECK(table.find("task") == 0);
  CHECK(table.find("(all accuracy)") != std::string::npos);
  CHECK(table.find("0.3333") != std::string::npos);
  CHECK(table.find("missing predictions") == std::string::npos);

  // A missing prediction is reported and scored unparseable.
  auto partial = preds;
  partial.erase("deg-1");
  const EvalReport r2 = evaluate_predictions(corpus, partial, EvalOptions{});
  CHECK(r2.missing_ids == std::vector<std::string>{"deg-1"});
  CHECK(r2.per_task.at("deg").value == doctest::Approx(0.0));
  CHECK(r2.per_task.at("deg").n_unparseable == 2);
  CHECK(report_table(r2).find("missing predictions: 1") != std::string::npos);

  // Unknown ids abort, listing at most ten.
  auto noisy = preds;
  for (int i = 0; i < 12; ++i) {
    noisy["ghost-" + std::to_string(i + 10)] = "x";
  }
  CHECK(testsupport::throws_error(
      [&] { evaluate_predictions(corpus, noisy, EvalOptions{}); },
      ErrorCategory::Validation, "unknown sample ids"));
  CHECK(testsupport::throws_error(
      [&] { evaluate_predictions(corpus, noisy, EvalOptions{}); },
      ErrorCategory::Validation, "and 2 more"));

  // Bad split values.
  EvalOptions bad;
  bad.split = "dev";
  CHECK(testsupport::throws_error(
      [&] { evaluate_predictions(corpus, preds, bad); }, ErrorCategory::Usage,
      "unknown split \"dev\""));
  EvalOptions train;
  train.split = "train";
  CHECK(testsupport::throws_error(
      [&] { evaluate_predictions(corpus, preds, train); },
      ErrorCategory::Validation, "no samples in split \"train\""));
}

TEST_CASE("rmse tasks need a parseable floor or an explicit penalty") {
  Corpus corpus;
  auto s = mk_sample("reg-1", "reg", "rmse", "real", "3", "numeric");
  corpus.samples.push_back(s);
  std::map<std::string, std::string> preds{{"reg-1", "no number"}};
  CHECK(testsupport::throws_error(
      [&] { evaluate_predictions(corpus, preds, EvalOptions{}); },
      ErrorCategory::Validation,
      "zero parseable predictions; RMSE is undefined (use the unparseable "
      "penalty to score anyway)"));

  EvalOptions opt;
  opt.unparseable_error = 3.0;
  const EvalReport r = evaluate_predictions(corpus, preds, opt);
  CHECK(r.per_task.at("reg").value == doctest::Approx(3.0));
  CHECK(r.per_task.at("reg").n_unparseable == 1);
  CHECK(r.per_task.at("reg").n_scored == 1);
}

TEST_CASE("malformed scoring metadata is rejected") {
  Corpus corpus;
  auto s = mk_sample("x-1", "x", "accuracy", "integer", "3", "exact");
  s.meta.erase("verify");
  corpus.samples.push_back(s);
  std::map<std::string, std::string> preds{{"x-1", "Answer: 3"}};
  CHECK(testsupport::throws_error(
      [&] { evaluate_predictions(corpus, preds, EvalOptions{}); },
      ErrorCategory::Validation, "missing verify metadata"));

  corpus.samples[0] = mk_sample("x-1", "x", "accuracy", "widget", "3", "exact");
  CHECK(testsupport::throws_error(
      [&] { evaluate_predictions(corpus, preds, EvalOptions{}); },
      ErrorCategory::Validation, "unknown answer kind \"widget\""));
}

TEST_CASE("reference outputs evaluate to perfect scores") {
  // Corpus built end to end; predicting each sample's own reference output
  // must score 1.0 accuracy with nothing unparseable.
  SuiteConfig cfg = parse_suite_config(nlohmann::json::parse(R"({
    "seed": 21,
    "tasks": [
      {"task": "degree_count", "count": 8},
      {"task": "shortest_path", "count": 8},
      {"task": "hamilton_path", "count": 8}
    ],
    "split": {"train": 4, "valid": 2, "test": 2},
    "augment": {"formats": ["json", "markdown"], "tae": true}
  })"));
  const Corpus corpus = build_corpus(cfg, BuildOverrides{.jobs = 1});

  std::map<std::string, std::string> preds;
  for (const auto& s : corpus.samples) {
    if (s.split == "test") preds[s.id] = s.output;
  }
  CHECK(preds.size() == 24);  // 3 datasets x 2 instances x 2 formats x (1+tae)

  const EvalReport r = evaluate_predictions(corpus, preds, EvalOptions{});
  CHECK(r.missing_ids.empty());
  for (const auto& [task, score] : r.per_task) {
    CAPTURE(task);
    CHECK(score.metric == "accuracy");
    CHECK(score.value == doctest::Approx(1.0));
    CHECK(score.n_unparseable == 0);
  }
  CHECK(r.aggregate.at("accuracy").value == doctest::Approx(1.0));
}

TEST_CASE("format reports compare token cost and accuracy per format") {
  Corpus corpus;
  auto j1 = mk_sample("t-1-json", "deg", "accuracy", "integer", "3", "exact");
  j1.input = "short text";
  auto j2 = mk_sample("t-2-json", "deg", "accuracy", "integer", "5", "exact");
  j2.input = "a slightly longer line of text";
  auto g1 = mk_sample("t-1-gml", "deg", "accuracy", "integer", "3", "exact",
                      "gml");
  g1.input = "graph [ ]";
  auto g2 = mk_sample("t-2-gml", "reg", "rmse", "real", "2", "numeric", "gml");
  g2.input = "graph [ x 1 ]";
  corpus.samples = {j1, j2, g1, g2};

  std::map<std::string, std::string> preds{
      {"t-1-json", "Answer: 3"},
      {"t-2-json", "Answer: 5"},
      {"t-1-gml", "Answer: 99"},  // wrong
      {"t-2-gml", "Answer: 2"},   // rmse sample: excluded from accuracy
  };
  const auto rep = format_report(corpus, "test", &preds);
  CHECK(rep.at("split") == "test");
  const auto& fj = rep.at("formats").at("json");
  CHECK(fj.at("n") == 2);
  const double expect_mean =
      (static_cast<double>(count_tokens(j1.input)) +
       static_cast<double>(count_tokens(j2.input))) /
      2.0;
  CHECK(fj.at("mean_input_tokens").get<double>() == doctest::Approx(expect_mean));
  CHECK(fj.at("accuracy").get<double>() == doctest::Approx(1.0));
  CHECK(fj.at("accuracy_n") == 2);
  const auto& fg = rep.at("formats").at("gml");
  CHECK(fg.at("n") == 2);
  CHECK(fg.at("accuracy").get<double>() == doctest::Approx(0.0));
  CHECK(fg.at("accuracy_n") == 1);

  // Without predictions only the cost columns appear.
  const auto bare = format_report(corpus, "", nullptr);
  CHECK(bare.at("split") == "all");
  CHECK(!bare.at("formats").at("json").contains("accuracy"));

  const std::string table = format_report_table(rep);
  CHECK(table.find("format") == 0);
  CHECK(table.find("gml") != std::string::npos);

  Corpus mono;
  mono.samples = {j1, j2};
  CHECK(testsupport::throws_error(
      [&] { format_report(mono, "test", nullptr); }, ErrorCategory::Validation,
      "format comparison needs at least two formats; corpus has 1"));
}
