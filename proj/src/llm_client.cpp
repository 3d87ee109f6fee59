#include "forge/llm_client.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include <httplib.h>

#include "forge/error.hpp"

namespace forge {

namespace {

std::string require_string(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string()) {
    throw_error(ErrorCategory::Config,
                std::string("endpoint config: missing string field \"") + key +
                    "\"");
  }
  return j.at(key).get<std::string>();
}

}  // namespace

EndpointConfig parse_endpoint_config(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw_error(ErrorCategory::Config, "endpoint config: expected a JSON object");
  }
  static const std::set<std::string> known = {
      "base_url", "model",   "api_key_env", "max_concurrent",
      "timeout_sec", "retry", "sampling"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    // Reject anything that smells like an inline secret: keys come only via
    // the environment.
    if (it.key() == "api_key" || it.key() == "token" ||
        it.key() == "api_key_value" || it.key() == "secret") {
      throw_error(ErrorCategory::Config,
                  "endpoint config: secrets must be passed through "
                  "api_key_env, never inline");
    }
    if (!known.count(it.key())) {
      throw_error(ErrorCategory::Config,
                  "endpoint config: unknown field \"" + it.key() + "\"");
    }
  }
  EndpointConfig cfg;
  cfg.base_url = require_string(j, "base_url");
  if (cfg.base_url.rfind("http://", 0) != 0 &&
      cfg.base_url.rfind("https://", 0) != 0) {
    throw_error(ErrorCategory::Config,
                "endpoint config: base_url must start with http:// or https://");
  }
  cfg.model = require_string(j, "model");
  if (j.contains("api_key_env")) {
    cfg.api_key_env = j.at("api_key_env").get<std::string>();
  }
  if (j.contains("max_concurrent")) {
    cfg.max_concurrent = j.at("max_concurrent").get<int>();
    if (cfg.max_concurrent < 1) {
      throw_error(ErrorCategory::Config,
                  "endpoint config: max_concurrent must be >= 1");
    }
  }
  if (j.contains("timeout_sec")) {
    cfg.timeout_sec = j.at("timeout_sec").get<double>();
    if (!(cfg.timeout_sec > 0)) {
      throw_error(ErrorCategory::Config,
                  "endpoint config: timeout_sec must be positive");
    }
  }
  if (j.contains("retry")) {
    const auto& r = j.at("retry");
    if (r.contains("max_attempts")) {
      cfg.retry.max_attempts = r.at("max_attempts").get<int>();
      if (cfg.retry.max_attempts < 1) {
        throw_error(ErrorCategory::Config,
                    "endpoint config: retry.max_attempts must be >= 1");
      }
    }
    if (r.contains("backoff_base_sec")) {
      cfg.retry.backoff_base_sec = r.at("backoff_base_sec").get<double>();
      if (cfg.retry.backoff_base_sec < 0) {
        throw_error(ErrorCategory::Config,
                    "endpoint config: retry.backoff_base_sec must be >= 0");
      }
    }
  }
  if (j.contains("sampling")) {
    const auto& s = j.at("sampling");
    if (s.contains("temperature")) {
      cfg.sampling.temperature = s.at("temperature").get<double>();
    }
    if (s.contains("max_tokens")) {
      cfg.sampling.max_tokens = s.at("max_tokens").get<int>();
    }
  }
  return cfg;
}

EndpointConfig load_endpoint_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_error(ErrorCategory::Io, "cannot open endpoint config " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw_error(ErrorCategory::Config, path + ": " + e.what());
  }
  try {
    return parse_endpoint_config(j);
  } catch (const Error& e) {
    throw Error(e.category(), path + ": " + std::string(e.what()));
  }
}

namespace {

struct UrlParts {
  std::string origin;       // scheme://host:port
  std::string path_prefix;  // possibly empty, no trailing slash
};

UrlParts split_url(const std::string& url) {
  const std::size_t scheme_end = url.find("://");
  const std::size_t path_begin = url.find('/', scheme_end + 3);
  UrlParts parts;
  if (path_begin == std::string::npos) {
    parts.origin = url;
  } else {
    parts.origin = url.substr(0, path_begin);
    parts.path_prefix = url.substr(path_begin);
    while (!parts.path_prefix.empty() && parts.path_prefix.back() == '/') {
      parts.path_prefix.pop_back();
    }
  }
  return parts;
}

std::string now_stamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

struct WorkItem {
  const InstructionSample* sample = nullptr;
  std::string prediction;
  std::string error;
  bool done = false;
};

}  // namespace

InferStats run_inference(const Corpus& corpus, const EndpointConfig& endpoint,
                         const InferOptions& opt, const std::string& out_path) {
  std::string api_key;
  if (!endpoint.api_key_env.empty()) {
    const char* v = std::getenv(endpoint.api_key_env.c_str());
    if (!v || !*v) {
      throw_error(ErrorCategory::Config,
                  "environment variable " + endpoint.api_key_env +
                      " is not set; it must hold the API key");
    }
    api_key = v;
  }

  std::vector<const InstructionSample*> split_samples;
  for (const auto& s : corpus.samples) {
    if (s.split == opt.split) split_samples.push_back(&s);
  }
  if (split_samples.empty()) {
    throw_error(ErrorCategory::Validation,
                "corpus has no samples in split \"" + opt.split + "\"");
  }

  // Resume: keep predictions already present; never answer an id twice.
  std::map<std::string, std::string> existing;
  if (opt.resume) {
    std::ifstream in(out_path, std::ios::binary);
    if (in) {
      std::string line;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) continue;
        if (j.contains("header")) continue;
        // Failed attempts are retried, finished ones are kept.
        if (j.contains("id") && j.contains("prediction") &&
            !j.contains("error")) {
          existing[j.at("id").get<std::string>()] =
              j.at("prediction").get<std::string>();
        }
      }
    }
  }

  InferStats stats;
  std::vector<WorkItem> items(split_samples.size());
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < split_samples.size(); ++i) {
    items[i].sample = split_samples[i];
    auto it = existing.find(split_samples[i]->id);
    if (it != existing.end()) {
      items[i].prediction = it->second;
      items[i].done = true;
      ++stats.skipped;
      continue;
    }
    if (opt.limit >= 0 &&
        static_cast<std::int64_t>(pending.size()) >= opt.limit) {
      continue;
    }
    pending.push_back(i);
  }
  stats.requested = pending.size();

  std::ofstream log(out_path + ".log", std::ios::binary | std::ios::app);
  std::mutex log_mutex;
  auto log_line = [&](const std::string& line) {
    std::lock_guard<std::mutex> lock(log_mutex);
    log << now_stamp() << " " << line << "\n";
    log.flush();
  };
  log_line("run start: model=" + endpoint.model + " split=" + opt.split +
           " pending=" + std::to_string(pending.size()) +
           " skipped=" + std::to_string(stats.skipped));

  const UrlParts url = split_url(endpoint.base_url);
  const std::string route = url.path_prefix + "/v1/chat/completions";

  std::atomic<std::size_t> next{0};
  std::atomic<bool> auth_failed{false};
  std::string auth_error;
  std::mutex auth_mutex;

  auto worker = [&]() {
    httplib::Client client(url.origin);
    const auto timeout_ms =
        std::chrono::milliseconds(static_cast<long>(endpoint.timeout_sec * 1000));
    client.set_connection_timeout(timeout_ms);
    client.set_read_timeout(timeout_ms);
    client.set_write_timeout(timeout_ms);

    for (;;) {
      if (auth_failed.load()) return;
      const std::size_t slot = next.fetch_add(1);
      if (slot >= pending.size()) return;
      WorkItem& item = items[pending[slot]];
      const InstructionSample& sample = *item.sample;

      nlohmann::ordered_json payload = nlohmann::ordered_json::object();
      payload["model"] = endpoint.model;
      payload["messages"] = nlohmann::ordered_json::array(
          {{{"role", "user"}, {"content", sample.input}}});
      payload["temperature"] = endpoint.sampling.temperature;
      payload["max_tokens"] = endpoint.sampling.max_tokens;
      const std::string body = payload.dump();

      httplib::Headers headers;
      if (!api_key.empty()) {
        headers.emplace("Authorization", "Bearer " + api_key);
      }

      std::string last_error;
      for (int attempt = 0; attempt < endpoint.retry.max_attempts; ++attempt) {
        if (attempt > 0) {
          const double sleep_sec =
              endpoint.retry.backoff_base_sec * std::pow(2.0, attempt - 1);
          std::this_thread::sleep_for(
              std::chrono::duration<double>(sleep_sec));
        }
        log_line("request id=" + sample.id + " attempt=" +
                 std::to_string(attempt + 1));
        auto res = client.Post(route, headers, body, "application/json");
        if (!res) {
          last_error = "transport: " + httplib::to_string(res.error());
          log_line("response id=" + sample.id + " " + last_error);
          continue;
        }
        if (res->status == 401 || res->status == 403) {
          std::lock_guard<std::mutex> lock(auth_mutex);
          auth_error = "authentication rejected (HTTP " +
                       std::to_string(res->status) + ")";
          auth_failed.store(true);
          log_line("response id=" + sample.id + " " + auth_error);
          return;
        }
        if (res->status != 200) {
          last_error = "HTTP " + std::to_string(res->status);
          log_line("response id=" + sample.id + " " + last_error);
          continue;
        }
        nlohmann::json rj = nlohmann::json::parse(res->body, nullptr, false);
        if (rj.is_discarded() || !rj.contains("choices") ||
            !rj.at("choices").is_array() || rj.at("choices").empty() ||
            !rj.at("choices").at(0).contains("message")) {
          last_error = "malformed completion payload";
          log_line("response id=" + sample.id + " " + last_error);
          continue;
        }
        item.prediction = rj.at("choices")
                              .at(0)
                              .at("message")
                              .value("content", std::string());
        item.done = true;
        log_line("response id=" + sample.id + " ok bytes=" +
                 std::to_string(item.prediction.size()));
        break;
      }
      if (!item.done) item.error = last_error;
    }
  };

  const int n_workers = std::min<int>(
      endpoint.max_concurrent, static_cast<int>(std::max<std::size_t>(
                                   pending.size(), 1)));
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(n_workers));
  for (int i = 0; i < n_workers; ++i) threads.emplace_back(worker);
  for (auto& t : threads) t.join();

  if (auth_failed.load()) {
    log_line("run aborted: " + auth_error);
    throw_error(ErrorCategory::Network, auth_error);
  }

  for (const auto& item : items) {
    if (!item.sample) continue;
    if (item.done) {
      ++stats.completed;
    } else if (!item.error.empty()) {
      ++stats.failed;
    }
  }
  stats.completed -= stats.skipped;

  // Rewrite the whole file in corpus order: header first, one line per
  // sample that has an answer or a recorded failure.
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw_error(ErrorCategory::Io, "cannot write " + out_path);
  nlohmann::ordered_json header = nlohmann::ordered_json::object();
  nlohmann::ordered_json hv = nlohmann::ordered_json::object();
  hv["model"] = endpoint.model;
  hv["temperature"] = endpoint.sampling.temperature;
  hv["max_tokens"] = endpoint.sampling.max_tokens;
  hv["split"] = opt.split;
  hv["tool_version"] = kToolVersion;
  header["header"] = hv;
  out << header.dump() << "\n";
  for (const auto& item : items) {
    if (!item.sample) continue;
    if (item.done) {
      nlohmann::ordered_json line = nlohmann::ordered_json::object();
      line["id"] = item.sample->id;
      line["prediction"] = item.prediction;
      out << line.dump() << "\n";
    } else if (!item.error.empty()) {
      nlohmann::ordered_json line = nlohmann::ordered_json::object();
      line["id"] = item.sample->id;
      line["prediction"] = "";
      line["error"] = item.error;
      out << line.dump() << "\n";
    }
  }
  if (!out) throw_error(ErrorCategory::Io, "write failed for " + out_path);
  out.close();
  log_line("run end: completed=" + std::to_string(stats.completed) +
           " failed=" + std::to_string(stats.failed));
  return stats;
}

}  // namespace forge
