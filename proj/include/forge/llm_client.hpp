#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "forge/corpus.hpp"

namespace forge {

struct RetryPolicy {
  int max_attempts = 3;
  double backoff_base_sec = 0.5;  // attempt k sleeps base * 2^k
};

struct SamplingParams {
  double temperature = 0.0;
  int max_tokens = 1024;
};

// Chat-completions endpoint description. The API key never appears here:
// api_key_env names an environment variable and only its value at request
// time is sent, so configs stay safe to commit and logs stay secret-free.
struct EndpointConfig {
  std::string base_url;     // e.g. http://127.0.0.1:8089
  std::string model;
  std::string api_key_env;  // empty means no Authorization header
  int max_concurrent = 4;
  double timeout_sec = 60.0;
  RetryPolicy retry;
  SamplingParams sampling;
};

EndpointConfig parse_endpoint_config(const nlohmann::json& j);
EndpointConfig load_endpoint_config(const std::string& path);

struct InferOptions {
  std::string split = "test";
  bool resume = true;  // skip ids already answered in the output file
  std::int64_t limit = -1;  // cap on samples to send, -1 = all
};

struct InferStats {
  std::size_t requested = 0;
  std::size_t completed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;  // via resume
};

// Sends each split sample's input to the endpoint and writes one
// {"id", "prediction"} line per sample, in corpus order, after a header
// line recording the run settings. Per-sample failures are recorded and do
// not stop the run; an authentication failure aborts immediately. A
// request/response log is written next to the output file.
InferStats run_inference(const Corpus& corpus, const EndpointConfig& endpoint,
                         const InferOptions& opt, const std::string& out_path);

}  // namespace forge
