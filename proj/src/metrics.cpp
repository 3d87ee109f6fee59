#include "forge/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "forge/error.hpp"

namespace forge {

double rmse(const std::vector<double>& predictions,
            const std::vector<double>& references) {
  if (predictions.size() != references.size()) {
    throw_error(ErrorCategory::Validation,
                "rmse needs aligned vectors, got " +
                    std::to_string(predictions.size()) + " and " +
                    std::to_string(references.size()));
  }
  if (predictions.empty()) {
    throw_error(ErrorCategory::Validation, "rmse of zero pairs is undefined");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const double d = predictions[i] - references[i];
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(predictions.size()));
}

std::vector<std::string> overlap_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    const bool word =
        (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
    if (word) {
      cur += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::size_t lcs_length(const std::vector<std::string>& a,
                       const std::vector<std::string>& b) {
  if (a.empty() || b.empty()) return 0;
  // Two-row DP; rows indexed by b.
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1
                                    : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

OverlapScore rouge_l(const std::string& prediction,
                     const std::string& reference) {
  const auto p = overlap_tokens(prediction);
  const auto r = overlap_tokens(reference);
  OverlapScore s;
  if (p.empty() && r.empty()) return s;
  if (p.empty() || r.empty()) return s;
  const double lcs = static_cast<double>(lcs_length(p, r));
  s.precision = lcs / static_cast<double>(p.size());
  s.recall = lcs / static_cast<double>(r.size());
  if (s.precision + s.recall > 0.0) {
    s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
  }
  return s;
}

}  // namespace forge
