#pragma once

#include <string>
#include <vector>

namespace forge {

// Root mean squared error over aligned prediction/reference pairs.
double rmse(const std::vector<double>& predictions,
            const std::vector<double>& references);

// Lowercased alphanumeric runs; every other character separates tokens.
std::vector<std::string> overlap_tokens(const std::string& text);

std::size_t lcs_length(const std::vector<std::string>& a,
                       const std::vector<std::string>& b);

struct OverlapScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Longest-common-subsequence overlap between token streams. Both empty
// scores zero; an empty side alone scores zero.
OverlapScore rouge_l(const std::string& prediction, const std::string& reference);

}  // namespace forge
