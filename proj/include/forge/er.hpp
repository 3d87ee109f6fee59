#pragma once

#include <cstdint>
#include <utility>

#include "forge/graph.hpp"
#include "forge/rng.hpp"

namespace forge {

// Random graph sampler: node count and edge probability are drawn uniformly
// from the configured ranges, then each candidate pair flips an independent
// coin. Pair order is fixed (i<j ascending for undirected, all ordered pairs
// ascending for directed) so one seed always yields one graph.
struct ErConfig {
  std::pair<int, int> n_range{5, 25};
  std::pair<double, double> p_range{0.2, 0.5};
  bool directed = false;
  bool weighted = false;                      // integer "weight" on every edge
  std::pair<int, int> weight_range{1, 10};
};

AttributedGraph gen_er(const ErConfig& cfg, Rng& rng);

}  // namespace forge
