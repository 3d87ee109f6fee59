#include "forge/er.hpp"

#include "forge/error.hpp"

namespace forge {

AttributedGraph gen_er(const ErConfig& cfg, Rng& rng) {
  if (cfg.n_range.first < 1 || cfg.n_range.second < cfg.n_range.first) {
    throw_error(ErrorCategory::Config, "node count range is empty or non-positive");
  }
  if (cfg.p_range.first < 0.0 || cfg.p_range.second > 1.0 ||
      cfg.p_range.second < cfg.p_range.first) {
    throw_error(ErrorCategory::Config, "edge probability range must lie in [0, 1]");
  }
  if (cfg.weighted && cfg.weight_range.second < cfg.weight_range.first) {
    throw_error(ErrorCategory::Config, "weight range is empty");
  }

  const int n = static_cast<int>(rng.uniform_int(cfg.n_range.first, cfg.n_range.second));
  const double p = rng.uniform_real(cfg.p_range.first, cfg.p_range.second);

  GraphBuilder b(cfg.directed);
  b.reserve_nodes(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) b.add_node();

  auto maybe_add = [&](int u, int v) {
    if (!rng.bernoulli(p)) return;
    AttrMap attrs;
    if (cfg.weighted) {
      attrs.insert_or_assign(
          "weight", AttrValue::integer(rng.uniform_int(cfg.weight_range.first,
                                                       cfg.weight_range.second)));
    }
    b.add_edge(u, v, std::move(attrs));
  };

  if (cfg.directed) {
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        if (u != v) maybe_add(u, v);
      }
    }
  } else {
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) maybe_add(u, v);
    }
  }

  return std::move(b).build();
}

}  // namespace forge
