#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "forge/attr_value.hpp"
#include "forge/graph.hpp"
#include "forge/sample.hpp"
#include "forge/task.hpp"
#include "forge/templates.hpp"
#include "forge/textualize.hpp"

namespace forge {

struct FmaePlan {
  bool enabled = false;
  double mask_rate = 0.2;
};

// Expansion recipe for one instance: which exchange formats to render, and
// which self-supervised additions to attach per rendered sample.
struct AugmentPlan {
  std::vector<FormatSpec> formats;
  bool tae = false;
  FmaePlan fmae;
};

AugmentPlan parse_augment_plan(const nlohmann::json& j);
AugmentPlan load_augment_plan(const std::string& path);

struct MaskTarget {
  bool is_edge = false;
  std::size_t index = 0;  // node id or edge index
  std::string attr;
  AttrValue original;
};

struct MaskedGraph {
  AttributedGraph graph;
  std::vector<MaskTarget> masked;
  std::size_t probe = 0;  // index into masked
};

// True when the graph carries at least one text or numeric attribute on a
// node or an edge. Boolean attrs are not maskable.
bool has_maskable_attrs(const AttributedGraph& g);

// Replaces ceil(rate * population) attribute values with the literal
// "unknown" and picks one masked slot as the probe. Population is every
// (element, attribute) pair over nodes then edges. Topology is unchanged.
// rate must satisfy 0 < rate <= 1; a featureless graph is an error.
MaskedGraph mask_graph(const AttributedGraph& g, double rate, std::uint64_t seed);

// Neighbor-listing instance on the parent's graph; query node seeded from
// the parent instance so every format variant shares it.
TaskInstance make_tae_instance(const TaskInstance& parent,
                               const TemplatePack& templates);

// Masked-value recovery instance; text probes with internal whitespace
// route to "fmae_text" and score by text overlap, everything else to "fmae".
TaskInstance make_fmae_instance(const TaskInstance& parent,
                                const MaskedGraph& masked,
                                const TemplatePack& templates);

// Renders one instance into one sample for one format.
InstructionSample render_sample(const TaskInstance& inst, const FormatSpec& fmt,
                                const std::string& id,
                                const std::string& template_version);

// Full expansion of one instance under a plan: one sample per format, plus
// per parent sample one TAE sample and, when the graph is maskable, one
// FMAE sample, each inheriting the parent sample's format. All randomness
// derives from the instance seed, so format variants share the TAE query
// node and the FMAE mask.
std::vector<InstructionSample> expand_instance(
    const TaskInstance& inst, const AugmentPlan& plan,
    const std::string& dataset, std::size_t index,
    const TemplatePack& templates, const std::string& template_version);

std::string sample_id(const std::string& dataset, std::size_t index,
                      const FormatSpec& fmt, const std::string& suffix = "");

}  // namespace forge
