#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace forge {

// Instruction-side composition: description, serialized graph, and query in
// one markdown-sectioned prompt.
std::string lang_g(const std::string& description, const std::string& graph_text,
                   const std::string& query);

// Response-side composition: explanation first, machine-checkable final line
// last. The evaluator keys on that "Answer:" line.
std::string lang_y(const std::string& prose, const std::string& canonical);

// Crude length proxy: each run of [A-Za-z0-9_] is one token, every other
// non-space character is one token. Used for format length reports only.
std::size_t count_tokens(std::string_view text);

}  // namespace forge
