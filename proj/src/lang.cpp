#include "forge/lang.hpp"

#include <cctype>

namespace forge {
namespace {

std::string ensure_newline(std::string s) {
  if (s.empty() || s.back() != '\n') s += '\n';
  return s;
}

}  // namespace

std::string lang_g(const std::string& description, const std::string& graph_text,
                   const std::string& query) {
  std::string out = "# Graph Description\n";
  out += ensure_newline(description);
  out += "\n# Graph Text\n";
  out += ensure_newline(graph_text);
  out += "\n# Query\n";
  out += ensure_newline(query);
  return out;
}

std::string lang_y(const std::string& prose, const std::string& canonical) {
  std::string out = "# Answer\n";
  out += ensure_newline(prose);
  out += "Answer: " + canonical + "\n";
  return out;
}

std::size_t count_tokens(std::string_view text) {
  std::size_t count = 0;
  bool in_word = false;
  for (char c : text) {
    const auto uc = static_cast<unsigned char>(c);
    const bool word = std::isalnum(uc) != 0 || c == '_';
    if (word) {
      if (!in_word) {
        ++count;
        in_word = true;
      }
    } else {
      in_word = false;
      if (std::isspace(uc) == 0) ++count;
    }
  }
  return count;
}

}  // namespace forge
