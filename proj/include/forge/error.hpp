#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace forge {

// Error categories surfaced by the CLI as machine-parseable prefixes.
enum class ErrorCategory {
  Parse,
  Validation,
  Config,
  Generation,
  Io,
  Network,
  Usage,
};

std::string_view to_string(ErrorCategory c);

class Error : public std::runtime_error {
public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

private:
  ErrorCategory category_;
};

[[noreturn]] inline void throw_error(ErrorCategory c, const std::string& msg) {
  throw Error(c, msg);
}

inline std::string_view to_string(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::Parse: return "parse";
    case ErrorCategory::Validation: return "validation";
    case ErrorCategory::Config: return "config";
    case ErrorCategory::Generation: return "generation";
    case ErrorCategory::Io: return "io";
    case ErrorCategory::Network: return "network";
    case ErrorCategory::Usage: return "usage";
  }
  return "error";
}

}  // namespace forge
