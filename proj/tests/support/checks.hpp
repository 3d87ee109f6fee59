#pragma once

// Shared assertions and fixtures for the test binaries.

#include <unistd.h>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "forge/error.hpp"

namespace testsupport {

// Runs fn and reports the category and message substring of the Error it
// must throw. Returns true only when all three expectations hold.
template <typename Fn>
bool throws_error(Fn&& fn, forge::ErrorCategory category,
                  const std::string& needle = "") {
  try {
    fn();
  } catch (const forge::Error& e) {
    if (e.category() != category) {
      std::fprintf(stderr, "wrong category: got %.*s, message: %s\n",
                   static_cast<int>(to_string(e.category()).size()),
                   to_string(e.category()).data(), e.what());
      return false;
    }
    if (!needle.empty() && std::string(e.what()).find(needle) == std::string::npos) {
      std::fprintf(stderr, "message lacks \"%s\": %s\n", needle.c_str(), e.what());
      return false;
    }
    return true;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "wrong exception type: %s\n", e.what());
    return false;
  }
  std::fprintf(stderr, "no exception thrown\n");
  return false;
}

// Self-cleaning scratch directory under the system temp root.
class TempDir {
 public:
  TempDir() {
    static std::atomic<unsigned> counter{0};
    const auto base = std::filesystem::temp_directory_path();
    for (;;) {
      path_ = base / ("forge-test-" + std::to_string(::getpid()) + "-" +
                      std::to_string(counter.fetch_add(1)));
      std::error_code ec;
      if (std::filesystem::create_directory(path_, ec)) break;
    }
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  std::filesystem::path path_;
};

inline void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

}  // namespace testsupport
