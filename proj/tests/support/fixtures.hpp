#pragma once

#include <atomic>
#include <fstream>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "disasteller/core/digest.hpp"

namespace fixtures {

namespace fs = std::filesystem;

inline fs::path data_dir() { return fs::path(DISASTELLER_DATA_DIR) / "wajima"; }
inline std::string manifest() { return (data_dir() / "manifest.json").string(); }
inline std::string config() { return (data_dir() / "config.json").string(); }
inline std::string script() { return (data_dir() / "script.json").string(); }

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "t") {
    static std::atomic<int> counter{0};
    std::random_device rd;
    path_ = fs::temp_directory_path() /
            ("disasteller-" + tag + "-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  std::string str(const std::string& child = "") const {
    return child.empty() ? path_.string() : (path_ / child).string();
  }

 private:
  fs::path path_;
};

inline void write_text(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

inline nlohmann::json read_json(const fs::path& p) {
  return nlohmann::json::parse(disasteller::core::read_text_file(p.string()));
}

/// Copy of the Wajima scenario in a temp dir, so tests can break files.
inline void copy_scenario(const fs::path& to) {
  fs::copy(data_dir(), to, fs::copy_options::recursive);
}

}  // namespace fixtures
