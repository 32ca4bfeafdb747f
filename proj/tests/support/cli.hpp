#pragma once

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include <nlohmann/json.hpp>

#include "support/fixtures.hpp"

namespace fixtures {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

inline std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

/// Runs the CLI with `args` (already quoted) in `cwd`; env is a prefix such
/// as "env -u VAR".
inline CliResult run_cli(const std::string& args, const fs::path& cwd, const std::string& env = "") {
  const auto err_path = cwd / ".stderr";
  const std::string cmd = "cd " + shell_quote(cwd.string()) + " && " + env + " " +
                          shell_quote(DISASTELLER_CLI) + " " + args + " 2>" +
                          shell_quote(err_path.string());
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = disasteller::core::read_text_file(err_path.string());
  fs::remove(err_path);
  return r;
}

inline std::string data_arg(const std::string& name) { return shell_quote((data_dir() / name).string()); }

}  // namespace fixtures
