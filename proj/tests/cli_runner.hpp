// Helper for tests that drive the command line tool as a subprocess.
#pragma once

#include <array>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <json.hpp>

namespace cli_test {

struct RunResult {
  int exit_code = -1;
  std::string out;

  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

inline std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) {
    if (c == '\'')
      q += "'\\''";
    else
      q += c;
  }
  q += "'";
  return q;
}

// Runs the tool with the given arguments, capturing stdout; stderr is
// discarded so diagnostics never pollute captured JSON.
inline RunResult run_cli(const std::vector<std::string>& args) {
  std::string cmd = shell_quote(FLATNEWT_CLI_PATH);
  for (const auto& a : args) cmd += " " + shell_quote(a);
  cmd += " 2>/dev/null";

  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("failed to spawn: " + cmd);
  RunResult res;
  std::array<char, 4096> buf{};
  size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), n);
  int status = pclose(pipe);
  if (WIFEXITED(status))
    res.exit_code = WEXITSTATUS(status);
  else
    res.exit_code = -1;
  return res;
}

}  // namespace cli_test
