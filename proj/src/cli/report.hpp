#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace tomo::cli {

enum ExitCode { kOk = 0, kVerificationFailed = 1, kUsageError = 2 };

struct RunReport {
  std::string command;
  std::map<std::string, std::string> inputs;  // path -> FNV-1a digest of the file bytes
  std::map<std::string, double> metrics;
  std::vector<std::string> warnings;
  std::string message;
  int exit_code = kOk;

  std::string status() const { return exit_code == kOk ? "ok" : "error"; }
  void add_input(const std::string& path);
  nlohmann::json to_json() const;
  void print_text(std::ostream& out) const;
};

std::string file_digest(const std::string& path);

}  // namespace tomo::cli
