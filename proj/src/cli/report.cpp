#include "cli/report.hpp"

#include <fstream>
#include <iomanip>
#include <iterator>
#include <ostream>

#include "tomokit/core.hpp"

namespace tomo::cli {

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "unreadable";
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  Fnv1a h;
  h.add(bytes);
  return hex_digest(h.value());
}

void RunReport::add_input(const std::string& path) { inputs[path] = file_digest(path); }

nlohmann::json RunReport::to_json() const {
  nlohmann::json m = nlohmann::json::object();
  for (const auto& [k, v] : metrics) m[k] = v;
  nlohmann::json j = {{"command", command}, {"inputs", inputs},      {"metrics", m},
                      {"warnings", warnings}, {"status", status()}, {"exit_code", exit_code}};
  if (!message.empty()) j["message"] = message;
  return j;
}

void RunReport::print_text(std::ostream& out) const {
  out << command << ": " << status() << '\n';
  if (!message.empty()) out << message << '\n';
  for (const auto& [k, v] : inputs) out << "  input " << k << " [" << v << "]\n";
  const auto flags = out.flags();
  for (const auto& [k, v] : metrics) out << "  " << std::left << std::setw(24) << k << std::setprecision(10) << v << '\n';
  out.flags(flags);
  for (const auto& w : warnings) out << "  warning: " << w << '\n';
}

}  // namespace tomo::cli
