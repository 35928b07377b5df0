#include "batchcot/config_file.hpp"

#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "batchcot/error.hpp"
#include "batchcot/jsonl.hpp"

namespace batchcot {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

ConfigFile parse_config(std::string_view text, const std::string& source_name) {
  ConfigFile cfg;
  std::vector<std::string> problems;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      problems.push_back(fmt::format("{}:{}: expected key = value", source_name, number));
      continue;
    }
    auto key = trim(std::string_view(line).substr(0, eq));
    if (key.empty()) {
      problems.push_back(fmt::format("{}:{}: empty key", source_name, number));
      continue;
    }
    auto value = trim(std::string_view(line).substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    cfg.values[key] = value;
    cfg.lines[key] = number;
  }
  if (!problems.empty()) throw ValidationError(source_name + ": invalid config", problems);
  return cfg;
}

ConfigFile load_config(const std::filesystem::path& path) {
  return parse_config(read_text_file(path), path.string());
}

}  // namespace batchcot
