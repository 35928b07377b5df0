#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace batchcot {

/// Flat `key = value` settings; `#` starts a comment line. Later keys win.
struct ConfigFile {
  std::map<std::string, std::string> values;
  std::map<std::string, std::size_t> lines;  // key -> line it came from
};

ConfigFile parse_config(std::string_view text, const std::string& source_name = "<config>");
ConfigFile load_config(const std::filesystem::path& path);

}  // namespace batchcot
