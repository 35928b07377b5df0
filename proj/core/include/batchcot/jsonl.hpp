#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace batchcot {

using Json = nlohmann::json;

struct JsonlLine {
  std::size_t line_number = 0;  // 1-based
  Json value;
};

/// Reads one JSON object per non-blank line. Malformed lines raise
/// ValidationError listing every offending line.
std::vector<JsonlLine> read_jsonl(const std::filesystem::path& path);
std::vector<JsonlLine> read_jsonl(std::istream& in, const std::string& source_name);

void write_jsonl(const std::filesystem::path& path, const std::vector<Json>& rows);
void write_jsonl(std::ostream& out, const std::vector<Json>& rows);

void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace batchcot
