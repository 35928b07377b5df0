#include "batchcot/jsonl.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "batchcot/error.hpp"

namespace batchcot {

std::vector<JsonlLine> read_jsonl(std::istream& in, const std::string& source_name) {
  std::vector<JsonlLine> rows;
  std::vector<std::string> problems;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      Json value = Json::parse(line);
      if (!value.is_object()) {
        problems.push_back(fmt::format("{}:{}: expected a JSON object", source_name, number));
        continue;
      }
      rows.push_back({number, std::move(value)});
    } catch (const Json::parse_error& e) {
      problems.push_back(fmt::format("{}:{}: {}", source_name, number, e.what()));
    }
  }
  if (!problems.empty()) {
    throw ValidationError(fmt::format("{}: {} malformed line(s)", source_name, problems.size()),
                          std::move(problems));
  }
  return rows;
}

std::vector<JsonlLine> read_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput(fmt::format("cannot open {}", path.string()));
  return read_jsonl(in, path.string());
}

void write_jsonl(std::ostream& out, const std::vector<Json>& rows) {
  for (const auto& row : rows) out << row.dump() << '\n';
}

void write_jsonl(const std::filesystem::path& path, const std::vector<Json>& rows) {
  std::ostringstream buffer;
  write_jsonl(buffer, rows);
  write_text_file(path, buffer.str());
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput(fmt::format("cannot write {}", path.string()));
  out << text;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput(fmt::format("cannot open {}", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace batchcot
