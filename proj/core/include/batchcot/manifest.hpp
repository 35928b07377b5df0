#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "batchcot/jsonl.hpp"

namespace batchcot {

/// Provenance for one CLI run, written next to its outputs.
struct RunManifest {
  std::string command;
  std::vector<std::string> argv;  // as invoked, without the program name
  Json config = Json::object();   // resolved options, never the API key
  std::optional<std::uint64_t> seed;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::string tool_version;
  std::string started_at;  // ISO-8601 UTC
  std::string finished_at;
  Json exclusions = Json::object();
  Json stats = Json::object();
};

Json to_json(const RunManifest& m);
RunManifest manifest_from_json(const Json& j);

/// `<out>.manifest.json` for a file output, `<dir>/manifest.json` for a
/// directory output.
std::filesystem::path manifest_path_for(const std::filesystem::path& output);

void write_manifest(const RunManifest& m, const std::filesystem::path& path);
RunManifest read_manifest(const std::filesystem::path& path);

std::string utc_timestamp();

const char* tool_version();

}  // namespace batchcot
