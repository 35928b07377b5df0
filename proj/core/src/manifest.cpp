#include "batchcot/manifest.hpp"

#include <chrono>
#include <ctime>

#include <fmt/format.h>

#include "batchcot/error.hpp"

namespace batchcot {

const char* tool_version() { return BATCHCOT_VERSION; }

Json to_json(const RunManifest& m) {
  return Json{{"command", m.command},
              {"argv", m.argv},
              {"config", m.config},
              {"seed", m.seed ? Json(*m.seed) : Json(nullptr)},
              {"inputs", m.inputs},
              {"outputs", m.outputs},
              {"tool_version", m.tool_version},
              {"started_at", m.started_at},
              {"finished_at", m.finished_at},
              {"exclusions", m.exclusions},
              {"stats", m.stats}};
}

RunManifest manifest_from_json(const Json& j) {
  RunManifest m;
  try {
    m.command = j.at("command").get<std::string>();
    m.argv = j.at("argv").get<std::vector<std::string>>();
    m.config = j.value("config", Json::object());
    if (j.contains("seed") && !j["seed"].is_null()) m.seed = j["seed"].get<std::uint64_t>();
    m.inputs = j.value("inputs", std::vector<std::string>{});
    m.outputs = j.value("outputs", std::vector<std::string>{});
    m.tool_version = j.value("tool_version", "");
    m.started_at = j.value("started_at", "");
    m.finished_at = j.value("finished_at", "");
    m.exclusions = j.value("exclusions", Json::object());
    m.stats = j.value("stats", Json::object());
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed manifest: ") + e.what());
  }
  return m;
}

std::filesystem::path manifest_path_for(const std::filesystem::path& output) {
  if (std::filesystem::is_directory(output)) return output / "manifest.json";
  auto p = output;
  p += ".manifest.json";
  return p;
}

void write_manifest(const RunManifest& m, const std::filesystem::path& path) {
  write_text_file(path, to_json(m).dump(2) + "\n");
}

RunManifest read_manifest(const std::filesystem::path& path) {
  const auto text = read_text_file(path);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(fmt::format("{}: {}", path.string(), e.what()));
  }
  return manifest_from_json(j);
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace batchcot
