#pragma once

#include <atomic>
#include <chrono>
#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "batchcot/backend.hpp"
#include "batchcot/question.hpp"

namespace batchcot {

struct ScriptedResponse {
  std::string text;
  std::optional<std::int64_t> completion_tokens;
};

/// Canned responses keyed by prompt fingerprint, plus a generator for
/// prompts that are not scripted. The same fingerprint always yields the
/// same response.
class MockScript {
 public:
  using Generator = std::function<ScriptedResponse(const ChatRequest&)>;

  void add(std::string_view prompt_text, ScriptedResponse response);
  void add_fingerprint(std::string fingerprint, ScriptedResponse response);
  void set_default(Generator generator) { default_ = std::move(generator); }

  ScriptedResponse respond(const ChatRequest& request) const;
  std::size_t size() const { return scripted_.size(); }

  /// Loads "<fingerprint>.txt" files (verbatim response text) with optional
  /// "<fingerprint>.tokens" usage counts. A "solver.json" file in the same
  /// directory installs a ScriptedSolver as the default generator.
  static MockScript load_directory(const std::filesystem::path& dir);
  /// Writes the scripted entries in the directory layout load_directory reads.
  void save_directory(const std::filesystem::path& dir) const;

 private:
  std::map<std::string, ScriptedResponse> scripted_;
  Generator default_;
};

/// Per-question behaviour for the scripted solver.
struct SolverEntry {
  std::string text;
  std::string answer;
  bool vanilla_correct = true;
  bool batch_correct = true;
  std::int64_t vanilla_tokens = 400;
};

/// Answers vanilla and batch prompts for known questions. Vanilla responses
/// carry vanilla_tokens filler words before a boxed answer; in a batch of k
/// each question gets vanilla_tokens * shrink^(k-1) words, laid out with
/// "Problem i:" headings and a "[Final Answer]" block. Wrong answers are
/// produced by perturbing the gold answer. Usage is the whitespace token
/// count of the response. Jitter adds a seed-dependent offset in
/// [-jitter, jitter] to each length.
class ScriptedSolver {
 public:
  explicit ScriptedSolver(std::vector<SolverEntry> entries, double shrink = 0.7,
                          std::int64_t jitter = 0);

  ScriptedResponse operator()(const ChatRequest& request) const;

  static ScriptedSolver from_json(const Json& j);
  Json to_json() const;

 private:
  const SolverEntry* lookup(std::string_view text) const;
  std::vector<const SolverEntry*> parse_batch(std::string_view list) const;
  std::int64_t length_for(const SolverEntry& e, std::size_t k, const ChatRequest& request) const;

  std::vector<SolverEntry> entries_;
  std::map<std::string, std::size_t, std::less<>> by_text_;
  double shrink_;
  std::int64_t jitter_;
};

/// In-process backend over a MockScript, with a concurrency probe, optional
/// per-request latency and injected failure statuses.
class MockEngine : public ChatBackend {
 public:
  explicit MockEngine(MockScript script, std::string name = "mock");

  ChatResponse send(const ChatRequest& request) override;
  std::string identity() const override { return "mock:" + name_; }

  void set_latency(std::chrono::milliseconds latency) { latency_ = latency; }
  /// The next requests return these statuses (in order) before succeeding.
  void inject_statuses(std::vector<int> statuses);

  std::size_t requests() const { return requests_.load(); }
  std::size_t max_in_flight() const { return max_in_flight_.load(); }

 private:
  MockScript script_;
  std::string name_;
  std::chrono::milliseconds latency_{0};
  std::mutex faults_mutex_;
  std::deque<int> faults_;
  std::atomic<std::size_t> requests_{0};
  std::atomic<std::size_t> in_flight_{0};
  std::atomic<std::size_t> max_in_flight_{0};
};

}  // namespace batchcot
