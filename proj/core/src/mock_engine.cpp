#include "batchcot/mock_engine.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include <fmt/format.h>

#include "batchcot/error.hpp"
#include "batchcot/fingerprint.hpp"
#include "batchcot/numeric.hpp"
#include "batchcot/prompt.hpp"
#include "batchcot/rng.hpp"

namespace batchcot {

void MockScript::add(std::string_view prompt_text, ScriptedResponse response) {
  add_fingerprint(prompt_fingerprint(prompt_text), std::move(response));
}

void MockScript::add_fingerprint(std::string fingerprint, ScriptedResponse response) {
  scripted_.insert_or_assign(std::move(fingerprint), std::move(response));
}

ScriptedResponse MockScript::respond(const ChatRequest& request) const {
  if (auto it = scripted_.find(prompt_fingerprint(request.prompt)); it != scripted_.end()) {
    return it->second;
  }
  if (default_) return default_(request);
  return {"No scripted response for this prompt.", std::nullopt};
}

MockScript MockScript::load_directory(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw InvalidInput("mock script directory not found: " + dir.string());
  MockScript script;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    if (path.extension() != ".txt") continue;
    ScriptedResponse response{read_text_file(path), std::nullopt};
    auto tokens_path = path;
    tokens_path.replace_extension(".tokens");
    if (fs::exists(tokens_path)) response.completion_tokens = std::stoll(read_text_file(tokens_path));
    script.add_fingerprint(path.stem().string(), std::move(response));
  }
  if (const auto solver_path = dir / "solver.json"; fs::exists(solver_path)) {
    auto solver = std::make_shared<ScriptedSolver>(
        ScriptedSolver::from_json(Json::parse(read_text_file(solver_path))));
    script.set_default([solver](const ChatRequest& r) { return (*solver)(r); });
  }
  return script;
}

void MockScript::save_directory(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  for (const auto& [fingerprint, response] : scripted_) {
    write_text_file(dir / (fingerprint + ".txt"), response.text);
    if (response.completion_tokens) {
      write_text_file(dir / (fingerprint + ".tokens"), std::to_string(*response.completion_tokens));
    }
  }
}

namespace {

constexpr std::string_view kQuestionListLead = "Below is the list of questions: \n";

std::string filler(std::int64_t words, std::uint64_t salt) {
  static constexpr std::string_view kVocabulary[] = {
      "we", "compute", "the", "value", "carefully", "and", "then", "check", "each", "step",
      "so", "it", "follows", "that", "this", "term", "equals", "next"};
  constexpr std::size_t kSize = std::size(kVocabulary);
  std::string out;
  for (std::int64_t i = 0; i < words; ++i) {
    if (i > 0) out.push_back(' ');
    out += kVocabulary[(static_cast<std::size_t>(i) + salt) % kSize];
  }
  return out;
}

std::string wrong_answer(const std::string& answer) {
  if (const auto n = normalize_numeric(answer); n && n->kind() == CanonicalNumber::Kind::Integer) {
    return BigInt(n->numerator() + 1).str();
  }
  return answer + "1";
}

}  // namespace

ScriptedSolver::ScriptedSolver(std::vector<SolverEntry> entries, double shrink, std::int64_t jitter)
    : entries_(std::move(entries)), shrink_(shrink), jitter_(jitter) {
  for (std::size_t i = 0; i < entries_.size(); ++i) by_text_.emplace(entries_[i].text, i);
}

const SolverEntry* ScriptedSolver::lookup(std::string_view text) const {
  const auto it = by_text_.find(text);
  return it == by_text_.end() ? nullptr : &entries_[it->second];
}

std::vector<const SolverEntry*> ScriptedSolver::parse_batch(std::string_view list) const {
  // "1. <text>\n2. <text>..." where texts may themselves contain newlines;
  // resolve each item against the known question texts.
  std::vector<const SolverEntry*> found;
  std::size_t pos = 0;
  for (std::size_t i = 1; pos < list.size(); ++i) {
    const std::string lead = fmt::format("{}. ", i);
    if (list.substr(pos, lead.size()) != lead) return {};
    pos += lead.size();
    const std::string next = fmt::format("\n{}. ", i + 1);
    const SolverEntry* match = nullptr;
    std::size_t match_len = 0;
    for (const auto& e : entries_) {
      if (list.substr(pos, e.text.size()) != e.text) continue;
      const std::size_t after = pos + e.text.size();
      const bool boundary = after == list.size() || list.substr(after, next.size()) == next;
      if (boundary && e.text.size() >= match_len) {
        match = &e;
        match_len = e.text.size();
      }
    }
    if (!match) return {};
    found.push_back(match);
    pos += match_len;
    if (pos < list.size()) ++pos;  // newline
  }
  return found;
}

std::int64_t ScriptedSolver::length_for(const SolverEntry& e, std::size_t k,
                                        const ChatRequest& request) const {
  const double scaled = static_cast<double>(e.vanilla_tokens) * std::pow(shrink_, static_cast<double>(k - 1));
  std::int64_t length = std::max<std::int64_t>(1, std::llround(scaled));
  if (jitter_ > 0) {
    const auto span = static_cast<std::uint64_t>(2 * jitter_ + 1);
    const auto draw = mix_seed(request.seed.value_or(0), fnv1a64(e.text)) % span;
    length = std::max<std::int64_t>(1, length + static_cast<std::int64_t>(draw) - jitter_);
  }
  return length;
}

ScriptedResponse ScriptedSolver::operator()(const ChatRequest& request) const {
  const std::string_view prompt = request.prompt;
  std::string text;
  if (prompt.starts_with(kBatchHeader)) {
    const auto lead = prompt.find(kQuestionListLead);
    const auto items = lead == std::string_view::npos
                           ? std::vector<const SolverEntry*>{}
                           : parse_batch(prompt.substr(lead + kQuestionListLead.size()));
    if (items.empty()) {
      text = "I could not read the list of problems.";
    } else {
      const std::size_t k = items.size();
      text = "[Solution Process]\n";
      for (std::size_t i = 0; i < k; ++i) {
        text += fmt::format("Problem {}: {}\n\n", i + 1, filler(length_for(*items[i], k, request), i));
      }
      text += "[Final Answer]\n";
      for (std::size_t i = 0; i < k; ++i) {
        const auto& e = *items[i];
        text += fmt::format("{}. \\boxed{{{}}}\n", i + 1, e.batch_correct ? e.answer : wrong_answer(e.answer));
      }
    }
  } else {
    const std::string suffix = "\n\n" + std::string(kStepByStepInstruction);
    const SolverEntry* e = prompt.ends_with(suffix)
                               ? lookup(prompt.substr(0, prompt.size() - suffix.size()))
                               : nullptr;
    if (!e) {
      text = "I am not sure how to solve this problem.";
    } else {
      text = fmt::format("<think>\n{}\n</think>\nThe final answer is \\boxed{{{}}}.",
                         filler(length_for(*e, 1, request), 0),
                         e->vanilla_correct ? e->answer : wrong_answer(e->answer));
    }
  }
  return {text, count_tokens(text, TokenScheme::Whitespace)};
}

ScriptedSolver ScriptedSolver::from_json(const Json& j) {
  std::vector<SolverEntry> entries;
  for (const auto& item : j.at("entries")) {
    SolverEntry e;
    e.text = item.at("text").get<std::string>();
    e.answer = item.at("answer").get<std::string>();
    e.vanilla_correct = item.value("vanilla_correct", true);
    e.batch_correct = item.value("batch_correct", true);
    e.vanilla_tokens = item.value("vanilla_tokens", std::int64_t{400});
    entries.push_back(std::move(e));
  }
  return ScriptedSolver(std::move(entries), j.value("shrink", 0.7), j.value("jitter", std::int64_t{0}));
}

Json ScriptedSolver::to_json() const {
  Json entries = Json::array();
  for (const auto& e : entries_) {
    entries.push_back(Json{{"text", e.text},
                           {"answer", e.answer},
                           {"vanilla_correct", e.vanilla_correct},
                           {"batch_correct", e.batch_correct},
                           {"vanilla_tokens", e.vanilla_tokens}});
  }
  return Json{{"shrink", shrink_}, {"jitter", jitter_}, {"entries", entries}};
}

MockEngine::MockEngine(MockScript script, std::string name)
    : script_(std::move(script)), name_(std::move(name)) {}

void MockEngine::inject_statuses(std::vector<int> statuses) {
  std::lock_guard lock(faults_mutex_);
  faults_.insert(faults_.end(), statuses.begin(), statuses.end());
}

ChatResponse MockEngine::send(const ChatRequest& request) {
  ++requests_;
  const std::size_t now = ++in_flight_;
  std::size_t seen = max_in_flight_.load();
  while (now > seen && !max_in_flight_.compare_exchange_weak(seen, now)) {
  }
  struct Leave {
    std::atomic<std::size_t>& counter;
    ~Leave() { --counter; }
  } leave{in_flight_};

  if (latency_.count() > 0) std::this_thread::sleep_for(latency_);
  {
    std::lock_guard lock(faults_mutex_);
    if (!faults_.empty()) {
      const int status = faults_.front();
      faults_.pop_front();
      if (status == 0) throw TransportFailure("injected transport failure");
      return {status, {}, std::nullopt, fmt::format("{{\"error\":\"injected status {}\"}}", status)};
    }
  }
  auto scripted = script_.respond(request);
  return {200, std::move(scripted.text), scripted.completion_tokens, {}};
}

}  // namespace batchcot
