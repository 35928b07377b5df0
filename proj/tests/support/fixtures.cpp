#include "fixtures.hpp"

#include <atomic>
#include <random>

#include <fmt/format.h>

#include "batchcot/jsonl.hpp"

namespace batchcot::fixture {

namespace fs = std::filesystem;

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  std::random_device rd;
  path_ = fs::temp_directory_path() / fmt::format("batchcot-test-{:08x}-{}", rd(), counter++);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

std::vector<Question> addition_corpus(std::size_t n) {
  std::vector<Question> out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = 3 * i + 7;
    const auto b = 11 * i + 2;
    out.push_back({fmt::format("q{:03}", i + 1), fmt::format("What is {} plus {}?", a, b),
                   std::to_string(a + b), "fixture"});
  }
  return out;
}

std::vector<SolverEntry> truth_table_entries(const std::vector<Question>& questions,
                                             std::int64_t vanilla_tokens) {
  std::vector<SolverEntry> out;
  for (std::size_t i = 0; i < questions.size(); ++i) {
    SolverEntry e;
    e.text = questions[i].text;
    e.answer = questions[i].gold_answer;
    e.vanilla_correct = i % 4 < 2;
    e.batch_correct = i % 4 == 0 || i % 4 == 2;
    e.vanilla_tokens = vanilla_tokens;
    out.push_back(std::move(e));
  }
  return out;
}

LabelCounts designed_counts(const std::vector<SolverEntry>& entries, std::size_t batch_runs) {
  LabelCounts c;
  for (const auto& e : entries) {
    (e.vanilla_correct ? c.a : c.c) += 1;
    (e.batch_correct ? c.b : c.c) += batch_runs;
  }
  return c;
}

MockScript solver_script(const std::vector<SolverEntry>& entries, double shrink) {
  MockScript script;
  script.set_default(ScriptedSolver(entries, shrink));
  return script;
}

void write_mock_dir(const fs::path& dir, const std::vector<SolverEntry>& entries, double shrink) {
  fs::create_directories(dir);
  write_text_file(dir / "solver.json", ScriptedSolver(entries, shrink).to_json().dump(2) + "\n");
}

void write_questions(const fs::path& path, const std::vector<Question>& questions) {
  std::vector<Json> rows;
  for (const auto& q : questions) rows.push_back(to_json(q));
  write_jsonl(path, rows);
}

}  // namespace batchcot::fixture
