#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "batchcot/mock_engine.hpp"
#include "batchcot/preference.hpp"
#include "batchcot/question.hpp"

namespace batchcot::fixture {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

/// n addition questions "q001".. with integer gold answers.
std::vector<Question> addition_corpus(std::size_t n);

/// Truth table cycling over question index i % 4:
///   0: vanilla right, batch right   1: vanilla right, batch wrong
///   2: vanilla wrong, batch right   3: vanilla wrong, batch wrong
std::vector<SolverEntry> truth_table_entries(const std::vector<Question>& questions,
                                             std::int64_t vanilla_tokens = 400);

/// Per-chain label counts the truth table implies when every question gets
/// one vanilla chain and one chain per batch size in `batch_sizes` (k >= 2).
LabelCounts designed_counts(const std::vector<SolverEntry>& entries, std::size_t batch_runs);

MockScript solver_script(const std::vector<SolverEntry>& entries, double shrink = 0.7);

/// Writes solver.json (the directory form --mock reads).
void write_mock_dir(const std::filesystem::path& dir, const std::vector<SolverEntry>& entries,
                    double shrink = 0.7);

void write_questions(const std::filesystem::path& path, const std::vector<Question>& questions);

}  // namespace batchcot::fixture
