#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "batchcot/completion.hpp"
#include "batchcot/tokens.hpp"
#include "batchcot/verdict.hpp"

namespace batchcot {

struct ChainOrigin {
  enum class Kind { Vanilla, Batch };
  Kind kind = Kind::Vanilla;
  std::size_t size = 1;
  std::size_t position = 1;  // 1-based within the batch

  static ChainOrigin vanilla() { return {Kind::Vanilla, 1, 1}; }
  static ChainOrigin batch(std::size_t size, std::size_t position) {
    return {Kind::Batch, size, position};
  }
  bool is_batch() const { return kind == Kind::Batch; }

  friend auto operator<=>(const ChainOrigin&, const ChainOrigin&) = default;
};

std::string to_string(ChainOrigin::Kind kind);

/// A chain of thought attributed to one question. `begin`/`end` locate
/// `text` inside the source completion's raw text.
struct ReasoningChain {
  std::string question_id;
  std::string text;
  ChainOrigin origin;
  std::optional<std::string> predicted_answer;
  std::size_t begin = 0;
  std::size_t end = 0;
  std::int64_t token_count = 0;
  TokenScheme token_scheme = TokenScheme::Whitespace;
  std::optional<Verdict> verdict;

  friend bool operator==(const ReasoningChain&, const ReasoningChain&) = default;
};

Json to_json(const ReasoningChain& chain);
ReasoningChain chain_from_json(const Json& j);

struct FinalAnswerEntry {
  std::size_t position = 0;
  std::string answer;

  friend bool operator==(const FinalAnswerEntry&, const FinalAnswerEntry&) = default;
};

struct FinalAnswers {
  std::vector<FinalAnswerEntry> entries;  // positions strictly increasing, in 1..k
  bool fallback = false;                  // no marker; last k boxed groups used
};

struct MarkerSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

/// Last "[Final Answer]"-style marker. Matching ignores case, inner
/// whitespace, markdown emphasis and a trailing colon; the bracketed form may
/// appear anywhere, the bare form ("Final Answer:") only as its own line.
std::optional<MarkerSpan> find_final_answer_marker(std::string_view text);
std::optional<MarkerSpan> find_solution_marker(std::string_view text, std::size_t before);

FinalAnswers parse_final_answers(std::string_view text, std::size_t k);
/// Requires a batch envelope.
FinalAnswers parse_final_answers(const CompletionRecord& record);

class UnsplittableError : public std::runtime_error {
 public:
  UnsplittableError(const std::string& what, std::vector<std::size_t> headings_found)
      : std::runtime_error(what), headings_found_(std::move(headings_found)) {}

  const std::vector<std::size_t>& headings_found() const noexcept { return headings_found_; }

 private:
  std::vector<std::size_t> headings_found_;
};

struct BatchSplit {
  std::size_t region_begin = 0;
  std::size_t region_end = 0;
  bool answers_fallback = false;
  std::vector<ReasoningChain> chains;
};

/// Partitions the solution region (after an optional "[Solution Process]"
/// marker, up to the last final-answer marker) into k contiguous segments at
/// per-problem headings ("1.", "Problem 2:", "**Question 3)**", ...). The
/// headings must read exactly 1..k; headings carrying a Problem/Question
/// prefix take precedence over bare numbers. Throws UnsplittableError
/// otherwise.
BatchSplit split_batch(const CompletionRecord& record, TokenScheme scheme = TokenScheme::Whitespace);

std::vector<ReasoningChain> split_batch_chains(const CompletionRecord& record,
                                               TokenScheme scheme = TokenScheme::Whitespace);

/// The whole response as one chain; predicted answer is the last boxed group.
ReasoningChain vanilla_chain(const CompletionRecord& record,
                             TokenScheme scheme = TokenScheme::Whitespace);

}  // namespace batchcot
