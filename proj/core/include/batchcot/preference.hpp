#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "batchcot/chains.hpp"
#include "batchcot/question.hpp"
#include "batchcot/verdict.hpp"

namespace batchcot {

enum class Label { A, B, C };

inline constexpr std::array<Label, 3> kAllLabels = {Label::A, Label::B, Label::C};

char to_char(Label label);
Label label_from_string(std::string_view name);
inline std::size_t index_of(Label label) { return static_cast<std::size_t>(label); }

inline constexpr std::array<std::string_view, 3> kOptionTexts = {
    "The reasoning process is correct, but I think there is a simpler and quicker way to approach it.",
    "The reasoning process is correct, and I believe the thinking is thorough and concise.",
    "The reasoning process is wrong.",
};

inline constexpr std::string_view kJudgeTemplateVersion = "judge-v1";

/// Vanilla+Correct -> A, Batch+Correct -> B, anything not correct -> C.
Label label_sample(ChainOrigin::Kind origin, Verdict verdict);

struct PreferenceSample {
  std::string question_id;
  std::string question_text;
  std::string cot_text;
  std::array<std::string, 3> options{std::string(kOptionTexts[0]), std::string(kOptionTexts[1]),
                                     std::string(kOptionTexts[2])};
  Label gold_label = Label::C;
  ChainOrigin origin;
  Verdict verdict = Verdict::Unparseable;
  std::int64_t token_count = 0;

  friend bool operator==(const PreferenceSample&, const PreferenceSample&) = default;
};

Json to_json(const PreferenceSample& sample);
/// Rejects records whose options differ from the canonical sentences or
/// whose gold label disagrees with label_sample(origin, verdict).
PreferenceSample preference_from_json(const Json& j);

/// Question, chain and the three options as one prompt for a judge model.
std::string render_judge_prompt(const PreferenceSample& sample);

enum class DatasetMode {
  PerChain,  // every graded chain is a sample
  Paired,    // only questions with both a vanilla and a batch chain; kept adjacent
};

std::string to_string(DatasetMode mode);

struct DatasetOptions {
  std::uint64_t seed = 0;
  DatasetMode mode = DatasetMode::PerChain;
  AnswerKind answer_kind = AnswerKind::Numeric;
};

struct LabelCounts {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t c = 0;

  std::size_t& operator[](Label label) { return label == Label::A ? a : label == Label::B ? b : c; }
  std::size_t total() const { return a + b + c; }
  friend bool operator==(const LabelCounts&, const LabelCounts&) = default;
};

struct PreferenceDataset {
  std::vector<PreferenceSample> samples;
  LabelCounts counts;
  std::size_t unparseable = 0;
  std::size_t unpaired_excluded = 0;  // chains dropped in Paired mode
  std::uint64_t seed = 0;
  DatasetMode mode = DatasetMode::PerChain;
};

/// Grades every chain against its question, labels it, orders
/// deterministically by (question id, origin) and shuffles with the seed.
/// Throws InvalidInput listing chain question ids with no matching question.
PreferenceDataset build_dataset(std::vector<ReasoningChain> chains,
                                const std::vector<Question>& questions,
                                const DatasetOptions& options = {});

PreferenceDataset build_dataset(const std::vector<ReasoningChain>& vanilla_chains,
                                const std::vector<ReasoningChain>& batch_chains,
                                const std::vector<Question>& questions,
                                const DatasetOptions& options = {});

/// seed, mode, per-label counts, exclusions and template version.
Json dataset_summary(const PreferenceDataset& dataset);

}  // namespace batchcot
