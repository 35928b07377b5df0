#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "batchcot/jsonl.hpp"
#include "batchcot/prompt.hpp"
#include "batchcot/tokens.hpp"

namespace batchcot {

struct SamplingParams {
  double temperature = 0.6;
  std::int64_t max_tokens = 32768;
  std::optional<std::uint64_t> seed;

  friend bool operator==(const SamplingParams&, const SamplingParams&) = default;
};

/// One model response together with everything needed to reproduce it.
struct CompletionRecord {
  PromptEnvelope envelope;
  std::string raw_text;
  std::optional<std::int64_t> reported_tokens;
  std::int64_t counted_tokens = 0;
  TokenScheme counted_scheme = TokenScheme::Whitespace;
  SamplingParams sampling;
  std::string endpoint;
  std::string model;
  std::size_t attempts = 1;

  /// Server usage when reported, otherwise the fallback count.
  std::int64_t tokens() const { return reported_tokens.value_or(counted_tokens); }
  /// "reported" or the fallback scheme name.
  std::string token_source() const {
    return reported_tokens ? "reported" : to_string(counted_scheme);
  }

  friend bool operator==(const CompletionRecord&, const CompletionRecord&) = default;
};

Json to_json(const CompletionRecord& record);
CompletionRecord completion_from_json(const Json& j);

}  // namespace batchcot
