#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "batchcot/backend.hpp"
#include "batchcot/completion.hpp"
#include "batchcot/prompt.hpp"

namespace batchcot {

struct Attempt {
  std::size_t number = 0;  // 1-based
  int status = 0;          // 0 when the transport failed before a status
  std::string message;
  std::chrono::milliseconds backoff{0};  // delay before the next attempt
};

/// Retries exhausted on transient failures (429, 5xx, transport).
class TransportError : public std::runtime_error {
 public:
  TransportError(const std::string& what, std::vector<Attempt> attempts)
      : std::runtime_error(what), attempts_(std::move(attempts)) {}
  const std::vector<Attempt>& attempts() const noexcept { return attempts_; }

 private:
  std::vector<Attempt> attempts_;
};

/// Non-retryable 4xx or a malformed success body.
class RequestError : public std::runtime_error {
 public:
  RequestError(const std::string& what, int status, std::vector<Attempt> attempts)
      : std::runtime_error(what), status_(status), attempts_(std::move(attempts)) {}
  int status() const noexcept { return status_; }
  const std::vector<Attempt>& attempts() const noexcept { return attempts_; }

 private:
  int status_;
  std::vector<Attempt> attempts_;
};

struct CompletionJob {
  PromptEnvelope envelope;
  std::optional<std::uint64_t> seed;  // overrides the endpoint seed
};

struct CompletionOutcome {
  std::optional<CompletionRecord> record;
  std::string error;
  bool transport_failure = false;
  std::vector<Attempt> attempts;

  bool ok() const { return record.has_value(); }
};

/// Issues chat completions with retry/backoff and bounded concurrency.
/// Shareable across threads.
class InferenceClient {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  InferenceClient(EndpointConfig cfg, std::shared_ptr<ChatBackend> backend, Sleeper sleeper = {});

  const EndpointConfig& config() const { return cfg_; }
  std::string identity() const { return backend_->identity(); }

  /// One request; retries 429/5xx/transport failures with exponential
  /// backoff (backoff_base * 2^n) up to max_retries extra attempts.
  /// Throws TransportError or RequestError.
  CompletionRecord complete(const PromptEnvelope& envelope,
                            std::optional<std::uint64_t> seed = std::nullopt) const;

  /// Runs jobs with at most max_concurrency in flight; outcomes are returned
  /// in job order regardless of completion order. Failures never throw.
  std::vector<CompletionOutcome> complete_all(const std::vector<CompletionJob>& jobs) const;

 private:
  EndpointConfig cfg_;
  std::shared_ptr<ChatBackend> backend_;
  Sleeper sleeper_;
};

}  // namespace batchcot
