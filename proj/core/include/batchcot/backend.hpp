#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "batchcot/jsonl.hpp"
#include "batchcot/tokens.hpp"

namespace batchcot {

/// Connection to an OpenAI-compatible chat-completions service.
struct EndpointConfig {
  std::string base_url = "http://127.0.0.1:8000/v1";
  std::string model = "default";
  std::string api_key;  // only ever read from the environment
  std::chrono::milliseconds timeout{600'000};
  std::size_t max_retries = 3;
  std::size_t max_concurrency = 4;
  double temperature = 0.6;
  std::int64_t max_tokens = 32768;
  std::optional<std::uint64_t> seed;
  std::chrono::milliseconds backoff_base{500};
  /// Used when the server does not report usage.
  TokenScheme token_scheme = TokenScheme::Whitespace;

  void validate() const;
};

/// Config snapshot without the API key.
Json to_json(const EndpointConfig& cfg);

/// One chat-completion request with a single user message.
struct ChatRequest {
  std::string model;
  std::string prompt;
  double temperature = 0.6;
  std::int64_t max_tokens = 32768;
  std::optional<std::uint64_t> seed;

  /// OpenAI wire body: model, messages, temperature, max_tokens, seed.
  Json to_wire() const;
  static ChatRequest from_wire(const Json& body);
};

struct ChatResponse {
  int status = 200;
  std::string content;
  std::optional<std::int64_t> completion_tokens;
  std::string error_body;
};

/// Raised by a backend when no HTTP status was obtained (connect failure,
/// timeout, reset). Always retryable.
class TransportFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  /// Must be safe to call concurrently.
  virtual ChatResponse send(const ChatRequest& request) = 0;
  /// Endpoint identity recorded in every completion ("http://...", "mock:...").
  virtual std::string identity() const = 0;
};

/// Parses an OpenAI chat-completions response body.
ChatResponse parse_chat_response(int status, const std::string& body);

}  // namespace batchcot
