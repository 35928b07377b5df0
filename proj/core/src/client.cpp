#include "batchcot/client.hpp"

#include <atomic>
#include <thread>

#include <fmt/format.h>

#include "batchcot/error.hpp"

namespace batchcot {

namespace {

bool retryable(int status) { return status == 429 || status >= 500; }

}  // namespace

InferenceClient::InferenceClient(EndpointConfig cfg, std::shared_ptr<ChatBackend> backend, Sleeper sleeper)
    : cfg_(std::move(cfg)), backend_(std::move(backend)), sleeper_(std::move(sleeper)) {
  cfg_.validate();
  if (!backend_) throw InvalidInput("inference client needs a backend");
  if (!sleeper_) sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

CompletionRecord InferenceClient::complete(const PromptEnvelope& envelope,
                                           std::optional<std::uint64_t> seed) const {
  ChatRequest request;
  request.model = cfg_.model;
  request.prompt = envelope.text;
  request.temperature = cfg_.temperature;
  request.max_tokens = cfg_.max_tokens;
  request.seed = seed ? seed : cfg_.seed;

  std::vector<Attempt> attempts;
  const std::size_t max_attempts = cfg_.max_retries + 1;
  for (std::size_t n = 1; n <= max_attempts; ++n) {
    Attempt attempt;
    attempt.number = n;
    ChatResponse response;
    try {
      response = backend_->send(request);
      attempt.status = response.status;
    } catch (const TransportFailure& e) {
      attempt.message = e.what();
    } catch (const std::exception& e) {
      attempt.message = e.what();
      attempts.push_back(attempt);
      throw RequestError(fmt::format("malformed response: {}", e.what()), 200, std::move(attempts));
    }

    if (attempt.status == 200) {
      attempts.push_back(attempt);
      CompletionRecord record;
      record.envelope = envelope;
      record.raw_text = std::move(response.content);
      record.reported_tokens = response.completion_tokens;
      record.counted_scheme = cfg_.token_scheme;
      record.counted_tokens = count_tokens(record.raw_text, cfg_.token_scheme);
      record.sampling = {request.temperature, request.max_tokens, request.seed};
      record.endpoint = backend_->identity();
      record.model = cfg_.model;
      record.attempts = attempts.size();
      return record;
    }
    if (attempt.status != 0) {
      attempt.message = response.error_body.substr(0, 200);
      if (!retryable(attempt.status)) {
        attempts.push_back(attempt);
        throw RequestError(fmt::format("request rejected with HTTP {}", attempt.status), attempt.status,
                           std::move(attempts));
      }
    }
    if (n < max_attempts) attempt.backoff = cfg_.backoff_base * (1LL << std::min<std::size_t>(n - 1, 20));
    attempts.push_back(attempt);
    if (n < max_attempts) sleeper_(attempt.backoff);
  }
  const auto& last = attempts.back();
  throw TransportError(fmt::format("gave up after {} attempt(s); last: {}", attempts.size(),
                                   last.status ? fmt::format("HTTP {}", last.status) : last.message),
                       std::move(attempts));
}

std::vector<CompletionOutcome> InferenceClient::complete_all(const std::vector<CompletionJob>& jobs) const {
  std::vector<CompletionOutcome> outcomes(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      auto& out = outcomes[i];
      try {
        out.record = complete(jobs[i].envelope, jobs[i].seed);
      } catch (const TransportError& e) {
        out.error = e.what();
        out.transport_failure = true;
        out.attempts = e.attempts();
      } catch (const RequestError& e) {
        out.error = e.what();
        out.attempts = e.attempts();
      }
    }
  };
  {
    const std::size_t workers = std::min(cfg_.max_concurrency, jobs.size());
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  return outcomes;
}

}  // namespace batchcot
