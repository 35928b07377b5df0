#include "batchcot/backend.hpp"

#include "batchcot/error.hpp"

namespace batchcot {

void EndpointConfig::validate() const {
  if (max_concurrency < 1) throw InvalidInput("max concurrency must be >= 1");
  if (!(temperature >= 0.0)) throw InvalidInput("temperature must be >= 0");
  if (max_tokens < 1) throw InvalidInput("max_tokens must be >= 1");
  if (base_url.empty()) throw InvalidInput("base URL is empty");
}

Json to_json(const EndpointConfig& cfg) {
  return Json{{"base_url", cfg.base_url},
              {"model", cfg.model},
              {"timeout_ms", cfg.timeout.count()},
              {"max_retries", cfg.max_retries},
              {"max_concurrency", cfg.max_concurrency},
              {"temperature", cfg.temperature},
              {"max_tokens", cfg.max_tokens},
              {"seed", cfg.seed ? Json(*cfg.seed) : Json(nullptr)},
              {"backoff_base_ms", cfg.backoff_base.count()},
              {"token_scheme", to_string(cfg.token_scheme)}};
}

Json ChatRequest::to_wire() const {
  Json body{{"model", model},
            {"messages", Json::array({Json{{"role", "user"}, {"content", prompt}}})},
            {"temperature", temperature},
            {"max_tokens", max_tokens}};
  if (seed) body["seed"] = *seed;
  return body;
}

ChatRequest ChatRequest::from_wire(const Json& body) {
  ChatRequest r;
  r.model = body.value("model", std::string{});
  const auto& messages = body.at("messages");
  if (!messages.is_array() || messages.empty()) throw InvalidInput("messages must be a non-empty array");
  // The last user message carries the prompt.
  for (const auto& m : messages) {
    if (m.value("role", std::string{}) == "user") r.prompt = m.at("content").get<std::string>();
  }
  r.temperature = body.value("temperature", 1.0);
  r.max_tokens = body.value("max_tokens", std::int64_t{32768});
  if (body.contains("seed") && !body["seed"].is_null()) r.seed = body["seed"].get<std::uint64_t>();
  return r;
}

ChatResponse parse_chat_response(int status, const std::string& body) {
  ChatResponse response;
  response.status = status;
  if (status != 200) {
    response.error_body = body;
    return response;
  }
  const Json j = Json::parse(body);  // throws on malformed bodies
  const auto& choices = j.at("choices");
  if (!choices.is_array() || choices.empty()) throw InvalidInput("response has no choices");
  const auto& content = choices.at(0).at("message").at("content");
  response.content = content.is_null() ? std::string{} : content.get<std::string>();
  if (j.contains("usage") && j["usage"].is_object()) {
    const auto& usage = j["usage"];
    if (usage.contains("completion_tokens") && usage["completion_tokens"].is_number_integer()) {
      response.completion_tokens = usage["completion_tokens"].get<std::int64_t>();
    }
  }
  return response;
}

}  // namespace batchcot
