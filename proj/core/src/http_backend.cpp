#include "batchcot/http_backend.hpp"

#include <httplib.h>

#include "batchcot/error.hpp"

namespace batchcot {

HttpBackend::HttpBackend(std::string base_url, std::string api_key, std::chrono::milliseconds timeout)
    : base_url_(std::move(base_url)), api_key_(std::move(api_key)), timeout_(timeout) {
  while (!base_url_.empty() && base_url_.back() == '/') base_url_.pop_back();
  const auto scheme_end = base_url_.find("://");
  if (scheme_end == std::string::npos) throw InvalidInput("base URL needs a scheme: " + base_url_);
  const auto path_begin = base_url_.find('/', scheme_end + 3);
  origin_ = base_url_.substr(0, path_begin);
  path_ = (path_begin == std::string::npos ? std::string{} : base_url_.substr(path_begin)) +
          "/chat/completions";
}

ChatResponse HttpBackend::send(const ChatRequest& request) {
  httplib::Client client(origin_);
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(timeout_);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(timeout_ - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_write_timeout(seconds.count(), micros.count());
  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

  const auto result = client.Post(path_, headers, request.to_wire().dump(), "application/json");
  if (!result) throw TransportFailure(httplib::to_string(result.error()));
  return parse_chat_response(result->status, result->body);
}

}  // namespace batchcot
