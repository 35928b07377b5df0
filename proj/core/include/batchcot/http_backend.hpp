#pragma once

#include <chrono>
#include <string>

#include "batchcot/backend.hpp"

namespace batchcot {

/// POSTs to <base_url>/chat/completions. https requires a build with OpenSSL.
class HttpBackend : public ChatBackend {
 public:
  HttpBackend(std::string base_url, std::string api_key, std::chrono::milliseconds timeout);

  ChatResponse send(const ChatRequest& request) override;
  std::string identity() const override { return base_url_; }

 private:
  std::string base_url_;
  std::string origin_;  // scheme://host[:port]
  std::string path_;    // e.g. /v1/chat/completions
  std::string api_key_;
  std::chrono::milliseconds timeout_;
};

}  // namespace batchcot
