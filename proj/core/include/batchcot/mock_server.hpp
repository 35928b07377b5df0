#pragma once

#include <memory>
#include <string>
#include <vector>

#include "batchcot/backend.hpp"

namespace batchcot {

/// Loopback HTTP server speaking the chat-completions wire format on
/// 127.0.0.1, delegating generation to a backend (normally a MockEngine).
/// Used to exercise the real transport path in tests.
class MockServer {
 public:
  explicit MockServer(std::shared_ptr<ChatBackend> backend);
  ~MockServer();
  MockServer(const MockServer&) = delete;
  MockServer& operator=(const MockServer&) = delete;

  /// Binds an ephemeral port and starts serving in a background thread.
  void start();
  void stop();

  int port() const;
  /// "http://127.0.0.1:<port>/v1"
  std::string base_url() const;
  /// Requests answered with these statuses (in order) before delegating.
  void inject_statuses(std::vector<int> statuses);
  std::size_t requests_served() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace batchcot
