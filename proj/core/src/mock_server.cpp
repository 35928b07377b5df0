#include "batchcot/mock_server.hpp"

#include <atomic>
#include <deque>
#include <mutex>
#include <thread>

#include <httplib.h>

#include "batchcot/error.hpp"

namespace batchcot {

struct MockServer::Impl {
  std::shared_ptr<ChatBackend> backend;
  httplib::Server server;
  std::thread thread;
  int port = -1;
  std::mutex faults_mutex;
  std::deque<int> faults;
  std::atomic<std::size_t> served{0};
  std::atomic<std::uint64_t> next_id{1};
};

MockServer::MockServer(std::shared_ptr<ChatBackend> backend) : impl_(std::make_unique<Impl>()) {
  impl_->backend = std::move(backend);
  auto* impl = impl_.get();

  impl->server.Post("/v1/chat/completions", [impl](const httplib::Request& req, httplib::Response& res) {
    ++impl->served;
    {
      std::lock_guard lock(impl->faults_mutex);
      if (!impl->faults.empty()) {
        res.status = impl->faults.front();
        impl->faults.pop_front();
        res.set_content(R"({"error":{"message":"injected failure"}})", "application/json");
        return;
      }
    }
    ChatRequest request;
    try {
      request = ChatRequest::from_wire(Json::parse(req.body));
    } catch (const std::exception& e) {
      res.status = 400;
      res.set_content(Json{{"error", {{"message", e.what()}}}}.dump(), "application/json");
      return;
    }
    ChatResponse reply;
    try {
      reply = impl->backend->send(request);
    } catch (const TransportFailure& e) {
      res.status = 503;
      res.set_content(Json{{"error", {{"message", e.what()}}}}.dump(), "application/json");
      return;
    }
    if (reply.status != 200) {
      res.status = reply.status;
      res.set_content(reply.error_body.empty() ? "{}" : reply.error_body, "application/json");
      return;
    }
    Json body{{"id", "chatcmpl-mock-" + std::to_string(impl->next_id++)},
              {"object", "chat.completion"},
              {"model", request.model},
              {"choices", Json::array({Json{{"index", 0},
                                            {"message", {{"role", "assistant"}, {"content", reply.content}}},
                                            {"finish_reason", "stop"}}})}};
    if (reply.completion_tokens) {
      body["usage"] = Json{{"completion_tokens", *reply.completion_tokens}};
    }
    res.status = 200;
    res.set_content(body.dump(), "application/json");
  });

  impl->server.Get("/v1/models", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"object":"list","data":[{"id":"mock","object":"model"}]})", "application/json");
  });
}

MockServer::~MockServer() { stop(); }

void MockServer::start() {
  if (impl_->thread.joinable()) return;
  impl_->port = impl_->server.bind_to_any_port("127.0.0.1");
  if (impl_->port <= 0) throw std::runtime_error("mock server could not bind a loopback port");
  impl_->thread = std::thread([impl = impl_.get()] { impl->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void MockServer::stop() {
  if (!impl_ || !impl_->thread.joinable()) return;
  impl_->server.stop();
  impl_->thread.join();
}

int MockServer::port() const { return impl_->port; }

std::string MockServer::base_url() const {
  return "http://127.0.0.1:" + std::to_string(impl_->port) + "/v1";
}

void MockServer::inject_statuses(std::vector<int> statuses) {
  std::lock_guard lock(impl_->faults_mutex);
  impl_->faults.insert(impl_->faults.end(), statuses.begin(), statuses.end());
}

std::size_t MockServer::requests_served() const { return impl_->served.load(); }

}  // namespace batchcot
