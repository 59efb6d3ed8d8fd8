#pragma once

#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "mtkit/gateway/backend.hpp"
#include "mtkit/gateway/service.hpp"

namespace httplib {
class Server;
}

namespace mtkit::gateway {

// JSON wire format.
TranslationRequest request_from_json(std::string_view body);
std::string to_json(const TranslationResponse& response);
std::string to_json(const GatewayError& error, const std::optional<LanguagePair>& pair = {});
std::string to_json(const WorkerDescriptor& worker, Clock::time_point now);

// Listens on a background thread. Port 0 picks a free port.
class HttpServer {
 public:
  virtual ~HttpServer();
  // Throws IoError when the address cannot be bound.
  int start(const std::string& host, int port);
  void stop();
  int port() const { return port_; }
  // Blocks until stop() is called from another thread or a signal handler.
  void wait();

 protected:
  HttpServer();
  httplib::Server& server() { return *server_; }

 private:
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
};

// POST /translate, GET /health, POST /workers/register,
// POST /workers/heartbeat; static files from `static_dir` under "/" when set.
class GatewayServer : public HttpServer {
 public:
  GatewayServer(TranslationService& service, std::optional<std::filesystem::path> static_dir = {});
  ~GatewayServer() override { stop(); }

 private:
  TranslationService& service_;
};

// POST /work {lines, pair} -> {lines}.
class WorkerServer : public HttpServer {
 public:
  WorkerServer(std::shared_ptr<EngineBackend> backend, LanguagePair pair);
  ~WorkerServer() override { stop(); }

 private:
  std::shared_ptr<EngineBackend> backend_;
  LanguagePair pair_;
};

// Registers a worker with a gateway, then heartbeats until destroyed.
class WorkerAgent {
 public:
  WorkerAgent(std::string gateway_url, LanguagePair pair, std::string endpoint,
              std::chrono::milliseconds interval = std::chrono::seconds(5));
  ~WorkerAgent();
  // Throws IoError / GatewayError when registration fails.
  void start();
  void stop();
  const std::string& worker_id() const { return worker_id_; }

 private:
  std::string gateway_url_;
  LanguagePair pair_;
  std::string endpoint_;
  std::chrono::milliseconds interval_;
  std::string worker_id_;
  bool running_ = false;
  std::mutex mutex_;
  std::condition_variable wake_;
  std::thread thread_;
};

}  // namespace mtkit::gateway
