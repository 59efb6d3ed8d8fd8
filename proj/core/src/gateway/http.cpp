#include "mtkit/gateway/http.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace mtkit::gateway {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr std::size_t kPayloadLimit = 1024 * 1024;
constexpr const char* kJson = "application/json";

std::string get_string(const json& j, const char* key, bool required) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) {
    if (required) {
      throw GatewayError(ErrorCode::invalid_request, std::string("missing field '") + key + "'",
                         "validate");
    }
    return {};
  }
  if (!it->is_string()) {
    throw GatewayError(ErrorCode::invalid_request, std::string("field '") + key + "' must be a string",
                       "validate");
  }
  return it->get<std::string>();
}

json parse_body(const std::string& body) {
  try {
    json j = json::parse(body);
    if (!j.is_object()) throw GatewayError(ErrorCode::invalid_request, "body must be a JSON object", "validate");
    return j;
  } catch (const json::exception& e) {
    throw GatewayError(ErrorCode::invalid_request, std::string("malformed JSON: ") + e.what(),
                       "validate");
  }
}

LanguagePair parse_pair_fields(const std::string& source, const std::string& target) {
  auto s = parse_lang(source);
  auto t = parse_lang(target);
  if (!s || !t) {
    throw GatewayError(ErrorCode::unsupported_pair,
                       "unsupported language pair " + source + "-" + target +
                           "; supported pairs: " + supported_pairs_text(),
                       "validate");
  }
  LanguagePair pair{*s, *t};
  require_supported(pair);
  return pair;
}

LanguagePair pair_from_body(const json& j) {
  std::string pair = get_string(j, "pair", false);
  if (!pair.empty()) {
    auto dash = pair.find('-');
    if (dash == std::string::npos) {
      throw GatewayError(ErrorCode::unsupported_pair,
                         "unsupported language pair " + pair + "; supported pairs: " +
                             supported_pairs_text(),
                         "validate");
    }
    return parse_pair_fields(pair.substr(0, dash), pair.substr(dash + 1));
  }
  return parse_pair_fields(get_string(j, "source_lang", true), get_string(j, "target_lang", true));
}

void reply(httplib::Response& res, int status, const std::string& body) {
  res.status = status;
  res.set_content(body, kJson);
}

void reply_error(httplib::Response& res, const GatewayError& e,
                 const std::optional<LanguagePair>& pair = {}) {
  reply(res, http_status(e.code()), to_json(e, pair));
}

}  // namespace

TranslationRequest request_from_json(std::string_view body) {
  json j = parse_body(std::string(body));
  TranslationRequest request;
  request.request_id = get_string(j, "request_id", false);
  request.text = get_string(j, "text", true);
  try {
    request.pair = parse_pair_fields(get_string(j, "source_lang", true),
                                     get_string(j, "target_lang", true));
  } catch (GatewayError& e) {
    e.set_request_id(request.request_id);
    throw;
  }
  return request;
}

std::string to_json(const TranslationResponse& r) {
  ordered_json j;
  j["request_id"] = r.request_id;
  j["translated_text"] = r.translated_text;
  j["engine_id"] = r.engine_id;
  j["timings"] = {{"pipeline_ms", r.timings.pipeline_ms},
                  {"backend_ms", r.timings.backend_ms},
                  {"total_ms", r.timings.total_ms}};
  return j.dump();
}

std::string to_json(const GatewayError& e, const std::optional<LanguagePair>& pair) {
  ordered_json j;
  j["error"] = to_string(e.code());
  j["message"] = e.what();
  if (!e.stage().empty()) j["stage"] = e.stage();
  if (!e.request_id().empty()) j["request_id"] = e.request_id();
  if (pair) j["pair"] = to_string(*pair);
  if (e.code() == ErrorCode::unsupported_pair) {
    std::vector<std::string> pairs;
    for (const auto& p : supported_pairs()) pairs.push_back(to_string(p));
    j["supported_pairs"] = pairs;
  }
  return j.dump();
}

std::string to_json(const WorkerDescriptor& w, Clock::time_point now) {
  ordered_json j;
  j["worker_id"] = w.id;
  j["pair"] = to_string(w.pair);
  j["endpoint"] = w.endpoint;
  j["status"] = to_string(w.status);
  j["in_flight"] = w.in_flight;
  j["last_heartbeat_ms_ago"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(now - w.last_heartbeat).count();
  return j.dump();
}

HttpServer::HttpServer() : server_(std::make_unique<httplib::Server>()) {
  server_->set_payload_max_length(kPayloadLimit);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::start(const std::string& host, int port) {
  if (port == 0) {
    port_ = server_->bind_to_any_port(host);
    if (port_ < 0) throw IoError("cannot bind " + host);
  } else {
    if (!server_->bind_to_port(host, port)) {
      throw IoError("cannot bind " + host + ":" + std::to_string(port));
    }
    port_ = port;
  }
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return port_;
}

void HttpServer::stop() {
  if (server_) server_->stop();
  if (thread_.joinable() && thread_.get_id() != std::this_thread::get_id()) thread_.join();
}

void HttpServer::wait() {
  if (thread_.joinable()) thread_.join();
}

GatewayServer::GatewayServer(TranslationService& service,
                             std::optional<std::filesystem::path> static_dir)
    : service_(service) {
  auto& svr = server();
  svr.new_task_queue = [] { return new httplib::ThreadPool(64); };

  svr.Post("/translate", [this](const httplib::Request& req, httplib::Response& res) {
    std::optional<LanguagePair> pair;
    try {
      TranslationRequest request = request_from_json(req.body);
      pair = request.pair;
      reply(res, 200, to_json(service_.translate(std::move(request))));
    } catch (const GatewayError& e) {
      reply_error(res, e, pair);
    }
  });

  svr.Get("/health", [this](const httplib::Request&, httplib::Response& res) {
    auto now = Clock::now();
    ordered_json j;
    j["status"] = "ok";
    j["workers"] = json::array();
    for (const auto& w : service_.registry().snapshot()) {
      j["workers"].push_back(ordered_json::parse(to_json(w, now)));
    }
    std::vector<std::string> pairs;
    for (const auto& p : supported_pairs()) pairs.push_back(to_string(p));
    j["supported_pairs"] = pairs;
    reply(res, 200, j.dump());
  });

  svr.Post("/workers/register", [this](const httplib::Request& req, httplib::Response& res) {
    try {
      json j = parse_body(req.body);
      LanguagePair pair = pair_from_body(j);
      std::string endpoint = get_string(j, "endpoint", true);
      std::string id = service_.registry().register_worker(pair, endpoint,
                                                           get_string(j, "worker_id", false));
      ordered_json out;
      out["worker_id"] = id;
      out["pair"] = to_string(pair);
      out["heartbeat_timeout_ms"] = service_.registry().heartbeat_timeout().count();
      reply(res, 200, out.dump());
    } catch (const GatewayError& e) {
      reply_error(res, e);
    }
  });

  svr.Post("/workers/heartbeat", [this](const httplib::Request& req, httplib::Response& res) {
    try {
      json j = parse_body(req.body);
      std::string id = get_string(j, "worker_id", true);
      WorkerStatus status = service_.registry().heartbeat(id);
      ordered_json out;
      out["worker_id"] = id;
      out["status"] = to_string(status);
      reply(res, 200, out.dump());
    } catch (const GatewayError& e) {
      reply_error(res, e);
    }
  });

  if (static_dir) svr.set_mount_point("/", static_dir->string());
}

WorkerServer::WorkerServer(std::shared_ptr<EngineBackend> backend, LanguagePair pair)
    : backend_(std::move(backend)), pair_(pair) {
  server().Post("/work", [this](const httplib::Request& req, httplib::Response& res) {
    try {
      json j = parse_body(req.body);
      LanguagePair pair = pair_from_body(j);
      if (pair != pair_) {
        throw GatewayError(ErrorCode::unsupported_pair,
                           "worker serves " + to_string(pair_) + ", not " + to_string(pair),
                           "backend");
      }
      auto it = j.find("lines");
      if (it == j.end() || !it->is_array()) {
        throw GatewayError(ErrorCode::invalid_request, "missing array field 'lines'", "validate");
      }
      std::vector<std::string> lines;
      try {
        lines = it->get<std::vector<std::string>>();
      } catch (const json::exception&) {
        throw GatewayError(ErrorCode::invalid_request, "'lines' must hold strings", "validate");
      }
      std::vector<std::string> out = backend_->translate(lines, pair);
      reply(res, 200, json{{"lines", out}}.dump());
    } catch (const GatewayError& e) {
      reply_error(res, e);
    } catch (const std::exception& e) {
      reply(res, 500, ordered_json{{"error", "backend_failure"}, {"message", e.what()}}.dump());
    }
  });
  server().Get("/health", [this](const httplib::Request&, httplib::Response& res) {
    reply(res, 200,
          ordered_json{{"status", "ok"}, {"pair", to_string(pair_)}, {"engine", backend_->id()}}.dump());
  });
}

WorkerAgent::WorkerAgent(std::string gateway_url, LanguagePair pair, std::string endpoint,
                         std::chrono::milliseconds interval)
    : gateway_url_(std::move(gateway_url)),
      pair_(pair),
      endpoint_(std::move(endpoint)),
      interval_(interval) {}

WorkerAgent::~WorkerAgent() { stop(); }

namespace {

std::string register_with(const std::string& gateway_url, LanguagePair pair,
                          const std::string& endpoint, const std::string& id) {
  httplib::Client client(gateway_url);
  client.set_connection_timeout(std::chrono::seconds(5));
  json body{{"pair", to_string(pair)}, {"endpoint", endpoint}};
  if (!id.empty()) body["worker_id"] = id;
  auto res = client.Post("/workers/register", body.dump(), kJson);
  if (!res) throw IoError("cannot reach gateway " + gateway_url + ": " + httplib::to_string(res.error()));
  if (res->status != 200) {
    throw IoError("gateway rejected registration (HTTP " + std::to_string(res->status) +
                  "): " + res->body);
  }
  return json::parse(res->body).at("worker_id").get<std::string>();
}

}  // namespace

void WorkerAgent::start() {
  worker_id_ = register_with(gateway_url_, pair_, endpoint_, worker_id_);
  {
    std::lock_guard lock(mutex_);
    running_ = true;
  }
  thread_ = std::thread([this] {
    std::unique_lock lock(mutex_);
    while (running_) {
      if (wake_.wait_for(lock, interval_, [this] { return !running_; })) break;
      lock.unlock();
      try {
        httplib::Client client(gateway_url_);
        client.set_connection_timeout(std::chrono::seconds(2));
        auto res = client.Post("/workers/heartbeat", json{{"worker_id", worker_id_}}.dump(), kJson);
        if (res && res->status == 404) register_with(gateway_url_, pair_, endpoint_, worker_id_);
      } catch (const std::exception&) {
        // The gateway may be restarting; retry on the next beat.
      }
      lock.lock();
    }
  });
}

void WorkerAgent::stop() {
  {
    std::lock_guard lock(mutex_);
    running_ = false;
  }
  wake_.notify_all();
  if (thread_.joinable()) thread_.join();
}

}  // namespace mtkit::gateway
