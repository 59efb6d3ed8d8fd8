#pragma once

#include <chrono>
#include <cstddef>
#include <string>
#include <string_view>

#include "mtkit/errors.hpp"
#include "mtkit/language.hpp"

namespace mtkit::gateway {

using Clock = std::chrono::steady_clock;

struct TranslationRequest {
  std::string request_id;
  std::string text;
  LanguagePair pair;
};

struct StageTimings {
  double pipeline_ms = 0;
  double backend_ms = 0;
  double total_ms = 0;
};

struct TranslationResponse {
  std::string request_id;
  std::string translated_text;
  std::string engine_id;
  StageTimings timings;
};

enum class WorkerStatus { healthy, unhealthy };
std::string_view to_string(WorkerStatus status);

struct WorkerDescriptor {
  std::string id;
  LanguagePair pair;
  std::string endpoint;
  WorkerStatus status = WorkerStatus::healthy;
  Clock::time_point last_heartbeat{};
  std::size_t in_flight = 0;
  std::size_t registration_order = 0;
};

enum class ErrorCode {
  invalid_request,   // 400
  unsupported_pair,  // 400
  unknown_worker,    // 404
  too_large,         // 413
  backend_failure,   // 502
  no_worker,         // 503
};
std::string_view to_string(ErrorCode code);
int http_status(ErrorCode code);

// A structured failure answered to the client. stage names where a
// translation failed ("validate", "route", "preprocess", "backend",
// "postprocess").
class GatewayError : public Error {
 public:
  GatewayError(ErrorCode code, std::string message, std::string stage = {},
               std::string request_id = {});
  ErrorCode code() const { return code_; }
  const std::string& stage() const { return stage_; }
  const std::string& request_id() const { return request_id_; }
  void set_request_id(std::string id) { request_id_ = std::move(id); }

 private:
  ErrorCode code_;
  std::string stage_;
  std::string request_id_;
};

// Throws GatewayError(unsupported_pair) listing the served pairs.
void require_supported(const LanguagePair& pair);
std::string supported_pairs_text();

}  // namespace mtkit::gateway
