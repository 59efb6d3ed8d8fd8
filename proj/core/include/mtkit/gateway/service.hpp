#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>

#include "mtkit/gateway/backend.hpp"
#include "mtkit/gateway/registry.hpp"
#include "mtkit/gateway/types.hpp"
#include "mtkit/pipeline/pipeline.hpp"

namespace mtkit::gateway {

struct GatewayOptions {
  std::size_t max_request_bytes = 64 * 1024;
  std::chrono::milliseconds backend_timeout = std::chrono::seconds(30);
  std::chrono::milliseconds heartbeat_timeout = std::chrono::seconds(15);
};

// Pipeline models per language pair; pairs without an entry use the
// built-in resources only.
class ModelStore {
 public:
  void set(LanguagePair pair, std::shared_ptr<const pipeline::PipelineModels> models);
  std::shared_ptr<const pipeline::PipelineModels> get(LanguagePair pair) const;

 private:
  std::map<LanguagePair, std::shared_ptr<const pipeline::PipelineModels>> models_;
  std::shared_ptr<const pipeline::PipelineModels> fallback_ =
      std::make_shared<pipeline::PipelineModels>();
};

// preprocess -> backend -> postprocess for one request. Throws GatewayError
// tagged with the failing stage and the request id.
TranslationResponse handle_translation(const TranslationRequest& request,
                                       const pipeline::PipelineModels& models,
                                       EngineBackend& backend, const std::string& engine_id);

using BackendFactory = std::function<std::shared_ptr<EngineBackend>(const WorkerDescriptor&)>;

// Backends that talk HTTP to the worker endpoint.
BackendFactory remote_backend_factory(std::chrono::milliseconds timeout);

class TranslationService {
 public:
  TranslationService(WorkerRegistry& registry, ModelStore models, GatewayOptions options = {},
                     BackendFactory factory = {});

  // Validates, routes and translates. Unreachable workers are marked
  // unhealthy and the request moves to the next one; with none left the
  // error is no_worker.
  TranslationResponse translate(TranslationRequest request);

  const GatewayOptions& options() const { return options_; }
  WorkerRegistry& registry() { return registry_; }

 private:
  WorkerRegistry& registry_;
  ModelStore models_;
  GatewayOptions options_;
  BackendFactory factory_;
  std::atomic<std::size_t> next_request_{1};
};

}  // namespace mtkit::gateway
