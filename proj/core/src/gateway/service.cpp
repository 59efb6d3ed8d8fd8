#include "mtkit/gateway/service.hpp"

namespace mtkit::gateway {

void ModelStore::set(LanguagePair pair, std::shared_ptr<const pipeline::PipelineModels> models) {
  models_[pair] = std::move(models);
}

std::shared_ptr<const pipeline::PipelineModels> ModelStore::get(LanguagePair pair) const {
  auto it = models_.find(pair);
  return it == models_.end() ? fallback_ : it->second;
}

namespace {

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

}  // namespace

TranslationResponse handle_translation(const TranslationRequest& request,
                                       const pipeline::PipelineModels& models,
                                       EngineBackend& backend, const std::string& engine_id) {
  const auto start = Clock::now();
  TranslationResponse response;
  response.request_id = request.request_id;
  response.engine_id = engine_id;

  pipeline::Preprocessed pre;
  try {
    pre = pipeline::preprocess(request.text, request.pair, models, request.request_id);
  } catch (const Error& e) {
    throw GatewayError(ErrorCode::invalid_request, e.what(), "preprocess", request.request_id);
  }
  response.timings.pipeline_ms = elapsed_ms(start);

  std::vector<std::string> translated;
  const auto backend_start = Clock::now();
  try {
    translated = pre.lines.empty() ? std::vector<std::string>{}
                                   : backend.translate(pre.lines, request.pair);
  } catch (const BackendUnavailable&) {
    throw;
  } catch (const std::exception& e) {
    throw GatewayError(ErrorCode::backend_failure, e.what(), "backend", request.request_id);
  }
  response.timings.backend_ms = elapsed_ms(backend_start);
  if (translated.size() != pre.lines.size()) {
    throw GatewayError(ErrorCode::backend_failure,
                       "backend returned " + std::to_string(translated.size()) + " lines for " +
                           std::to_string(pre.lines.size()),
                       "backend", request.request_id);
  }

  const auto post_start = Clock::now();
  try {
    response.translated_text = pipeline::postprocess(translated, pre.state, models);
  } catch (const pipeline::ReinstatementError& e) {
    std::string orphans;
    for (const auto& o : e.orphans()) orphans += (orphans.empty() ? "" : ", ") + o;
    throw GatewayError(ErrorCode::backend_failure,
                       std::string(e.what()) + " (orphan placeholders: " + orphans + ")",
                       "postprocess", request.request_id);
  } catch (const Error& e) {
    throw GatewayError(ErrorCode::backend_failure, e.what(), "postprocess", request.request_id);
  }
  response.timings.pipeline_ms += elapsed_ms(post_start);
  response.timings.total_ms = elapsed_ms(start);
  return response;
}

BackendFactory remote_backend_factory(std::chrono::milliseconds timeout) {
  return [timeout](const WorkerDescriptor& worker) -> std::shared_ptr<EngineBackend> {
    return std::make_shared<RemoteWorkerBackend>(worker.endpoint, timeout);
  };
}

TranslationService::TranslationService(WorkerRegistry& registry, ModelStore models,
                                       GatewayOptions options, BackendFactory factory)
    : registry_(registry),
      models_(std::move(models)),
      options_(options),
      factory_(factory ? std::move(factory) : remote_backend_factory(options.backend_timeout)) {}

TranslationResponse TranslationService::translate(TranslationRequest request) {
  if (request.request_id.empty()) {
    request.request_id = "req-" + std::to_string(next_request_.fetch_add(1));
  }
  try {
    require_supported(request.pair);
    if (request.text.size() > options_.max_request_bytes) {
      throw GatewayError(ErrorCode::too_large,
                         "request text is " + std::to_string(request.text.size()) +
                             " bytes; the limit is " + std::to_string(options_.max_request_bytes),
                         "validate");
    }
    auto models = models_.get(request.pair);
    while (true) {
      auto lease = registry_.acquire(request.pair);
      const auto& worker = lease.worker();
      auto backend = factory_(worker);
      try {
        return handle_translation(request, *models, *backend, worker.id);
      } catch (const BackendUnavailable&) {
        registry_.mark_unhealthy(worker.id);
      }
    }
  } catch (GatewayError& e) {
    if (e.request_id().empty()) e.set_request_id(request.request_id);
    throw;
  }
}

}  // namespace mtkit::gateway
