#include "mtkit/gateway/registry.hpp"

#include <mutex>

namespace mtkit::gateway {

std::string_view to_string(WorkerStatus status) {
  return status == WorkerStatus::healthy ? "healthy" : "unhealthy";
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_request: return "invalid_request";
    case ErrorCode::unsupported_pair: return "unsupported_pair";
    case ErrorCode::unknown_worker: return "unknown_worker";
    case ErrorCode::too_large: return "too_large";
    case ErrorCode::backend_failure: return "backend_failure";
    case ErrorCode::no_worker: return "no_worker";
  }
  return "error";
}

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_request:
    case ErrorCode::unsupported_pair: return 400;
    case ErrorCode::unknown_worker: return 404;
    case ErrorCode::too_large: return 413;
    case ErrorCode::backend_failure: return 502;
    case ErrorCode::no_worker: return 503;
  }
  return 500;
}

GatewayError::GatewayError(ErrorCode code, std::string message, std::string stage,
                           std::string request_id)
    : Error(std::move(message)),
      code_(code),
      stage_(std::move(stage)),
      request_id_(std::move(request_id)) {}

std::string supported_pairs_text() {
  std::string out;
  for (const auto& p : supported_pairs()) {
    if (!out.empty()) out += ", ";
    out += to_string(p);
  }
  return out;
}

void require_supported(const LanguagePair& pair) {
  if (!is_supported(pair)) {
    throw GatewayError(ErrorCode::unsupported_pair,
                       "unsupported language pair " + to_string(pair) +
                           "; supported pairs: " + supported_pairs_text(),
                       "validate");
  }
}

WorkerRegistry::WorkerRegistry(std::chrono::milliseconds heartbeat_timeout, ClockFn clock)
    : timeout_(heartbeat_timeout), clock_(std::move(clock)) {}

std::string WorkerRegistry::register_worker(LanguagePair pair, std::string endpoint,
                                            std::string id) {
  require_supported(pair);
  std::unique_lock lock(mutex_);
  auto now = clock_();
  if (!id.empty()) {
    if (auto it = by_id_.find(id); it != by_id_.end()) {
      auto& d = it->second->descriptor;
      d.pair = pair;
      d.endpoint = std::move(endpoint);
      d.last_heartbeat = now;
      it->second->marked_down = false;
      return id;
    }
  } else {
    do {
      id = "worker-" + std::to_string(next_id_++);
    } while (by_id_.contains(id));
  }
  auto entry = std::make_unique<Entry>();
  entry->descriptor.id = id;
  entry->descriptor.pair = pair;
  entry->descriptor.endpoint = std::move(endpoint);
  entry->descriptor.last_heartbeat = now;
  entry->descriptor.registration_order = entries_.size();
  by_id_[id] = entry.get();
  entries_.push_back(std::move(entry));
  return id;
}

WorkerStatus WorkerRegistry::heartbeat(const std::string& id) {
  std::unique_lock lock(mutex_);
  auto it = by_id_.find(id);
  if (it == by_id_.end()) {
    throw GatewayError(ErrorCode::unknown_worker, "unknown worker '" + id + "'", "heartbeat");
  }
  it->second->descriptor.last_heartbeat = clock_();
  it->second->marked_down = false;
  return WorkerStatus::healthy;
}

void WorkerRegistry::mark_unhealthy(const std::string& id) {
  std::unique_lock lock(mutex_);
  if (auto it = by_id_.find(id); it != by_id_.end()) it->second->marked_down = true;
}

WorkerStatus WorkerRegistry::status_of(const Entry& entry, Clock::time_point now) const {
  if (entry.marked_down) return WorkerStatus::unhealthy;
  if (now - entry.descriptor.last_heartbeat > timeout_) return WorkerStatus::unhealthy;
  return WorkerStatus::healthy;
}

const WorkerRegistry::Entry* WorkerRegistry::pick(LanguagePair pair, Clock::time_point now) const {
  const Entry* best = nullptr;
  for (const auto& e : entries_) {
    if (e->descriptor.pair != pair || status_of(*e, now) != WorkerStatus::healthy) continue;
    if (best == nullptr || e->descriptor.in_flight < best->descriptor.in_flight) best = e.get();
  }
  return best;
}

namespace {

GatewayError no_worker(LanguagePair pair) {
  return GatewayError(ErrorCode::no_worker,
                      "no healthy worker for language pair " + to_string(pair), "route");
}

}  // namespace

WorkerDescriptor WorkerRegistry::route(LanguagePair pair) const {
  require_supported(pair);
  std::shared_lock lock(mutex_);
  auto now = clock_();
  const Entry* e = pick(pair, now);
  if (e == nullptr) throw no_worker(pair);
  WorkerDescriptor d = e->descriptor;
  d.status = WorkerStatus::healthy;
  return d;
}

WorkerRegistry::Lease WorkerRegistry::acquire(LanguagePair pair) {
  require_supported(pair);
  std::unique_lock lock(mutex_);
  auto now = clock_();
  auto* e = const_cast<Entry*>(pick(pair, now));
  if (e == nullptr) throw no_worker(pair);
  ++e->descriptor.in_flight;
  WorkerDescriptor d = e->descriptor;
  d.status = WorkerStatus::healthy;
  return Lease(this, std::move(d));
}

void WorkerRegistry::release(const std::string& id) {
  std::unique_lock lock(mutex_);
  if (auto it = by_id_.find(id); it != by_id_.end() && it->second->descriptor.in_flight > 0) {
    --it->second->descriptor.in_flight;
  }
}

std::vector<WorkerDescriptor> WorkerRegistry::snapshot() const {
  std::shared_lock lock(mutex_);
  auto now = clock_();
  std::vector<WorkerDescriptor> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) {
    WorkerDescriptor d = e->descriptor;
    d.status = status_of(*e, now);
    out.push_back(std::move(d));
  }
  return out;
}

std::size_t WorkerRegistry::routable_count(LanguagePair pair) const {
  std::shared_lock lock(mutex_);
  auto now = clock_();
  std::size_t n = 0;
  for (const auto& e : entries_) {
    if (e->descriptor.pair == pair && status_of(*e, now) == WorkerStatus::healthy) ++n;
  }
  return n;
}

WorkerRegistry::Lease::Lease(WorkerRegistry* registry, WorkerDescriptor worker)
    : registry_(registry), worker_(std::move(worker)) {}

WorkerRegistry::Lease::Lease(Lease&& other) noexcept
    : registry_(other.registry_), worker_(std::move(other.worker_)) {
  other.registry_ = nullptr;
}

WorkerRegistry::Lease::~Lease() {
  if (registry_ != nullptr) registry_->release(worker_.id);
}

}  // namespace mtkit::gateway
