#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "mtkit/gateway/types.hpp"

namespace mtkit::gateway {

// Workers per language pair. Many concurrent readers; registration,
// heartbeats and in-flight accounting take the lock exclusively and briefly.
class WorkerRegistry {
 public:
  using ClockFn = std::function<Clock::time_point()>;

  explicit WorkerRegistry(std::chrono::milliseconds heartbeat_timeout = std::chrono::seconds(15),
                          ClockFn clock = [] { return Clock::now(); });

  // Adds a worker, or refreshes it when `id` is already registered. Returns
  // the worker id. Throws GatewayError(unsupported_pair).
  std::string register_worker(LanguagePair pair, std::string endpoint, std::string id = {});
  // Throws GatewayError(unknown_worker).
  WorkerStatus heartbeat(const std::string& id);
  // Marks a worker unhealthy until its next heartbeat.
  void mark_unhealthy(const std::string& id);

  // Keeps a worker's in-flight count raised while alive.
  class Lease {
   public:
    Lease(Lease&& other) noexcept;
    Lease& operator=(Lease&&) = delete;
    Lease(const Lease&) = delete;
    ~Lease();
    const WorkerDescriptor& worker() const { return worker_; }

   private:
    friend class WorkerRegistry;
    Lease(WorkerRegistry* registry, WorkerDescriptor worker);
    WorkerRegistry* registry_;
    WorkerDescriptor worker_;
  };

  // The healthy worker with the fewest requests in flight, earliest
  // registration first on ties. Throws GatewayError: unsupported_pair, or
  // no_worker naming the pair.
  WorkerDescriptor route(LanguagePair pair) const;
  Lease acquire(LanguagePair pair);

  std::vector<WorkerDescriptor> snapshot() const;
  std::size_t routable_count(LanguagePair pair) const;
  std::chrono::milliseconds heartbeat_timeout() const { return timeout_; }

 private:
  struct Entry {
    WorkerDescriptor descriptor;
    bool marked_down = false;
  };
  WorkerStatus status_of(const Entry& entry, Clock::time_point now) const;
  const Entry* pick(LanguagePair pair, Clock::time_point now) const;
  void release(const std::string& id);

  std::chrono::milliseconds timeout_;
  ClockFn clock_;
  mutable std::shared_mutex mutex_;
  std::vector<std::unique_ptr<Entry>> entries_;
  std::unordered_map<std::string, Entry*> by_id_;
  std::size_t next_id_ = 1;
};

}  // namespace mtkit::gateway
