#pragma once

#include <chrono>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mtkit/errors.hpp"
#include "mtkit/language.hpp"

namespace mtkit::gateway {

// A translation engine. Must return exactly one line per input line and
// pass placeholder tokens through unchanged.
class EngineBackend {
 public:
  virtual ~EngineBackend() = default;
  virtual std::vector<std::string> translate(const std::vector<std::string>& lines,
                                             LanguagePair pair) = 0;
  virtual std::string id() const = 0;
};

// The engine answered badly or not at all.
class BackendError : public Error {
 public:
  using Error::Error;
};

// The engine could not be reached; the caller may try another worker.
class BackendUnavailable : public BackendError {
 public:
  using BackendError::BackendError;
};

enum class MockMode { identity, token_reverse, lexicon };
std::string_view to_string(MockMode mode);
MockMode parse_mock_mode(std::string_view name);

using SubstitutionTable = std::unordered_map<std::string, std::string>;

// "source<TAB or space>target" lines.
SubstitutionTable parse_substitution_table(std::string_view content);
SubstitutionTable load_substitution_table(const std::filesystem::path& path);

// Deterministic stand-in engines. token_reverse reverses the token order of
// each line; lexicon replaces tokens found in the table. Placeholders are
// never altered. Lexicon mode throws ConfigError without a table.
std::shared_ptr<EngineBackend> make_mock_backend(MockMode mode, SubstitutionTable table = {});

// Forwards batches to a worker's POST /work endpoint.
class RemoteWorkerBackend : public EngineBackend {
 public:
  RemoteWorkerBackend(std::string endpoint, std::chrono::milliseconds timeout);
  std::vector<std::string> translate(const std::vector<std::string>& lines,
                                     LanguagePair pair) override;
  std::string id() const override { return endpoint_; }

 private:
  std::string endpoint_;
  std::chrono::milliseconds timeout_;
};

}  // namespace mtkit::gateway
