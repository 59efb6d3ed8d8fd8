#include "mtkit/gateway/backend.hpp"

#include <algorithm>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "mtkit/pipeline/masking.hpp"
#include "mtkit/text_io.hpp"
#include "mtkit/unicode.hpp"

namespace mtkit::gateway {

std::string_view to_string(MockMode mode) {
  switch (mode) {
    case MockMode::identity: return "identity";
    case MockMode::token_reverse: return "token_reverse";
    case MockMode::lexicon: return "lexicon";
  }
  return "identity";
}

MockMode parse_mock_mode(std::string_view name) {
  if (name == "identity") return MockMode::identity;
  if (name == "token_reverse" || name == "token-reverse") return MockMode::token_reverse;
  if (name == "lexicon") return MockMode::lexicon;
  throw ConfigError("unknown backend '" + std::string(name) +
                    "' (expected identity, token_reverse or lexicon)");
}

SubstitutionTable parse_substitution_table(std::string_view content) {
  SubstitutionTable table;
  auto lines = split_lines(content);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto fields = unicode::split_whitespace(lines[i]);
    if (fields.empty() || fields[0].starts_with('#')) continue;
    if (fields.size() != 2) throw ParseError("expected 'source target'", i + 1);
    table[std::string(fields[0])] = std::string(fields[1]);
  }
  return table;
}

SubstitutionTable load_substitution_table(const std::filesystem::path& path) {
  try {
    return parse_substitution_table(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.detail(), e.line());
  }
}

namespace {

class MockBackend : public EngineBackend {
 public:
  MockBackend(MockMode mode, SubstitutionTable table) : mode_(mode), table_(std::move(table)) {}

  std::vector<std::string> translate(const std::vector<std::string>& lines,
                                     LanguagePair) override {
    if (mode_ == MockMode::identity) return lines;
    std::vector<std::string> out;
    out.reserve(lines.size());
    for (const auto& line : lines) {
      std::vector<std::string> tokens;
      for (auto t : unicode::split_whitespace(line)) tokens.emplace_back(t);
      if (mode_ == MockMode::token_reverse) {
        std::reverse(tokens.begin(), tokens.end());
      } else {
        for (auto& t : tokens) {
          if (pipeline::is_placeholder(t)) continue;
          if (auto it = table_.find(t); it != table_.end()) t = it->second;
        }
      }
      out.push_back(unicode::join(tokens, " "));
    }
    return out;
  }

  std::string id() const override { return "mock-" + std::string(to_string(mode_)); }

 private:
  MockMode mode_;
  SubstitutionTable table_;
};

}  // namespace

std::shared_ptr<EngineBackend> make_mock_backend(MockMode mode, SubstitutionTable table) {
  if (mode == MockMode::lexicon && table.empty()) {
    throw ConfigError("lexicon backend needs a substitution table");
  }
  return std::make_shared<MockBackend>(mode, std::move(table));
}

RemoteWorkerBackend::RemoteWorkerBackend(std::string endpoint, std::chrono::milliseconds timeout)
    : endpoint_(std::move(endpoint)), timeout_(timeout) {}

std::vector<std::string> RemoteWorkerBackend::translate(const std::vector<std::string>& lines,
                                                        LanguagePair pair) {
  httplib::Client client(endpoint_);
  if (!client.is_valid()) throw BackendUnavailable("invalid worker endpoint '" + endpoint_ + "'");
  client.set_connection_timeout(std::min<std::chrono::milliseconds>(timeout_, std::chrono::seconds(5)));
  client.set_read_timeout(timeout_);
  client.set_write_timeout(timeout_);
  nlohmann::json body{{"lines", lines}, {"pair", to_string(pair)}};
  auto res = client.Post("/work", body.dump(), "application/json");
  if (!res) {
    auto err = res.error();
    std::string what = httplib::to_string(err);
    if (err == httplib::Error::Connection || err == httplib::Error::ConnectionTimeout) {
      throw BackendUnavailable("worker " + endpoint_ + " unreachable: " + what);
    }
    throw BackendError("worker " + endpoint_ + " failed: " + what);
  }
  if (res->status != 200) {
    throw BackendError("worker " + endpoint_ + " answered HTTP " + std::to_string(res->status));
  }
  std::vector<std::string> out;
  try {
    auto j = nlohmann::json::parse(res->body);
    out = j.at("lines").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw BackendError("worker " + endpoint_ + " sent malformed JSON: " + e.what());
  }
  if (out.size() != lines.size()) {
    throw BackendError("worker " + endpoint_ + " returned " + std::to_string(out.size()) +
                       " lines for " + std::to_string(lines.size()));
  }
  return out;
}

}  // namespace mtkit::gateway
