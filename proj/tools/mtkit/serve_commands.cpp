#include <csignal>
#include <iostream>
#include <map>
#include <memory>

#include <pthread.h>

#include "commands.hpp"
#include "mtkit/errors.hpp"
#include "mtkit/gateway/http.hpp"
#include "mtkit/text_io.hpp"

namespace mtkit::cli {

namespace {

// Blocks SIGINT/SIGTERM in every thread started afterwards and returns a
// waiter for the main thread.
class SignalWait {
 public:
  SignalWait() {
    sigemptyset(&set_);
    sigaddset(&set_, SIGINT);
    sigaddset(&set_, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &set_, nullptr);
  }
  void wait() {
    int sig = 0;
    sigwait(&set_, &sig);
  }

 private:
  sigset_t set_;
};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::map<std::string, std::string> out;
  auto lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string line = trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(path + ": expected 'key = value'", i + 1);
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

}  // namespace

void add_serve_commands(CLI::App& app) {
  auto* serve = app.add_subcommand("serve", "Run the translation gateway or a worker");
  serve->require_subcommand(1);

  struct GatewayOpts {
    std::string host = "127.0.0.1", config, static_dir;
    int port = 8080;
  };
  auto gw = std::make_shared<GatewayOpts>();
  auto* g = serve->add_subcommand("gateway", "Accept /translate requests and route them to workers");
  g->add_option("--host", gw->host)->capture_default_str();
  g->add_option("--port", gw->port)->capture_default_str();
  g->add_option("--config", gw->config,
                "key = value file: max_request_bytes, backend_timeout_ms, heartbeat_timeout_ms, "
                "static_dir, glossary, truecaser.PAIR, bpe.PAIR, compound_lexicon.PAIR");
  g->add_option("--static-dir", gw->static_dir, "Serve the browser UI from this directory");
  g->callback([gw] {
    gateway::GatewayOptions options;
    gateway::ModelStore store;
    std::string static_dir = gw->static_dir;
    auto glossary = std::make_shared<pipeline::Glossary>(pipeline::Glossary::builtin());
    std::map<std::string, std::string> cfg;
    if (!gw->config.empty()) cfg = read_config(gw->config);
    auto number = [&](const char* key, std::size_t fallback) -> std::size_t {
      auto it = cfg.find(key);
      return it == cfg.end() ? fallback : std::stoull(it->second);
    };
    options.max_request_bytes = number("max_request_bytes", options.max_request_bytes);
    options.backend_timeout = std::chrono::milliseconds(number("backend_timeout_ms", options.backend_timeout.count()));
    options.heartbeat_timeout = std::chrono::milliseconds(number("heartbeat_timeout_ms", options.heartbeat_timeout.count()));
    if (static_dir.empty() && cfg.contains("static_dir")) static_dir = cfg["static_dir"];
    if (cfg.contains("glossary")) *glossary = pipeline::Glossary::load(cfg["glossary"]);
    for (const auto& pair : supported_pairs()) {
      std::string name = to_string(pair);
      auto models = std::make_shared<pipeline::PipelineModels>();
      models->glossary = glossary.get();
      if (auto it = cfg.find("truecaser." + name); it != cfg.end()) {
        models->source_truecaser = std::make_shared<pipeline::TruecaseModel>(pipeline::load_truecaser(it->second));
      }
      if (auto it = cfg.find("bpe." + name); it != cfg.end()) {
        models->bpe = std::make_shared<bpe::BpeModel>(bpe::load_bpe(it->second));
      }
      if (auto it = cfg.find("compound_lexicon." + name); it != cfg.end()) {
        models->compound_lexicon = std::make_shared<pipeline::CompoundLexicon>(
            pipeline::CompoundLexicon::load(it->second));
      }
      store.set(pair, models);
    }
    SignalWait signals;
    gateway::WorkerRegistry registry(options.heartbeat_timeout);
    gateway::TranslationService service(registry, store, options);
    std::optional<std::filesystem::path> dir;
    if (!static_dir.empty()) dir = static_dir;
    gateway::GatewayServer server(service, dir);
    int port = server.start(gw->host, gw->port);
    std::cerr << "gateway listening on http://" << gw->host << ":" << port << '\n';
    signals.wait();
    server.stop();
  });

  struct WorkerOpts {
    std::string pair = "de-en", backend = "identity", lexicon_table, gateway_url, host = "127.0.0.1",
                advertise;
    int port = 0;
    int heartbeat_ms = 5000;
  };
  auto wk = std::make_shared<WorkerOpts>();
  auto* w = serve->add_subcommand("worker", "Serve POST /work with a mock engine");
  w->add_option("--pair", wk->pair)->capture_default_str();
  w->add_option("--backend", wk->backend, "identity, token_reverse or lexicon")->capture_default_str();
  w->add_option("--lexicon-table", wk->lexicon_table, "Substitutions for the lexicon engine");
  w->add_option("--gateway-url", wk->gateway_url, "Register with this gateway, e.g. http://127.0.0.1:8080");
  w->add_option("--host", wk->host)->capture_default_str();
  w->add_option("--port", wk->port, "0 picks a free port")->capture_default_str();
  w->add_option("--advertise", wk->advertise, "Endpoint announced to the gateway");
  w->add_option("--heartbeat-ms", wk->heartbeat_ms)->capture_default_str();
  w->callback([wk] {
    LanguagePair pair = pair_from_string(wk->pair);
    gateway::SubstitutionTable table;
    if (!wk->lexicon_table.empty()) table = gateway::load_substitution_table(wk->lexicon_table);
    auto engine = gateway::make_mock_backend(gateway::parse_mock_mode(wk->backend), table);
    SignalWait signals;
    gateway::WorkerServer server(engine, pair);
    int port = server.start(wk->host, wk->port);
    std::string endpoint = wk->advertise.empty() ? "http://" + wk->host + ":" + std::to_string(port) : wk->advertise;
    std::cerr << "worker " << to_string(pair) << " (" << engine->id() << ") listening on " << endpoint << '\n';
    std::unique_ptr<gateway::WorkerAgent> agent;
    if (!wk->gateway_url.empty()) {
      agent = std::make_unique<gateway::WorkerAgent>(wk->gateway_url, pair, endpoint,
                                                     std::chrono::milliseconds(wk->heartbeat_ms));
      agent->start();
      std::cerr << "registered with " << wk->gateway_url << " as " << agent->worker_id() << '\n';
    }
    signals.wait();
    if (agent) agent->stop();
    server.stop();
  });
}

}  // namespace mtkit::cli
