#include "mtkit/gateway/training_config.hpp"

#include <charconv>
#include <functional>

#include "mtkit/errors.hpp"
#include "mtkit/text_io.hpp"

namespace mtkit::gateway {

namespace {

std::string trim(std::string_view s) {
  const char* ws = " \t";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

int parse_int(const std::string& field, const std::string& value) {
  int v = 0;
  auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || end != value.data() + value.size()) {
    throw ConfigError(field + ": expected an integer, got '" + value + "'");
  }
  return v;
}

double parse_real(const std::string& field, const std::string& value) {
  double v = 0;
  auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || end != value.data() + value.size()) {
    throw ConfigError(field + ": expected a number, got '" + value + "'");
  }
  return v;
}

bool parse_bool(const std::string& field, const std::string& value) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw ConfigError(field + ": expected true or false, got '" + value + "'");
}

std::vector<std::string> parse_list(const std::string& value) {
  std::string inner = trim(value);
  if (inner.size() >= 2 && inner.front() == '[' && inner.back() == ']') {
    inner = inner.substr(1, inner.size() - 2);
  }
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= inner.size()) {
    auto comma = inner.find(',', start);
    std::string item = trim(inner.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string format_list(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ", ";
    out += items[i];
  }
  return out + "]";
}

struct Field {
  std::string name;
  std::function<std::string(const TrainingConfig&)> get;
  std::function<void(TrainingConfig&, const std::string&)> set;
};

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      {"pair", [](const TrainingConfig& c) { return to_string(c.pair); },
       [](TrainingConfig& c, const std::string& v) { c.pair = pair_from_string(v); }},
      {"enc_layers", [](const TrainingConfig& c) { return std::to_string(c.enc_layers); },
       [](TrainingConfig& c, const std::string& v) { c.enc_layers = parse_int("enc_layers", v); }},
      {"dec_layers", [](const TrainingConfig& c) { return std::to_string(c.dec_layers); },
       [](TrainingConfig& c, const std::string& v) { c.dec_layers = parse_int("dec_layers", v); }},
      {"dropout", [](const TrainingConfig& c) { return format_double(c.dropout); },
       [](TrainingConfig& c, const std::string& v) { c.dropout = parse_real("dropout", v); }},
      {"optimizer", [](const TrainingConfig& c) { return c.optimizer; },
       [](TrainingConfig& c, const std::string& v) { c.optimizer = v; }},
      {"learning_rate", [](const TrainingConfig& c) { return format_double(c.learning_rate); },
       [](TrainingConfig& c, const std::string& v) { c.learning_rate = parse_real("learning_rate", v); }},
      {"warmup", [](const TrainingConfig& c) { return std::string(c.warmup ? "true" : "false"); },
       [](TrainingConfig& c, const std::string& v) { c.warmup = parse_bool("warmup", v); }},
      {"mini_batch", [](const TrainingConfig& c) { return std::to_string(c.mini_batch); },
       [](TrainingConfig& c, const std::string& v) { c.mini_batch = parse_int("mini_batch", v); }},
      {"beam_size", [](const TrainingConfig& c) { return std::to_string(c.beam_size); },
       [](TrainingConfig& c, const std::string& v) { c.beam_size = parse_int("beam_size", v); }},
      {"bpe_merges", [](const TrainingConfig& c) { return std::to_string(c.bpe_merges); },
       [](TrainingConfig& c, const std::string& v) { c.bpe_merges = parse_int("bpe_merges", v); }},
      {"tied_embeddings",
       [](const TrainingConfig& c) { return std::string(c.tied_embeddings ? "true" : "false"); },
       [](TrainingConfig& c, const std::string& v) { c.tied_embeddings = parse_bool("tied_embeddings", v); }},
      {"validation_metrics", [](const TrainingConfig& c) { return format_list(c.validation_metrics); },
       [](TrainingConfig& c, const std::string& v) { c.validation_metrics = parse_list(v); }},
      {"early_stopping", [](const TrainingConfig& c) { return c.early_stopping; },
       [](TrainingConfig& c, const std::string& v) { c.early_stopping = v; }},
      {"model_selection", [](const TrainingConfig& c) { return c.model_selection; },
       [](TrainingConfig& c, const std::string& v) { c.model_selection = v; }},
  };
  return table;
}

const Field* find_field(const std::string& name) {
  for (const auto& f : fields()) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

}  // namespace

const std::vector<std::string>& training_config_fields() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& f : fields()) out.push_back(f.name);
    return out;
  }();
  return names;
}

TrainingConfig emit_training_config(LanguagePair pair,
                                    const std::map<std::string, std::string>& overrides) {
  TrainingConfig config;
  config.pair = pair;
  for (const auto& [name, value] : overrides) {
    const Field* f = find_field(name);
    if (f == nullptr || name == "pair") {
      std::string known;
      for (const auto& n : training_config_fields()) {
        if (n == "pair") continue;
        known += (known.empty() ? "" : ", ") + n;
      }
      throw ConfigError("unknown training config field '" + name + "' (known: " + known + ")");
    }
    f->set(config, trim(value));
  }
  return config;
}

std::string to_text(const TrainingConfig& config) {
  TrainingConfig defaults;
  defaults.pair = config.pair;
  std::string changed;
  for (const auto& f : fields()) {
    if (f.get(config) != f.get(defaults)) changed += (changed.empty() ? "" : ", ") + f.name;
  }
  std::string out =
      "# Transformer training defaults for the crisis-response MT pairs\n"
      "# (32,000 BPE merges, 6+6 layers, Adam at 0.0003, batches of 64, beam 12).\n";
  out += "# overridden: " + (changed.empty() ? std::string("none") : changed) + "\n";
  for (const auto& f : fields()) out += f.name + ": " + f.get(config) + "\n";
  return out;
}

TrainingConfig parse_training_config(std::string_view text) {
  TrainingConfig config;
  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string line = trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError("expected 'key: value'", i + 1);
    std::string key = trim(line.substr(0, colon));
    std::string value = trim(line.substr(colon + 1));
    const Field* f = find_field(key);
    if (f == nullptr) throw ParseError("unknown field '" + key + "'", i + 1);
    try {
      f->set(config, value);
    } catch (const ConfigError& e) {
      throw ParseError(e.what(), i + 1);
    }
  }
  return config;
}

}  // namespace mtkit::gateway
