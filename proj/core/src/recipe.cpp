#include "mtkit/recipe.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <ostream>
#include <set>

#include <nlohmann/json.hpp>

#include "mtkit/bpe.hpp"
#include "mtkit/corpus.hpp"
#include "mtkit/data_selection.hpp"
#include "mtkit/gateway/training_config.hpp"
#include "mtkit/hash.hpp"
#include "mtkit/metrics.hpp"
#include "mtkit/ngram_lm.hpp"
#include "mtkit/text_io.hpp"
#include "mtkit/unicode.hpp"

namespace mtkit::recipe {

namespace fs = std::filesystem;

RecipeError::RecipeError(std::string message, std::string step)
    : Error(step.empty() ? message : "step '" + step + "': " + message), step_(std::move(step)) {}

std::optional<std::string> StepSpec::get(std::string_view key) const {
  for (auto it = params.rbegin(); it != params.rend(); ++it) {
    if (it->first == key) return it->second;
  }
  return std::nullopt;
}

void StepSpec::set(std::string key, std::string value) {
  for (auto& [k, v] : params) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  params.emplace_back(std::move(key), std::move(value));
}

namespace {

std::string trim(std::string_view s) {
  const char* ws = " \t";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    auto comma = value.find(',', start);
    std::string item = trim(value.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool known_kind(std::string_view kind) {
  return std::find(std::begin(kStepKinds), std::end(kStepKinds), kind) != std::end(kStepKinds);
}

struct ParsedFile {
  Recipe recipe;
  std::vector<std::string> inherit;
  std::set<std::string> keys;  // top-level keys present in this file
};

ParsedFile parse_file(std::string_view content, const fs::path& base_dir) {
  ParsedFile out;
  Recipe& r = out.recipe;
  auto lines = split_lines(content);
  StepSpec* current = nullptr;
  std::optional<Lang> src, tgt;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string line = trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("unterminated section header", i + 1);
      std::vector<std::string> words;
      for (auto w : unicode::split_whitespace(std::string_view(line).substr(1, line.size() - 2))) {
        words.emplace_back(w);
      }
      if (words.size() < 2 || words.size() > 3 || words[0] != "step") {
        throw ParseError("expected '[step KIND]' or '[step KIND ID]'", i + 1);
      }
      if (!known_kind(words[1])) throw ParseError("unknown step kind '" + words[1] + "'", i + 1);
      StepSpec step;
      step.kind = words[1];
      step.id = words.size() == 3 ? words[2] : words[1];
      step.base_dir = base_dir;
      if (!ids.insert(step.id).second) throw ParseError("duplicate step id '" + step.id + "'", i + 1);
      r.steps.push_back(std::move(step));
      current = &r.steps.back();
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", i + 1);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError("empty key", i + 1);
    if (current != nullptr) {
      current->set(key, value);
      continue;
    }
    out.keys.insert(key);
    if (key == "name") {
      r.name = value;
    } else if (key == "seed") {
      std::uint64_t seed = 0;
      auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), seed);
      if (ec != std::errc() || end != value.data() + value.size()) {
        throw ParseError("seed must be a non-negative integer", i + 1);
      }
      r.seed = seed;
    } else if (key == "source_lang" || key == "target_lang") {
      auto lang = parse_lang(value);
      if (!lang) throw ParseError("unknown language '" + value + "'", i + 1);
      (key == "source_lang" ? src : tgt) = *lang;
    } else if (key == "workspace") {
      r.workspace = base_dir / value;
    } else if (key == "inherit") {
      for (auto& parent : split_list(value)) out.inherit.push_back(parent);
    } else {
      throw ParseError("unknown key '" + key + "'", i + 1);
    }
  }
  if (src) r.langs.source = *src;
  if (tgt) r.langs.target = *tgt;
  return out;
}

void merge_into(Recipe& base, const ParsedFile& child) {
  const Recipe& c = child.recipe;
  if (child.keys.contains("name")) base.name = c.name;
  if (child.keys.contains("seed")) base.seed = c.seed;
  if (child.keys.contains("source_lang")) base.langs.source = c.langs.source;
  if (child.keys.contains("target_lang")) base.langs.target = c.langs.target;
  if (child.keys.contains("workspace")) base.workspace = c.workspace;
  for (const auto& step : c.steps) {
    auto it = std::find_if(base.steps.begin(), base.steps.end(),
                           [&](const StepSpec& s) { return s.id == step.id; });
    if (it != base.steps.end()) {
      *it = step;
    } else {
      base.steps.push_back(step);
    }
  }
}

Recipe load_with_parents(const fs::path& path, std::vector<fs::path>& stack) {
  fs::path canonical = fs::weakly_canonical(path);
  if (std::find(stack.begin(), stack.end(), canonical) != stack.end()) {
    throw RecipeError("inheritance cycle through " + path.string());
  }
  std::string content;
  try {
    content = read_file(path);
  } catch (const IoError& e) {
    throw RecipeError(std::string("cannot read recipe: ") + e.what());
  }
  ParsedFile file;
  try {
    file = parse_file(content, path.parent_path());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.detail(), e.line());
  }
  stack.push_back(canonical);
  Recipe merged;
  bool has_parent = false;
  for (const auto& parent : file.inherit) {
    Recipe p = load_with_parents(path.parent_path() / parent, stack);
    if (!has_parent) {
      merged = std::move(p);
      has_parent = true;
    } else {
      ParsedFile wrapper;
      wrapper.recipe = std::move(p);
      wrapper.keys = {"name", "seed", "source_lang", "target_lang", "workspace"};
      merge_into(merged, wrapper);
    }
  }
  stack.pop_back();
  if (!has_parent) return std::move(file.recipe);
  merge_into(merged, file);
  return merged;
}

}  // namespace

Recipe parse_recipe(std::string_view content, const fs::path& base_dir) {
  ParsedFile file = parse_file(content, base_dir);
  if (!file.inherit.empty()) {
    throw RecipeError("'inherit' needs load_recipe, which resolves parent files");
  }
  return std::move(file.recipe);
}

Recipe load_recipe(const fs::path& path) {
  std::vector<fs::path> stack;
  Recipe r = load_with_parents(path, stack);
  if (r.workspace.empty()) r.workspace = path.parent_path() / "workspace";
  if (r.name.empty()) r.name = path.stem().string();
  return r;
}

const StepRecord* Manifest::find(std::string_view id) const {
  for (const auto& s : steps) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

namespace {

using nlohmann::ordered_json;

ordered_json artifacts_json(const std::vector<ArtifactRecord>& items) {
  ordered_json arr = ordered_json::array();
  for (const auto& a : items) {
    arr.push_back({{"name", a.name}, {"path", a.path}, {"hash", a.hash}, {"rows", a.rows}});
  }
  return arr;
}

std::vector<ArtifactRecord> artifacts_from(const ordered_json& arr) {
  std::vector<ArtifactRecord> out;
  for (const auto& a : arr) {
    out.push_back({a.at("name").get<std::string>(), a.at("path").get<std::string>(),
                   a.at("hash").get<std::string>(), a.at("rows").get<std::size_t>()});
  }
  return out;
}

}  // namespace

std::string Manifest::to_json() const {
  ordered_json j;
  j["recipe"] = recipe;
  j["seed"] = seed;
  j["source_lang"] = to_string(langs.source);
  j["target_lang"] = to_string(langs.target);
  j["steps"] = ordered_json::array();
  for (const auto& s : steps) {
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : s.params) params[k] = v;
    j["steps"].push_back({{"id", s.id},
                          {"kind", s.kind},
                          {"params", params},
                          {"inputs", artifacts_json(s.inputs)},
                          {"outputs", artifacts_json(s.outputs)}});
  }
  return j.dump(2) + "\n";
}

Manifest Manifest::from_json(std::string_view text) {
  Manifest m;
  try {
    auto j = ordered_json::parse(text);
    m.recipe = j.at("recipe").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.langs = {lang_from_string(j.at("source_lang").get<std::string>()),
               lang_from_string(j.at("target_lang").get<std::string>())};
    for (const auto& s : j.at("steps")) {
      StepRecord r;
      r.id = s.at("id").get<std::string>();
      r.kind = s.at("kind").get<std::string>();
      for (const auto& [k, v] : s.at("params").items()) r.params.emplace_back(k, v.get<std::string>());
      r.inputs = artifacts_from(s.at("inputs"));
      r.outputs = artifacts_from(s.at("outputs"));
      m.steps.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw RecipeError(std::string("malformed manifest: ") + e.what());
  }
  return m;
}

namespace {

std::size_t count_lines(std::string_view content) {
  return static_cast<std::size_t>(std::count(content.begin(), content.end(), '\n')) +
         (!content.empty() && content.back() != '\n' ? 1 : 0);
}

// State of one run: where every produced port lives.
class Runner {
 public:
  Runner(const Recipe& recipe, std::ostream* log) : recipe_(recipe), log_(log) {}

  RunResult run() {
    fs::create_directories(recipe_.workspace);
    std::optional<Manifest> previous;
    fs::path manifest_path = recipe_.workspace / kManifestFile;
    if (fs::exists(manifest_path)) {
      try {
        previous = Manifest::from_json(read_file(manifest_path));
      } catch (const Error& e) {
        warn(std::string("ignoring unreadable previous manifest: ") + e.what());
      }
    }
    result_.manifest.recipe = recipe_.name;
    result_.manifest.seed = recipe_.seed;
    result_.manifest.langs = recipe_.langs;
    for (const auto& step : recipe_.steps) {
      StepRecord record;
      record.id = step.id;
      record.kind = step.kind;
      record.params = step.params;
      step_ = &step;
      record_ = &record;
      try {
        dispatch(step);
      } catch (const RecipeError&) {
        throw;
      } catch (const Error& e) {
        throw RecipeError(e.what(), step.id);
      } catch (const std::filesystem::filesystem_error& e) {
        throw RecipeError(e.what(), step.id);
      }
      if (previous) compare(*previous, record);
      result_.manifest.steps.push_back(std::move(record));
    }
    write_file(manifest_path, result_.manifest.to_json());
    return std::move(result_);
  }

 private:
  void warn(const std::string& message) {
    result_.warnings.push_back(message);
    if (log_) *log_ << "warning: " << message << '\n';
  }

  void compare(const Manifest& previous, const StepRecord& now) {
    const StepRecord* old = previous.find(now.id);
    if (old == nullptr) return;
    bool inputs_changed = false;
    for (const auto& in : now.inputs) {
      for (const auto& o : old->inputs) {
        if (o.name == in.name && o.hash != in.hash) {
          inputs_changed = true;
          warn("step '" + now.id + "': input '" + in.name + "' changed since the previous run (" +
               o.hash + " -> " + in.hash + "); outputs are stale");
        }
      }
    }
    if (inputs_changed) return;
    for (const auto& out : now.outputs) {
      for (const auto& o : old->outputs) {
        if (o.name == out.name && o.hash != out.hash) {
          warn("step '" + now.id + "': output '" + out.name + "' hash mismatch against the previous manifest (" +
               o.hash + " -> " + out.hash + ")");
        }
      }
    }
  }

  [[noreturn]] void fail(const std::string& message) { throw RecipeError(message, step_->id); }

  std::string require(const char* key) {
    auto v = step_->get(key);
    if (!v || v->empty()) fail(std::string("missing parameter '") + key + "'");
    return *v;
  }

  std::string param(const char* key, std::string fallback) {
    auto v = step_->get(key);
    return v ? *v : fallback;
  }

  std::size_t size_param(const char* key, std::size_t fallback) {
    auto v = step_->get(key);
    if (!v) return fallback;
    std::size_t out = 0;
    auto [end, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
    if (ec != std::errc() || end != v->data() + v->size()) {
      fail(std::string("parameter '") + key + "' must be a non-negative integer");
    }
    return out;
  }

  double real_param(const char* key, double fallback) {
    auto v = step_->get(key);
    if (!v) return fallback;
    double out = 0;
    auto [end, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
    if (ec != std::errc() || end != v->data() + v->size()) {
      fail(std::string("parameter '") + key + "' must be a number");
    }
    return out;
  }

  bool bool_param(const char* key, bool fallback) {
    auto v = step_->get(key);
    if (!v) return fallback;
    if (*v == "true" || *v == "yes" || *v == "1") return true;
    if (*v == "false" || *v == "no" || *v == "0") return false;
    fail(std::string("parameter '") + key + "' must be true or false");
  }

  // "@id.port" refers to an earlier output; anything else is a file path
  // relative to the recipe that declared the step.
  fs::path resolve(const std::string& value, const std::string& input_name,
                   const std::string& default_port = {}) {
    fs::path path;
    std::string shown;
    if (!value.empty() && value.front() == '@') {
      std::string ref = value.substr(1);
      std::string id = ref, port = default_port;
      if (auto dot = ref.find('.'); dot != std::string::npos) {
        id = ref.substr(0, dot);
        port = ref.substr(dot + 1);
      }
      auto step_it = ports_.find(id);
      if (step_it == ports_.end()) fail("reference to unknown or later step '" + id + "'");
      auto port_it = step_it->second.find(port);
      if (port_it == step_it->second.end()) fail("step '" + id + "' has no output '" + port + "'");
      path = port_it->second;
      shown = relative(path);
    } else {
      path = step_->base_dir / value;
      shown = value;
      if (!fs::exists(path)) fail("missing input '" + input_name + "': " + path.string());
    }
    std::string content = read_file(path);
    record_->inputs.push_back({input_name, shown, content_hash(content), count_lines(content)});
    return path;
  }

  std::string relative(const fs::path& p) const {
    return fs::path(p).lexically_relative(recipe_.workspace).generic_string();
  }

  fs::path output_path(const std::string& suffix) const {
    return recipe_.workspace / (step_->id + "." + suffix);
  }

  void add_output(const std::string& port, const fs::path& path, const std::string& content,
                  std::size_t rows) {
    write_file(path, content);
    record_->outputs.push_back({port, relative(path), content_hash(content), rows});
    ports_[step_->id][port] = path;
  }

  void add_lines_output(const std::string& port, const fs::path& path,
                        const std::vector<std::string>& lines) {
    std::string content;
    for (const auto& l : lines) content += l + '\n';
    add_output(port, path, content, lines.size());
  }

  void add_corpus_output(const corpus::ParallelCorpus& c) {
    std::vector<std::string> src, tgt;
    for (const auto& p : c.pairs) {
      src.push_back(p.source.text());
      tgt.push_back(p.target.text());
    }
    add_lines_output("source", output_path(std::string(to_string(recipe_.langs.source))), src);
    add_lines_output("target", output_path(std::string(to_string(recipe_.langs.target))), tgt);
    copied_[step_->id] = c.copied;
  }

  corpus::ParallelCorpus corpus_input(const std::string& ref, const std::string& name) {
    if (ref.empty() || ref.front() != '@') fail("'" + name + "' must reference a corpus step (@id)");
    std::string id = ref.substr(1);
    fs::path src = resolve("@" + id + ".source", name + ".source");
    fs::path tgt = resolve("@" + id + ".target", name + ".target");
    std::vector<std::string> s = read_lines(src), t = read_lines(tgt);
    if (s.size() != t.size()) throw AlignmentError(s.size(), t.size());
    corpus::ParallelCorpus c;
    c.langs = recipe_.langs;
    c.copied = copied_[id];
    for (std::size_t i = 0; i < s.size(); ++i) {
      c.pairs.push_back({corpus::Segment(s[i]), corpus::Segment(t[i]), id});
    }
    return c;
  }

  Lang step_lang() {
    if (auto l = step_->get("lang")) return lang_from_string(*l);
    std::string side = param("side", "");
    if (side == "source") return recipe_.langs.source;
    if (side == "target") return recipe_.langs.target;
    fail("set 'lang' or 'side' (source|target)");
  }

  void dispatch(const StepSpec& step) {
    if (step.kind == "clean") return run_clean();
    if (step.kind == "train-lm") return run_train_lm();
    if (step.kind == "select") return run_select();
    if (step.kind == "copy-augment") return run_copy();
    if (step.kind == "build-set") return run_build();
    if (step.kind == "bpe-learn") return run_bpe();
    if (step.kind == "emit-config") return run_config();
    if (step.kind == "evaluate") return run_evaluate();
    fail("unknown step kind '" + step.kind + "'");
  }

  void run_clean() {
    fs::path src = resolve(require("source"), "source");
    fs::path tgt = resolve(require("target"), "target");
    auto corpus = corpus::load_parallel(corpus::CorpusLocation::dual(src, tgt), recipe_.langs,
                                        param("provenance", step_->id));
    corpus::CleaningConfig config;
    config.min_tokens = size_param("min_tokens", config.min_tokens);
    config.max_tokens = size_param("max_tokens", config.max_tokens);
    config.max_length_ratio = real_param("max_ratio", config.max_length_ratio);
    config.drop_duplicates = bool_param("dedup", config.drop_duplicates);
    config.validate();
    auto [cleaned, report] = corpus::clean(corpus, config);
    if (report.retained_pairs + report.removed_total() != report.input_pairs ||
        cleaned.size() != report.retained_pairs) {
      fail("cleaning report does not conserve pairs");
    }
    add_corpus_output(cleaned);
    add_output("report", output_path("report.json"), report.to_json() + "\n", report.input_pairs);
  }

  void run_train_lm() {
    Lang lang = step_lang();
    fs::path input = resolve(require("input"), "input");
    auto lines = read_lines(input);
    int order = static_cast<int>(size_param("order", 4));
    auto smoothing = lm::parse_smoothing(param("smoothing", "kn"));
    auto model = selection::train_selection_lm(lines, lang, order, smoothing);
    std::size_t entries = 0;
    for (const auto& t : model.tables()) entries += t.size();
    add_output("model", output_path("arpa"), lm::to_arpa(model), entries);
  }

  void run_select() {
    auto candidates = corpus_input(require("corpus"), "corpus");
    auto model = [&](const char* key) {
      fs::path p = resolve(require(key), key, "model");
      return std::make_shared<lm::NGramModel>(lm::load_lm(p));
    };
    selection::LmQuad quad;
    quad.langs = recipe_.langs;
    quad.in_src = model("in_src");
    quad.out_src = model("out_src");
    quad.in_tgt = model("in_tgt");
    quad.out_tgt = model("out_tgt");
    quad.validate();
    std::size_t n = size_param("n", candidates.size());
    auto sel = selection::select_top(candidates, quad, n, static_cast<unsigned>(size_param("threads", 0)));
    add_corpus_output(sel.selected);
    add_output("scores", output_path("scores.tsv"), selection::scores_to_tsv(sel.scores),
               sel.scores.size());
  }

  void run_copy() {
    fs::path input = resolve(require("input"), "input");
    std::vector<corpus::Segment> mono;
    for (const auto& line : read_lines(input)) mono.emplace_back(line);
    add_corpus_output(selection::copy_augment(mono, param("provenance", step_->id), recipe_.langs));
  }

  void run_build() {
    auto base = corpus_input(require("base"), "base");
    std::vector<corpus::ParallelCorpus> additions;
    std::size_t k = 0;
    for (const auto& ref : split_list(param("add", ""))) {
      additions.push_back(corpus_input(ref, "add" + std::to_string(++k)));
    }
    std::uint64_t seed = size_param("seed", recipe_.seed);
    auto set = selection::build_finetune_set(base, additions, seed);
    add_corpus_output(set);
  }

  void run_bpe() {
    std::vector<std::vector<std::string>> corpora;
    std::size_t k = 0;
    auto inputs = split_list(require("inputs"));
    for (const auto& ref : inputs) corpora.push_back(read_lines(resolve(ref, "input" + std::to_string(++k))));
    bpe::LearnOptions options;
    options.num_merges = size_param("merges", options.num_merges);
    options.min_frequency = size_param("min_frequency", options.min_frequency);
    auto model = bpe::learn_bpe(corpora, options);
    add_output("model", output_path("bpe"), model.to_text(), model.num_merges());
  }

  void run_config() {
    std::map<std::string, std::string> overrides;
    for (const auto& [key, value] : step_->params) {
      if (key.starts_with("set.")) overrides[key.substr(4)] = value;
    }
    if (auto ref = step_->get("bpe")) {
      fs::path p = resolve(*ref, "bpe", "model");
      overrides["bpe_merges"] = std::to_string(bpe::load_bpe(p).num_merges());
    }
    auto config = gateway::emit_training_config(recipe_.langs, overrides);
    add_output("config", output_path("yaml"), gateway::to_text(config),
               gateway::training_config_fields().size());
  }

  // testset.NAME = reference file; system.LABEL.NAME = hypothesis file.
  // Writes one row per system with BLEU then chrF per test set; with
  // significance = true, p-values of BLEU against the first system.
  void run_evaluate() {
    std::vector<std::string> testsets;
    std::map<std::string, std::vector<std::string>> refs;
    std::vector<std::string> systems;
    std::map<std::pair<std::string, std::string>, std::vector<std::string>> hyps;
    for (const auto& [key, value] : step_->params) {
      if (key.starts_with("testset.")) {
        std::string name = key.substr(8);
        testsets.push_back(name);
        refs[name] = read_lines(resolve(value, key));
      }
    }
    for (const auto& [key, value] : step_->params) {
      if (!key.starts_with("system.")) continue;
      std::string rest = key.substr(7);
      auto dot = rest.rfind('.');
      if (dot == std::string::npos) fail("expected 'system.LABEL.TESTSET', got '" + key + "'");
      std::string label = rest.substr(0, dot), ts = rest.substr(dot + 1);
      if (!refs.contains(ts)) fail("unknown test set '" + ts + "' in '" + key + "'");
      if (std::find(systems.begin(), systems.end(), label) == systems.end()) systems.push_back(label);
      hyps[{label, ts}] = read_lines(resolve(value, key));
    }
    if (testsets.empty() || systems.empty()) fail("needs testset.* and system.* entries");
    bool significance = bool_param("significance", false);
    std::size_t iterations = size_param("iterations", 1000);

    std::string table = "#\tSystem";
    for (const auto& ts : testsets) table += "\tBLEU " + ts;
    for (const auto& ts : testsets) table += "\tchrF " + ts;
    if (significance) {
      for (const auto& ts : testsets) table += "\tp(BLEU) " + ts;
    }
    table += '\n';
    auto fmt = [](double v) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.2f", v);
      return std::string(buf);
    };
    for (std::size_t i = 0; i < systems.size(); ++i) {
      const auto& label = systems[i];
      std::string row = std::to_string(i + 1) + "\t" + label;
      std::vector<std::string> chrf_cells, p_cells;
      for (const auto& ts : testsets) {
        auto it = hyps.find({label, ts});
        if (it == hyps.end()) {
          row += "\t-";
          chrf_cells.push_back("-");
          p_cells.push_back("-");
          continue;
        }
        row += "\t" + fmt(metrics::bleu_corpus(it->second, refs[ts]).score);
        chrf_cells.push_back(fmt(metrics::chrf_corpus(it->second, refs[ts]).score));
        auto base = hyps.find({systems[0], ts});
        if (i == 0 || base == hyps.end()) {
          p_cells.push_back("-");
        } else {
          auto sig = metrics::paired_bootstrap(it->second, base->second, refs[ts],
                                               metrics::Metric::bleu, iterations, recipe_.seed, 1);
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.4f", sig.p_value);
          p_cells.push_back(buf);
        }
      }
      for (const auto& c : chrf_cells) row += "\t" + c;
      if (significance) {
        for (const auto& c : p_cells) row += "\t" + c;
      }
      table += row + '\n';
    }
    add_output("summary", output_path("tsv"), table, systems.size());
  }

  const Recipe& recipe_;
  std::ostream* log_;
  RunResult result_;
  const StepSpec* step_ = nullptr;
  StepRecord* record_ = nullptr;
  std::map<std::string, std::map<std::string, fs::path>> ports_;
  std::map<std::string, bool> copied_;
};

}  // namespace

RunResult run_recipe(const Recipe& recipe, std::ostream* log) {
  if (recipe.workspace.empty()) throw RecipeError("recipe has no workspace");
  if (recipe.steps.empty()) throw RecipeError("recipe has no steps");
  Runner runner(recipe, log);
  return runner.run();
}

std::vector<std::string> diff_manifests(const Manifest& a, const Manifest& b) {
  std::vector<std::string> out;
  if (a.recipe != b.recipe) out.push_back("recipe: " + a.recipe + " vs " + b.recipe);
  if (a.seed != b.seed) out.push_back("seed: " + std::to_string(a.seed) + " vs " + std::to_string(b.seed));
  if (a.langs != b.langs) out.push_back("languages: " + to_string(a.langs) + " vs " + to_string(b.langs));
  auto compare_artifacts = [&](const std::string& id, const char* what,
                               const std::vector<ArtifactRecord>& x,
                               const std::vector<ArtifactRecord>& y) {
    for (const auto& ax : x) {
      auto it = std::find_if(y.begin(), y.end(), [&](const ArtifactRecord& r) { return r.name == ax.name; });
      if (it == y.end()) {
        out.push_back(id + ": " + what + " '" + ax.name + "' only in A");
      } else if (it->hash != ax.hash || it->rows != ax.rows) {
        out.push_back(id + ": " + what + " '" + ax.name + "' differs (" + ax.hash + ", " +
                      std::to_string(ax.rows) + " rows vs " + it->hash + ", " +
                      std::to_string(it->rows) + " rows)");
      }
    }
    for (const auto& ay : y) {
      if (std::none_of(x.begin(), x.end(), [&](const ArtifactRecord& r) { return r.name == ay.name; })) {
        out.push_back(id + ": " + what + " '" + ay.name + "' only in B");
      }
    }
  };
  for (const auto& sa : a.steps) {
    const StepRecord* sb = b.find(sa.id);
    if (sb == nullptr) {
      out.push_back(sa.id + ": step only in A");
      continue;
    }
    if (sa.kind != sb->kind) out.push_back(sa.id + ": kind " + sa.kind + " vs " + sb->kind);
    if (sa.params != sb->params) out.push_back(sa.id + ": parameters differ");
    compare_artifacts(sa.id, "input", sa.inputs, sb->inputs);
    compare_artifacts(sa.id, "output", sa.outputs, sb->outputs);
  }
  for (const auto& sb : b.steps) {
    if (a.find(sb.id) == nullptr) out.push_back(sb.id + ": step only in B");
  }
  return out;
}

}  // namespace mtkit::recipe
