#include "mtkit/ngram_lm.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "mtkit/errors.hpp"
#include "mtkit/text_io.hpp"
#include "mtkit/unicode.hpp"

namespace mtkit::lm {

namespace {

// ARPA files conventionally give p(<s>) as -99 since it is never predicted.
constexpr double kBosLog = -99.0;
constexpr double kFloorLog2 = -99.0 * 3.321928094887362;
constexpr int kMaxOrder = 5;

using Key = std::vector<TokenId>;

std::string format_double(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

}  // namespace

std::string_view to_string(Smoothing smoothing) {
  switch (smoothing) {
    case Smoothing::interpolated_modified_kneser_ney: return "interpolated_modified_kneser_ney";
    case Smoothing::witten_bell: return "witten_bell";
  }
  return "unknown";
}

Smoothing parse_smoothing(std::string_view name) {
  if (name == "kn" || name == "mkn" || name == "interpolated_modified_kneser_ney") {
    return Smoothing::interpolated_modified_kneser_ney;
  }
  if (name == "wb" || name == "witten_bell") return Smoothing::witten_bell;
  throw ConfigError("unknown smoothing '" + std::string(name) +
                    "' (expected kn or wb)");
}

Vocabulary::Vocabulary() {
  add(kUnk);
  add(kBos);
  add(kEos);
}

TokenId Vocabulary::add(std::string_view word) {
  auto it = ids_.find(std::string(word));
  if (it != ids_.end()) return it->second;
  auto id = static_cast<TokenId>(words_.size());
  words_.emplace_back(word);
  ids_.emplace(std::string(word), id);
  return id;
}

TokenId Vocabulary::lookup(std::string_view word) const {
  auto it = ids_.find(std::string(word));
  if (it == ids_.end() || it->second == kBosId || it->second == kEosId) return kUnkId;
  return it->second;
}

bool Vocabulary::contains(std::string_view word) const {
  return ids_.count(std::string(word)) > 0;
}

std::size_t NGramKeyHash::operator()(const std::vector<TokenId>& key) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (TokenId id : key) {
    h ^= id + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

NGramModel::NGramModel(int order, Smoothing smoothing, Vocabulary vocabulary,
                       std::vector<NGramTable> tables, std::string preprocessing)
    : order_(order),
      smoothing_(smoothing),
      vocab_(std::move(vocabulary)),
      tables_(std::move(tables)),
      preprocessing_(std::move(preprocessing)) {}

double NGramModel::log2_prob(std::span<const TokenId> context, TokenId word) const {
  const std::size_t max_ctx =
      std::min<std::size_t>(static_cast<std::size_t>(order_ - 1), context.size());
  auto ctx = context.subspan(context.size() - max_ctx);
  double backoff = 0.0;
  Key key;
  key.reserve(max_ctx + 1);
  for (std::size_t len = max_ctx + 1; len-- > 0;) {
    auto hist = ctx.subspan(ctx.size() - len);
    key.assign(hist.begin(), hist.end());
    key.push_back(word);
    const auto& table = tables_[len];
    if (auto it = table.find(key); it != table.end()) {
      return backoff + it->second.log2_prob;
    }
    if (len > 0) {
      key.pop_back();
      const auto& ctx_table = tables_[len - 1];
      if (auto it = ctx_table.find(key); it != ctx_table.end()) {
        backoff += it->second.log2_backoff;
      }
    }
  }
  return backoff + kFloorLog2;
}

double NGramModel::log2_prob(const std::vector<std::string>& context,
                             std::string_view word) const {
  std::vector<TokenId> ids;
  ids.reserve(context.size());
  for (const auto& w : context) {
    ids.push_back(w == kBos ? Vocabulary::kBosId : vocab_.lookup(w));
  }
  TokenId target = word == kEos ? Vocabulary::kEosId : vocab_.lookup(word);
  return log2_prob(ids, target);
}

std::vector<TokenId> NGramModel::predictable() const {
  std::vector<TokenId> out;
  out.reserve(vocab_.size());
  for (TokenId id = 0; id < vocab_.size(); ++id) {
    if (id != Vocabulary::kBosId) out.push_back(id);
  }
  return out;
}

ScoredSequence NGramModel::score_tokens(const std::vector<std::string>& tokens) const {
  ScoredSequence result;
  result.tokens = tokens;
  std::vector<TokenId> history;
  history.reserve(tokens.size() + 1);
  history.push_back(Vocabulary::kBosId);
  double total = 0.0;
  for (const auto& tok : tokens) {
    TokenId id = vocab_.lookup(tok);
    total += log2_prob(history, id);
    history.push_back(id);
  }
  total += log2_prob(history, Vocabulary::kEosId);
  result.log2_prob = total;
  result.cross_entropy_bits_per_token = -total / static_cast<double>(tokens.size() + 1);
  return result;
}

ScoredSequence NGramModel::score(std::string_view segment) const {
  std::vector<std::string> tokens;
  for (auto tok : unicode::split_whitespace(segment)) tokens.emplace_back(tok);
  return score_tokens(tokens);
}

namespace {

struct ContextStats {
  double total = 0.0;  // sum of counts of h.
  std::array<double, 3> by_count{};  // N1(h.), N2(h.), N3+(h.)
  double types = 0.0;
};

struct OrderCounts {
  std::map<Key, double> counts;  // ordered: deterministic iteration
  std::map<Key, ContextStats> contexts;
  std::array<double, 3> discount{};
};

std::optional<std::array<double, 3>> kn_discounts(const std::map<Key, double>& counts) {
  std::array<double, 5> coc{};
  for (const auto& [key, c] : counts) {
    auto k = static_cast<std::size_t>(c);
    if (k >= 1 && k <= 4) coc[k] += 1.0;
  }
  const double n1 = coc[1], n2 = coc[2], n3 = coc[3], n4 = coc[4];
  if (n1 <= 0 || n2 <= 0 || n3 <= 0) return std::nullopt;
  const double y = n1 / (n1 + 2.0 * n2);
  std::array<double, 3> d = {1.0 - 2.0 * y * n2 / n1, 2.0 - 3.0 * y * n3 / n2,
                             3.0 - 4.0 * y * n4 / n3};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!(d[i] > 0.0) || d[i] > static_cast<double>(i + 1)) return std::nullopt;
  }
  return d;
}

}  // namespace

NGramModel train_lm(const std::vector<std::string>& corpus, const TrainOptions& options) {
  if (options.order < 1 || options.order > kMaxOrder) {
    throw ConfigError("n-gram order must be in [1, 5], got " + std::to_string(options.order));
  }
  if (corpus.empty()) throw TrainingError("cannot train a language model on an empty corpus");

  const int order = options.order;
  Vocabulary vocab;
  std::vector<Key> sentences;
  sentences.reserve(corpus.size());
  for (const auto& line : corpus) {
    Key ids{Vocabulary::kBosId};
    for (auto tok : unicode::split_whitespace(line)) {
      if (tok == kBos || tok == kEos) {
        ids.push_back(Vocabulary::kUnkId);
      } else {
        ids.push_back(vocab.add(tok));
      }
    }
    ids.push_back(Vocabulary::kEosId);
    sentences.push_back(std::move(ids));
  }

  // Raw counts of every n-gram ending on a predicted position.
  std::vector<std::map<Key, double>> raw(order);
  for (const auto& s : sentences) {
    for (std::size_t i = 1; i < s.size(); ++i) {
      for (int n = 1; n <= order && static_cast<std::size_t>(n) <= i + 1; ++n) {
        Key key(s.begin() + static_cast<std::ptrdiff_t>(i + 1 - n),
                s.begin() + static_cast<std::ptrdiff_t>(i + 1));
        raw[n - 1][key] += 1.0;
      }
    }
  }

  auto build_counts = [&](bool kneser_ney) {
    std::vector<OrderCounts> orders(order);
    for (int n = 1; n <= order; ++n) {
      auto& counts = orders[n - 1].counts;
      if (!kneser_ney || n == order) {
        counts = raw[n - 1];
        continue;
      }
      // Continuation counts: distinct left extensions, except for n-grams
      // anchored at <s>, which cannot be extended and keep raw counts.
      for (const auto& [key, c] : raw[n - 1]) {
        if (key.front() == Vocabulary::kBosId) counts[key] = c;
      }
      for (const auto& [key, c] : raw[n]) {
        Key suffix(key.begin() + 1, key.end());
        counts[suffix] += 1.0;
      }
    }
    for (auto& oc : orders) {
      for (const auto& [key, c] : oc.counts) {
        Key ctx(key.begin(), key.end() - 1);
        auto& st = oc.contexts[ctx];
        st.total += c;
        st.types += 1.0;
        st.by_count[std::min<std::size_t>(static_cast<std::size_t>(c), 3) - 1] += 1.0;
      }
    }
    return orders;
  };

  Smoothing smoothing = options.smoothing;
  std::vector<OrderCounts> orders;
  if (smoothing == Smoothing::interpolated_modified_kneser_ney) {
    orders = build_counts(true);
    for (auto& oc : orders) {
      auto d = kn_discounts(oc.counts);
      if (!d) {
        smoothing = Smoothing::witten_bell;
        break;
      }
      oc.discount = *d;
    }
  }
  if (smoothing == Smoothing::witten_bell) orders = build_counts(false);

  const bool kn = smoothing == Smoothing::interpolated_modified_kneser_ney;
  const double predicted_types = static_cast<double>(vocab.size() - 1);

  // Lower-order weight for context h and the discounted mass of h w.
  auto lower_weight = [&](const OrderCounts& oc, const ContextStats& st) {
    if (kn) {
      return (oc.discount[0] * st.by_count[0] + oc.discount[1] * st.by_count[1] +
              oc.discount[2] * st.by_count[2]) /
             st.total;
    }
    return st.types / (st.total + st.types);
  };
  auto own_mass = [&](const OrderCounts& oc, const ContextStats& st, double c) {
    if (kn) {
      double d = oc.discount[std::min<std::size_t>(static_cast<std::size_t>(c), 3) - 1];
      return std::max(c - d, 0.0) / st.total;
    }
    return c / (st.total + st.types);
  };

  std::vector<NGramTable> tables(order);
  NGramModel partial;

  // Unigrams: interpolate with the uniform distribution over predictable
  // symbols, which gives <unk> its share of the discounted mass.
  {
    const auto& oc = orders[0];
    const ContextStats& st = oc.contexts.at(Key{});
    const double gamma = lower_weight(oc, st);
    auto& table = tables[0];
    for (TokenId id = 0; id < vocab.size(); ++id) {
      if (id == Vocabulary::kBosId) {
        table[Key{id}] = {kBosLog, 0.0};
        continue;
      }
      auto it = oc.counts.find(Key{id});
      double c = it == oc.counts.end() ? 0.0 : it->second;
      double p = (c > 0 ? own_mass(oc, st, c) : 0.0) + gamma / predicted_types;
      table[Key{id}] = {std::log2(p), 0.0};
    }
  }

  for (int n = 2; n <= order; ++n) {
    // Lower orders are complete; query them through a partial model.
    partial = NGramModel(n - 1, smoothing, vocab,
                         std::vector<NGramTable>(tables.begin(), tables.begin() + (n - 1)),
                         options.preprocessing);
    const auto& oc = orders[n - 1];
    auto& table = tables[n - 1];
    for (const auto& [ctx, st] : oc.contexts) {
      const double gamma = lower_weight(oc, st);
      auto& ctx_entry = tables[n - 2][ctx];
      ctx_entry.log2_backoff = std::log2(gamma);
    }
    for (const auto& [key, c] : oc.counts) {
      Key ctx(key.begin(), key.end() - 1);
      const ContextStats& st = oc.contexts.at(ctx);
      const double gamma = lower_weight(oc, st);
      std::span<const TokenId> lower_ctx(key.data() + 1, key.size() - 2);
      double lower = std::exp2(partial.log2_prob(lower_ctx, key.back()));
      double p = own_mass(oc, st, c) + gamma * lower;
      table[key] = {std::log2(p), 0.0};
    }
  }
  return NGramModel(order, smoothing, std::move(vocab), std::move(tables),
                    options.preprocessing);
}

double cross_entropy(const NGramModel& model, std::string_view segment) {
  return model.score(segment).cross_entropy_bits_per_token;
}

double CorpusScore::cross_entropy() const {
  return predicted_tokens ? total_bits / static_cast<double>(predicted_tokens) : 0.0;
}

double CorpusScore::perplexity() const { return std::exp2(cross_entropy()); }

CorpusScore score_corpus(const NGramModel& model, const std::vector<std::string>& corpus) {
  CorpusScore out;
  for (const auto& line : corpus) {
    auto s = model.score(line);
    out.total_bits += -s.log2_prob;
    out.predicted_tokens += s.tokens.size() + 1;
  }
  return out;
}

double perplexity(const NGramModel& model, const std::vector<std::string>& corpus) {
  return score_corpus(model, corpus).perplexity();
}

std::string to_arpa(const NGramModel& model) {
  const auto& vocab = model.vocabulary();
  std::ostringstream out;
  out << "mtkit-lm 1\n"
      << "log-base 2\n"
      << "smoothing " << to_string(model.smoothing()) << "\n"
      << "preprocessing " << model.preprocessing() << "\n\n";
  out << "\\data\\\n";
  for (int n = 1; n <= model.order(); ++n) {
    out << "ngram " << n << "=" << model.tables()[n - 1].size() << "\n";
  }
  for (int n = 1; n <= model.order(); ++n) {
    out << "\n\\" << n << "-grams:\n";
    std::vector<std::pair<std::vector<std::string>, const NGramEntry*>> rows;
    rows.reserve(model.tables()[n - 1].size());
    for (const auto& [key, entry] : model.tables()[n - 1]) {
      std::vector<std::string> words;
      for (TokenId id : key) words.push_back(vocab.word(id));
      rows.emplace_back(std::move(words), &entry);
    }
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [words, entry] : rows) {
      out << format_double(entry->log2_prob) << '\t';
      for (std::size_t i = 0; i < words.size(); ++i) {
        if (i) out << ' ';
        out << words[i];
      }
      if (n < model.order()) out << '\t' << format_double(entry->log2_backoff);
      out << '\n';
    }
  }
  out << "\n\\end\\\n";
  return out.str();
}

namespace {

double parse_number(std::string_view text, std::size_t line) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("expected a number, got '" + std::string(text) + "'", line);
  }
  return value;
}

}  // namespace

NGramModel parse_arpa(std::string_view content) {
  auto lines = split_lines(content);
  double log_scale = 3.321928094887362;  // log10 -> log2 unless declared
  Smoothing smoothing = Smoothing::interpolated_modified_kneser_ney;
  std::string preprocessing = "none";

  std::size_t i = 0;
  for (; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (line == "\\data\\") break;
    auto fields = unicode::split_whitespace(line);
    if (fields.size() == 2 && fields[0] == "log-base") {
      if (fields[1] == "2") {
        log_scale = 1.0;
      } else if (fields[1] != "10") {
        throw ParseError("unsupported log base '" + std::string(fields[1]) + "'", i + 1);
      }
    } else if (fields.size() == 2 && fields[0] == "smoothing") {
      try {
        smoothing = parse_smoothing(fields[1]);
      } catch (const ConfigError& e) {
        throw ParseError(e.what(), i + 1);
      }
    } else if (fields.size() == 2 && fields[0] == "preprocessing") {
      preprocessing = std::string(fields[1]);
    }
  }
  if (i == lines.size()) throw ParseError("missing \\data\\ section", lines.size() + 1);
  ++i;

  std::vector<std::size_t> declared;
  for (; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (line.empty()) continue;
    if (line.rfind("ngram ", 0) != 0) break;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("malformed ngram count line", i + 1);
    auto n = static_cast<std::size_t>(parse_number(line.substr(6, eq - 6), i + 1));
    auto count = static_cast<std::size_t>(parse_number(line.substr(eq + 1), i + 1));
    if (n != declared.size() + 1) throw ParseError("ngram counts out of order", i + 1);
    declared.push_back(count);
  }
  if (declared.empty()) throw ParseError("no ngram counts declared", i + 1);
  if (declared.size() > static_cast<std::size_t>(kMaxOrder)) {
    throw ParseError("order exceeds 5", i + 1);
  }

  const int order = static_cast<int>(declared.size());
  Vocabulary vocab;
  std::vector<NGramTable> tables(order);
  int current = 0;
  bool ended = false;
  for (; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (line.empty()) continue;
    if (line == "\\end\\") {
      ended = true;
      break;
    }
    if (line.front() == '\\') {
      auto dash = line.find("-grams:");
      if (dash == std::string_view::npos) {
        throw ParseError("unknown section '" + std::string(line) + "'", i + 1);
      }
      int n = static_cast<int>(parse_number(line.substr(1, dash - 1), i + 1));
      if (n != current + 1 || n > order) throw ParseError("unexpected section", i + 1);
      current = n;
      continue;
    }
    if (current == 0) throw ParseError("n-gram line outside a section", i + 1);
    auto fields = unicode::split_whitespace(line);
    const auto n = static_cast<std::size_t>(current);
    if (fields.size() != n + 1 && fields.size() != n + 2) {
      throw ParseError("expected " + std::to_string(n + 1) + " or " + std::to_string(n + 2) +
                           " fields, found " + std::to_string(fields.size()),
                       i + 1);
    }
    NGramEntry entry;
    entry.log2_prob = parse_number(fields[0], i + 1);
    if (entry.log2_prob != kBosLog) entry.log2_prob *= log_scale;
    if (fields.size() == n + 2) entry.log2_backoff = parse_number(fields[n + 1], i + 1) * log_scale;
    Key key;
    for (std::size_t k = 1; k <= n; ++k) key.push_back(vocab.add(fields[k]));
    if (!tables[n - 1].emplace(std::move(key), entry).second) {
      throw ParseError("duplicate n-gram", i + 1);
    }
  }
  if (!ended) throw ParseError("missing \\end\\ marker", lines.size() + 1);
  for (int n = 1; n <= order; ++n) {
    if (tables[n - 1].size() != declared[n - 1]) {
      throw ParseError("header declares " + std::to_string(declared[n - 1]) + " " +
                           std::to_string(n) + "-grams, found " +
                           std::to_string(tables[n - 1].size()),
                       lines.size());
    }
  }
  return NGramModel(order, smoothing, std::move(vocab), std::move(tables),
                    std::move(preprocessing));
}

void save_lm(const NGramModel& model, const std::filesystem::path& path) {
  write_file(path, to_arpa(model));
}

NGramModel load_lm(const std::filesystem::path& path) {
  try {
    return parse_arpa(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.detail(), e.line());
  }
}

}  // namespace mtkit::lm
