#include "mtkit/data_selection.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <random>
#include <thread>

#include "mtkit/errors.hpp"
#include "mtkit/pipeline/normalize.hpp"
#include "mtkit/pipeline/tokenizer.hpp"
#include "mtkit/text_io.hpp"
#include "mtkit/unicode.hpp"

namespace mtkit::selection {

std::string prepare_for_lm(std::string_view text, Lang lang) {
  std::string normalized = pipeline::normalize_chars(text, lang);
  std::string out;
  for (const auto& tok : pipeline::tokenize(normalized, lang)) {
    if (!out.empty()) out += ' ';
    out += unicode::to_lower(tok);
  }
  return out;
}

std::string preprocessing_tag(Lang lang) { return "tok-lc:" + std::string(to_string(lang)); }

lm::NGramModel train_selection_lm(const std::vector<std::string>& texts, Lang lang, int order,
                                  lm::Smoothing smoothing) {
  std::vector<std::string> prepared;
  prepared.reserve(texts.size());
  for (const auto& t : texts) prepared.push_back(prepare_for_lm(t, lang));
  lm::TrainOptions options;
  options.order = order;
  options.smoothing = smoothing;
  options.preprocessing = preprocessing_tag(lang);
  return lm::train_lm(prepared, options);
}

namespace {

void check_model(const std::shared_ptr<const lm::NGramModel>& model, const char* role, Lang lang,
                 bool allow_untagged) {
  if (!model) throw ConfigError(std::string("missing ") + role + " language model");
  const std::string& tag = model->preprocessing();
  if (tag == preprocessing_tag(lang)) return;
  if (tag == "none" && allow_untagged) return;
  throw ConfigError(std::string(role) + " language model was prepared as '" + tag +
                    "', expected '" + preprocessing_tag(lang) + "'");
}

}  // namespace

void LmQuad::validate(bool allow_untagged) const {
  check_model(in_src, "in-domain source", langs.source, allow_untagged);
  check_model(out_src, "out-of-domain source", langs.source, allow_untagged);
  check_model(in_tgt, "in-domain target", langs.target, allow_untagged);
  check_model(out_tgt, "out-of-domain target", langs.target, allow_untagged);
}

LmQuad LmQuad::load(LanguagePair langs, const std::filesystem::path& in_src,
                    const std::filesystem::path& out_src, const std::filesystem::path& in_tgt,
                    const std::filesystem::path& out_tgt) {
  LmQuad quad;
  quad.langs = langs;
  quad.in_src = std::make_shared<lm::NGramModel>(lm::load_lm(in_src));
  quad.out_src = std::make_shared<lm::NGramModel>(lm::load_lm(out_src));
  quad.in_tgt = std::make_shared<lm::NGramModel>(lm::load_lm(in_tgt));
  quad.out_tgt = std::make_shared<lm::NGramModel>(lm::load_lm(out_tgt));
  return quad;
}

double score_monolingual(std::string_view prepared, const lm::NGramModel& in_model,
                         const lm::NGramModel& out_model) {
  return lm::cross_entropy(in_model, prepared) - lm::cross_entropy(out_model, prepared);
}

namespace {

SelectionScore score_prepared(const corpus::SegmentPair& pair, const LmQuad& quad,
                              std::size_t index) {
  std::string src = prepare_for_lm(pair.source.text(), quad.langs.source);
  std::string tgt = prepare_for_lm(pair.target.text(), quad.langs.target);
  SelectionScore s;
  s.pair_index = index;
  s.h_in_src = lm::cross_entropy(*quad.in_src, src);
  s.h_out_src = lm::cross_entropy(*quad.out_src, src);
  s.h_in_tgt = lm::cross_entropy(*quad.in_tgt, tgt);
  s.h_out_tgt = lm::cross_entropy(*quad.out_tgt, tgt);
  s.score = (s.h_in_src - s.h_out_src) + (s.h_in_tgt - s.h_out_tgt);
  return s;
}

void check_langs(LanguagePair langs, const LmQuad& quad) {
  if (langs != quad.langs) {
    throw ConfigError("corpus is " + to_string(langs) + " but the language models are " +
                      to_string(quad.langs));
  }
}

}  // namespace

SelectionScore score_bilingual(const corpus::SegmentPair& pair, LanguagePair langs,
                               const LmQuad& quad, std::size_t index) {
  check_langs(langs, quad);
  quad.validate(true);
  return score_prepared(pair, quad, index);
}

std::vector<SelectionScore> score_corpus(const corpus::ParallelCorpus& corpus, const LmQuad& quad,
                                         unsigned threads) {
  check_langs(corpus.langs, quad);
  quad.validate(true);
  std::vector<SelectionScore> scores(corpus.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, corpus.size())));
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) scores[i] = score_prepared(corpus.pairs[i], quad, i);
  };
  if (threads <= 1) {
    work(0, corpus.size());
    return scores;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (corpus.size() + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    std::size_t begin = t * chunk;
    std::size_t end = std::min(corpus.size(), begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(work, begin, end);
  }
  for (auto& th : pool) th.join();
  return scores;
}

std::vector<std::size_t> rank_lowest(const std::vector<SelectionScore>& scores, std::size_t n) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  auto less = [&](std::size_t a, std::size_t b) {
    if (scores[a].score != scores[b].score) return scores[a].score < scores[b].score;
    return scores[a].pair_index < scores[b].pair_index;
  };
  n = std::min(n, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n), order.end(), less);
  order.resize(n);
  return order;
}

Selection select_top(const corpus::ParallelCorpus& corpus, const LmQuad& quad, std::size_t n,
                     unsigned threads) {
  Selection result;
  result.scores = score_corpus(corpus, quad, threads);
  result.selected.langs = corpus.langs;
  result.selected.copied = corpus.copied;
  for (std::size_t i : rank_lowest(result.scores, n)) {
    result.selected.pairs.push_back(corpus.pairs[i]);
  }
  return result;
}

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

double parse_double(std::string_view s, std::size_t line) {
  double v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) {
    throw ParseError("bad number '" + std::string(s) + "'", line);
  }
  return v;
}

constexpr std::string_view kTsvHeader = "index\th_in_src\th_out_src\th_in_tgt\th_out_tgt\tscore";

}  // namespace

std::string scores_to_tsv(const std::vector<SelectionScore>& scores) {
  std::string out(kTsvHeader);
  out += '\n';
  for (const auto& s : scores) {
    out += std::to_string(s.pair_index);
    for (double v : {s.h_in_src, s.h_out_src, s.h_in_tgt, s.h_out_tgt, s.score}) {
      out += '\t';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

std::vector<SelectionScore> scores_from_tsv(std::string_view content) {
  auto lines = split_lines(content);
  std::vector<SelectionScore> scores;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i == 0 && lines[i] == kTsvHeader) continue;
    if (lines[i].empty()) continue;
    std::vector<std::string_view> f;
    std::string_view rest = lines[i];
    while (true) {
      auto tab = rest.find('\t');
      f.push_back(rest.substr(0, tab));
      if (tab == std::string_view::npos) break;
      rest.remove_prefix(tab + 1);
    }
    if (f.size() != 6) throw FormatError("expected 6 columns", i + 1);
    SelectionScore s;
    s.pair_index = static_cast<std::size_t>(parse_double(f[0], i + 1));
    s.h_in_src = parse_double(f[1], i + 1);
    s.h_out_src = parse_double(f[2], i + 1);
    s.h_in_tgt = parse_double(f[3], i + 1);
    s.h_out_tgt = parse_double(f[4], i + 1);
    s.score = parse_double(f[5], i + 1);
    scores.push_back(s);
  }
  return scores;
}

corpus::ParallelCorpus copy_augment(const std::vector<corpus::Segment>& mono_target,
                                    const std::string& provenance, LanguagePair langs) {
  corpus::ParallelCorpus out;
  out.langs = langs;
  out.copied = true;
  out.pairs.reserve(mono_target.size());
  for (const auto& seg : mono_target) out.pairs.push_back({seg, seg, provenance});
  return out;
}

corpus::ParallelCorpus build_finetune_set(const corpus::ParallelCorpus& base,
                                          const std::vector<corpus::ParallelCorpus>& additions,
                                          std::uint64_t seed) {
  base.validate();
  corpus::ParallelCorpus out;
  out.langs = base.langs;
  out.pairs = base.pairs;
  for (std::size_t k = 0; k < additions.size(); ++k) {
    const auto& add = additions[k];
    bool source_ok = add.copied || add.langs.source == base.langs.source;
    if (!source_ok || add.langs.target != base.langs.target) {
      throw ConfigError("addition " + std::to_string(k + 1) + " is " + to_string(add.langs) +
                        (add.copied ? " (copied)" : "") + ", base is " + to_string(base.langs));
    }
    out.pairs.insert(out.pairs.end(), add.pairs.begin(), add.pairs.end());
  }
  std::mt19937_64 engine(seed);
  for (std::size_t i = out.pairs.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(uniform_below(engine, i));
    std::swap(out.pairs[i - 1], out.pairs[j]);
  }
  return out;
}

}  // namespace mtkit::selection
