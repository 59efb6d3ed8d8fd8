#include "mtkit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "mtkit/errors.hpp"
#include "mtkit/hash.hpp"
#include "mtkit/unicode.hpp"

namespace mtkit::metrics {

namespace {

void check_pairing(std::size_t hyps, std::size_t refs) {
  if (hyps != refs) {
    throw PairingError(std::to_string(hyps) + " hypotheses but " + std::to_string(refs) +
                       " references");
  }
  if (hyps == 0) throw PairingError("no segments to score");
}

using NgramCounts = std::unordered_map<std::string, std::size_t>;

NgramCounts word_ngrams(const std::vector<std::string_view>& tokens, std::size_t n) {
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key(tokens[i]);
    for (std::size_t k = 1; k < n; ++k) {
      key += ' ';
      key += tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

std::size_t clipped_matches(const NgramCounts& hyp, const NgramCounts& ref) {
  std::size_t m = 0;
  for (const auto& [gram, count] : hyp) {
    auto it = ref.find(gram);
    if (it != ref.end()) m += std::min(count, it->second);
  }
  return m;
}

}  // namespace

BleuStats& BleuStats::operator+=(const BleuStats& o) {
  for (int n = 0; n < kBleuOrder; ++n) {
    matches[n] += o.matches[n];
    hyp_ngrams[n] += o.hyp_ngrams[n];
    ref_ngrams[n] += o.ref_ngrams[n];
  }
  hyp_length += o.hyp_length;
  ref_length += o.ref_length;
  return *this;
}

BleuStats bleu_stats(std::string_view hypothesis, std::string_view reference) {
  auto hyp = unicode::split_whitespace(hypothesis);
  auto ref = unicode::split_whitespace(reference);
  BleuStats s;
  s.hyp_length = hyp.size();
  s.ref_length = ref.size();
  for (int n = 1; n <= kBleuOrder; ++n) {
    auto h = word_ngrams(hyp, n);
    auto r = word_ngrams(ref, n);
    s.matches[n - 1] = clipped_matches(h, r);
    s.hyp_ngrams[n - 1] = hyp.size() >= static_cast<std::size_t>(n) ? hyp.size() - n + 1 : 0;
    s.ref_ngrams[n - 1] = ref.size() >= static_cast<std::size_t>(n) ? ref.size() - n + 1 : 0;
  }
  return s;
}

BleuScore bleu_from_stats(const BleuStats& stats) {
  BleuScore out;
  out.stats = stats;
  out.hyp_length = stats.hyp_length;
  out.ref_length = stats.ref_length;
  const double c = static_cast<double>(stats.hyp_length);
  const double r = static_cast<double>(stats.ref_length);
  if (stats.hyp_length > stats.ref_length || stats.ref_length == 0) {
    out.brevity_penalty = 1.0;
  } else if (stats.hyp_length == 0) {
    out.brevity_penalty = 0.0;
  } else {
    out.brevity_penalty = std::exp(1.0 - r / c);
  }
  double log_sum = 0;
  int used = 0;
  bool zero = false;
  for (int n = 0; n < kBleuOrder; ++n) {
    if (stats.hyp_ngrams[n] == 0 && stats.ref_ngrams[n] == 0) continue;
    ++used;
    if (stats.hyp_ngrams[n] == 0 || stats.matches[n] == 0) {
      out.precisions[n] = 0;
      zero = true;
      continue;
    }
    out.precisions[n] =
        static_cast<double>(stats.matches[n]) / static_cast<double>(stats.hyp_ngrams[n]);
    log_sum += std::log(out.precisions[n]);
  }
  if (zero) {
    out.score = 0;
  } else if (used == 0) {
    out.score = 100.0 * out.brevity_penalty;
  } else {
    out.score = 100.0 * out.brevity_penalty * std::exp(log_sum / used);
  }
  return out;
}

BleuScore bleu_corpus(const std::vector<std::string>& hypotheses,
                      const std::vector<std::string>& references) {
  check_pairing(hypotheses.size(), references.size());
  BleuStats total;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) total += bleu_stats(hypotheses[i], references[i]);
  return bleu_from_stats(total);
}

ChrfStats& ChrfStats::operator+=(const ChrfStats& o) {
  if (matches.size() < o.matches.size()) {
    matches.resize(o.matches.size());
    hyp_ngrams.resize(o.matches.size());
    ref_ngrams.resize(o.matches.size());
  }
  for (std::size_t n = 0; n < o.matches.size(); ++n) {
    matches[n] += o.matches[n];
    hyp_ngrams[n] += o.hyp_ngrams[n];
    ref_ngrams[n] += o.ref_ngrams[n];
  }
  return *this;
}

namespace {

std::u32string strip_spaces(std::string_view text) {
  std::u32string out;
  for (char32_t cp : unicode::decode(text)) {
    if (!unicode::is_space(cp)) out.push_back(cp);
  }
  return out;
}

std::unordered_map<std::u32string, std::size_t> char_ngrams(const std::u32string& s, std::size_t n) {
  std::unordered_map<std::u32string, std::size_t> counts;
  if (s.size() < n) return counts;
  for (std::size_t i = 0; i + n <= s.size(); ++i) ++counts[s.substr(i, n)];
  return counts;
}

}  // namespace

ChrfStats chrf_stats(std::string_view hypothesis, std::string_view reference, int char_order) {
  if (char_order < 1) throw ConfigError("chrF character order must be at least 1");
  std::u32string hyp = strip_spaces(hypothesis);
  std::u32string ref = strip_spaces(reference);
  ChrfStats s;
  s.matches.assign(char_order, 0);
  s.hyp_ngrams.assign(char_order, 0);
  s.ref_ngrams.assign(char_order, 0);
  for (int n = 1; n <= char_order; ++n) {
    auto h = char_ngrams(hyp, n);
    auto r = char_ngrams(ref, n);
    std::size_t m = 0;
    for (const auto& [gram, count] : h) {
      auto it = r.find(gram);
      if (it != r.end()) m += std::min(count, it->second);
    }
    s.matches[n - 1] = m;
    s.hyp_ngrams[n - 1] = hyp.size() >= static_cast<std::size_t>(n) ? hyp.size() - n + 1 : 0;
    s.ref_ngrams[n - 1] = ref.size() >= static_cast<std::size_t>(n) ? ref.size() - n + 1 : 0;
  }
  return s;
}

ChrfScore chrf_from_stats(const ChrfStats& stats, const ChrfOptions& options) {
  if (options.char_order < 1) throw ConfigError("chrF character order must be at least 1");
  if (!(options.beta > 0)) throw ConfigError("chrF beta must be positive");
  ChrfScore out;
  out.beta = options.beta;
  out.char_order = options.char_order;
  const std::size_t orders = static_cast<std::size_t>(options.char_order);
  out.per_order_precision.assign(orders, 0.0);
  out.per_order_recall.assign(orders, 0.0);
  out.order_used.assign(orders, false);
  double p_sum = 0;
  double r_sum = 0;
  int used = 0;
  for (std::size_t n = 0; n < orders; ++n) {
    std::size_t h = n < stats.hyp_ngrams.size() ? stats.hyp_ngrams[n] : 0;
    std::size_t r = n < stats.ref_ngrams.size() ? stats.ref_ngrams[n] : 0;
    std::size_t m = n < stats.matches.size() ? stats.matches[n] : 0;
    if (h == 0 && r == 0) continue;
    out.order_used[n] = true;
    ++used;
    if (h > 0 && r > 0) {
      out.per_order_precision[n] = static_cast<double>(m) / static_cast<double>(h);
      out.per_order_recall[n] = static_cast<double>(m) / static_cast<double>(r);
    }
    p_sum += out.per_order_precision[n];
    r_sum += out.per_order_recall[n];
  }
  if (used == 0) {
    out.precision = out.recall = 1.0;
    out.score = 100.0;
    return out;
  }
  out.precision = p_sum / used;
  out.recall = r_sum / used;
  const double b2 = options.beta * options.beta;
  const double denom = b2 * out.precision + out.recall;
  out.score = denom > 0 ? 100.0 * (1 + b2) * out.precision * out.recall / denom : 0.0;
  return out;
}

ChrfScore chrf_corpus(const std::vector<std::string>& hypotheses,
                      const std::vector<std::string>& references, const ChrfOptions& options) {
  check_pairing(hypotheses.size(), references.size());
  ChrfStats total;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    total += chrf_stats(hypotheses[i], references[i], options.char_order);
  }
  return chrf_from_stats(total, options);
}

std::string_view to_string(Metric metric) { return metric == Metric::bleu ? "bleu" : "chrf"; }

Metric parse_metric(std::string_view name) {
  std::string lower = unicode::to_lower(name);
  if (lower == "bleu") return Metric::bleu;
  if (lower == "chrf") return Metric::chrf;
  throw ConfigError("unknown metric '" + std::string(name) + "' (expected bleu or chrf)");
}

SignificanceResult paired_bootstrap(const std::vector<std::string>& hyps_a,
                                    const std::vector<std::string>& hyps_b,
                                    const std::vector<std::string>& references, Metric metric,
                                    std::size_t iterations, std::uint64_t seed, unsigned threads,
                                    const ChrfOptions& chrf) {
  check_pairing(hyps_a.size(), references.size());
  check_pairing(hyps_b.size(), references.size());
  if (iterations == 0) throw ConfigError("bootstrap needs at least one iteration");
  const std::size_t n = references.size();

  std::vector<BleuStats> bleu_a, bleu_b;
  std::vector<ChrfStats> chrf_a, chrf_b;
  if (metric == Metric::bleu) {
    for (std::size_t i = 0; i < n; ++i) {
      bleu_a.push_back(bleu_stats(hyps_a[i], references[i]));
      bleu_b.push_back(bleu_stats(hyps_b[i], references[i]));
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      chrf_a.push_back(chrf_stats(hyps_a[i], references[i], chrf.char_order));
      chrf_b.push_back(chrf_stats(hyps_b[i], references[i], chrf.char_order));
    }
  }
  // Corpus scores over an index multiset.
  auto score_pair = [&](const std::vector<std::size_t>* sample) {
    auto index = [&](std::size_t k) { return sample ? (*sample)[k] : k; };
    if (metric == Metric::bleu) {
      BleuStats a, b;
      for (std::size_t k = 0; k < n; ++k) {
        a += bleu_a[index(k)];
        b += bleu_b[index(k)];
      }
      return std::pair{bleu_from_stats(a).score, bleu_from_stats(b).score};
    }
    ChrfStats a, b;
    for (std::size_t k = 0; k < n; ++k) {
      a += chrf_a[index(k)];
      b += chrf_b[index(k)];
    }
    return std::pair{chrf_from_stats(a, chrf).score, chrf_from_stats(b, chrf).score};
  };

  SignificanceResult result;
  result.metric = std::string(to_string(metric));
  result.iterations = iterations;
  result.seed = seed;
  result.convention = std::string(kBootstrapConvention);
  std::tie(result.score_a, result.score_b) = score_pair(nullptr);
  result.delta = result.score_a - result.score_b;

  std::vector<double> deltas(iterations);
  auto run = [&](std::size_t begin, std::size_t end) {
    std::vector<std::size_t> sample(n);
    for (std::size_t it = begin; it < end; ++it) {
      std::mt19937_64 engine(splitmix64(seed ^ splitmix64(it + 1)));
      for (auto& idx : sample) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t x;
        do {
          x = engine();
        } while (x >= limit);
        idx = static_cast<std::size_t>(x % n);
      }
      auto [a, b] = score_pair(&sample);
      deltas[it] = a - b;
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, iterations));
  if (threads <= 1) {
    run(0, iterations);
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (iterations + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      std::size_t begin = t * chunk;
      std::size_t end = std::min(iterations, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(run, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  if (result.delta == 0) {
    result.p_value = 1.0;
    return result;
  }
  std::size_t contrary = 0;
  for (double d : deltas) {
    if (d == 0 || (d > 0) != (result.delta > 0)) ++contrary;
  }
  result.p_value = static_cast<double>(contrary) / static_cast<double>(iterations);
  return result;
}

std::string to_json(const BleuScore& s, std::string_view fingerprint) {
  nlohmann::ordered_json j;
  j["metric"] = "bleu";
  j["score"] = s.score;
  j["precisions"] = s.precisions;
  j["brevity_penalty"] = s.brevity_penalty;
  j["hyp_length"] = s.hyp_length;
  j["ref_length"] = s.ref_length;
  j["matches"] = s.stats.matches;
  j["hyp_ngrams"] = s.stats.hyp_ngrams;
  j["tokenization"] = "whitespace";
  j["preprocessing_fingerprint"] = fingerprint;
  return j.dump(2);
}

std::string to_json(const ChrfScore& s, std::string_view fingerprint) {
  nlohmann::ordered_json j;
  j["metric"] = "chrf";
  j["score"] = s.score;
  j["beta"] = s.beta;
  j["char_order"] = s.char_order;
  j["precision"] = s.precision;
  j["recall"] = s.recall;
  j["per_order_precision"] = s.per_order_precision;
  j["per_order_recall"] = s.per_order_recall;
  j["whitespace"] = "removed";
  j["preprocessing_fingerprint"] = fingerprint;
  return j.dump(2);
}

std::string to_json(const SignificanceResult& r, std::string_view fingerprint) {
  nlohmann::ordered_json j;
  j["metric"] = r.metric;
  j["score_a"] = r.score_a;
  j["score_b"] = r.score_b;
  j["delta"] = r.delta;
  j["p_value"] = r.p_value;
  j["iterations"] = r.iterations;
  j["seed"] = r.seed;
  j["convention"] = r.convention;
  j["preprocessing_fingerprint"] = fingerprint;
  return j.dump(2);
}

}  // namespace mtkit::metrics
