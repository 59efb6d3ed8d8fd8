#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mtkit::metrics {

inline constexpr int kBleuOrder = 4;

// Clipped n-gram statistics of one segment or, summed, of a corpus.
struct BleuStats {
  std::array<std::size_t, kBleuOrder> matches{};
  std::array<std::size_t, kBleuOrder> hyp_ngrams{};
  std::array<std::size_t, kBleuOrder> ref_ngrams{};
  std::size_t hyp_length = 0;
  std::size_t ref_length = 0;
  BleuStats& operator+=(const BleuStats& other);
};

struct BleuScore {
  double score = 0;
  std::array<double, kBleuOrder> precisions{};
  double brevity_penalty = 1;
  std::size_t hyp_length = 0;
  std::size_t ref_length = 0;
  BleuStats stats;
};

// Whitespace tokens; the scorer never retokenizes.
BleuStats bleu_stats(std::string_view hypothesis, std::string_view reference);
// Orders that neither side can fill (every segment shorter than n) are left
// out of the geometric mean; any other zero precision gives a score of 0.
// BP = 1 when hyp_length > ref_length, else exp(1 - ref/hyp), and 0 for an
// empty hypothesis side against a non-empty reference.
BleuScore bleu_from_stats(const BleuStats& stats);
// Throws PairingError on a length mismatch or an empty corpus.
BleuScore bleu_corpus(const std::vector<std::string>& hypotheses,
                      const std::vector<std::string>& references);

struct ChrfOptions {
  int char_order = 6;
  double beta = 2.0;
};

struct ChrfStats {
  std::vector<std::size_t> matches;
  std::vector<std::size_t> hyp_ngrams;
  std::vector<std::size_t> ref_ngrams;
  ChrfStats& operator+=(const ChrfStats& other);
};

struct ChrfScore {
  double score = 0;
  double beta = 2.0;
  int char_order = 6;
  std::vector<double> per_order_precision;
  std::vector<double> per_order_recall;
  // Orders with n-grams on at least one side; the others are skipped.
  std::vector<bool> order_used;
  double precision = 0;
  double recall = 0;
};

// Character n-grams over code points with all whitespace removed.
ChrfStats chrf_stats(std::string_view hypothesis, std::string_view reference, int char_order);
// Per-order P and R from corpus totals. An order with n-grams on one side
// only scores P = R = 0; an order with none on either side is skipped. P and
// R are the means over the remaining orders.
ChrfScore chrf_from_stats(const ChrfStats& stats, const ChrfOptions& options = {});
ChrfScore chrf_corpus(const std::vector<std::string>& hypotheses,
                      const std::vector<std::string>& references, const ChrfOptions& options = {});

enum class Metric { bleu, chrf };
std::string_view to_string(Metric metric);
Metric parse_metric(std::string_view name);

struct SignificanceResult {
  std::string metric;
  double score_a = 0;
  double score_b = 0;
  double delta = 0;  // score_a - score_b
  double p_value = 1;
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
  std::string convention;
  friend bool operator==(const SignificanceResult&, const SignificanceResult&) = default;
};

inline constexpr std::string_view kBootstrapConvention =
    "p = share of paired resamples whose score difference is zero or has the "
    "opposite sign of the observed difference; p = 1 when the observed "
    "difference is zero";

// Paired bootstrap over segments. Iteration i draws indices from an engine
// seeded with a sub-seed derived from (seed, i), so results do not depend on
// the thread count. Throws PairingError on length mismatches or an empty
// test set, ConfigError when iterations == 0.
SignificanceResult paired_bootstrap(const std::vector<std::string>& hyps_a,
                                    const std::vector<std::string>& hyps_b,
                                    const std::vector<std::string>& references, Metric metric,
                                    std::size_t iterations = 1000, std::uint64_t seed = 0,
                                    unsigned threads = 0, const ChrfOptions& chrf = {});

// JSON documents with every component plus a preprocessing fingerprint.
std::string to_json(const BleuScore& score, std::string_view fingerprint);
std::string to_json(const ChrfScore& score, std::string_view fingerprint);
std::string to_json(const SignificanceResult& result, std::string_view fingerprint);

}  // namespace mtkit::metrics
