#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace mtkit::testing {

// Small deterministic generator helpers shared by property tests.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::size_t below(std::size_t n) {
    return static_cast<std::size_t>(std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_));
  }
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  bool chance(double p) { return std::uniform_real_distribution<double>(0, 1)(engine_) < p; }
  template <typename T>
  const T& pick(const std::vector<T>& items) {
    return items[below(items.size())];
  }
  // Zipf-like: index i drawn with weight 1 / (i + 1).
  std::size_t zipf(std::size_t n);
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// Pseudo-words assembled from a syllable inventory.
std::vector<std::string> make_words(Rng& rng, const std::vector<std::string>& syllables,
                                    std::size_t count, std::size_t min_syl = 1,
                                    std::size_t max_syl = 3);

std::string random_sentence(Rng& rng, const std::vector<std::string>& vocab, std::size_t min_len,
                            std::size_t max_len);
std::vector<std::string> random_corpus(Rng& rng, const std::vector<std::string>& vocab,
                                       std::size_t lines, std::size_t min_len,
                                       std::size_t max_len);

// Zipf-distributed sentences, as in natural text.
std::vector<std::string> zipf_corpus(Rng& rng, const std::vector<std::string>& vocab,
                                     std::size_t lines, std::size_t min_len, std::size_t max_len);

}  // namespace mtkit::testing
