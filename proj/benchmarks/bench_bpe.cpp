#include <benchmark/benchmark.h>

#include <random>

#include "mtkit/bpe.hpp"

namespace {

std::vector<std::string> word_lines(std::size_t lines, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const char* syl[] = {"ka", "ri", "to", "men", "sa", "lu", "ver", "ne", "dos", "pi"};
  std::geometric_distribution<int> len(0.4);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < lines; ++i) {
    std::string line;
    for (int w = 0; w < 12; ++w) {
      if (w) line += ' ';
      for (int s = 0, n = 1 + len(rng); s < n; ++s) line += syl[rng() % 10];
    }
    out.push_back(line);
  }
  return out;
}

void BM_BpeLearn(benchmark::State& state) {
  auto corpus = word_lines(2000, 1);
  mtkit::bpe::LearnOptions opt;
  opt.num_merges = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mtkit::bpe::learn_bpe({corpus}, opt));
}
BENCHMARK(BM_BpeLearn)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_BpeApply(benchmark::State& state) {
  auto corpus = word_lines(2000, 1);
  mtkit::bpe::LearnOptions opt;
  opt.num_merges = 1000;
  auto model = mtkit::bpe::learn_bpe({corpus}, opt);
  auto test = word_lines(200, 2);
  for (auto _ : state) {
    for (const auto& l : test) benchmark::DoNotOptimize(model.apply(l));
  }
  state.SetItemsProcessed(state.iterations() * test.size());
}
BENCHMARK(BM_BpeApply)->Unit(benchmark::kMicrosecond);

}  // namespace
