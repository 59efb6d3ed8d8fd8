#include <benchmark/benchmark.h>

#include "generators.hpp"
#include "mtkit/ngram_lm.hpp"

namespace mt = mtkit::testing;

namespace {

std::vector<std::string> vocab() {
  mt::Rng rng(9);
  return mt::make_words(rng, {"ka", "ri", "to", "men", "sa", "lu", "ver", "ne"}, 5000, 1, 4);
}

void BM_LmTrain(benchmark::State& state) {
  mt::Rng rng(4);
  auto corpus = mt::zipf_corpus(rng, vocab(), 3000, 4, 20);
  mtkit::lm::TrainOptions opt;
  opt.order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mtkit::lm::train_lm(corpus, opt));
}
BENCHMARK(BM_LmTrain)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_LmScore(benchmark::State& state) {
  mt::Rng rng(4);
  auto corpus = mt::zipf_corpus(rng, vocab(), 3000, 4, 20);
  auto model = mtkit::lm::train_lm(corpus, {});
  auto test = mt::zipf_corpus(rng, vocab(), 300, 4, 20);
  for (auto _ : state) benchmark::DoNotOptimize(mtkit::lm::score_corpus(model, test));
  state.SetItemsProcessed(state.iterations() * test.size());
}
BENCHMARK(BM_LmScore)->Unit(benchmark::kMicrosecond);

}  // namespace
