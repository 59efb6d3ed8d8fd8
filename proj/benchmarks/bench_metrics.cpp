#include <benchmark/benchmark.h>

#include "generators.hpp"
#include "mtkit/metrics.hpp"

namespace mt = mtkit::testing;

namespace {

struct Systems {
  std::vector<std::string> refs, hyp_a, hyp_b;
};

Systems systems(std::size_t lines) {
  mt::Rng rng(5);
  auto vocab = mt::make_words(rng, {"ba", "do", "ki", "lo", "mu", "ne", "ra", "te"}, 800);
  Systems s;
  s.refs = mt::zipf_corpus(rng, vocab, lines, 5, 30);
  s.hyp_a = mt::zipf_corpus(rng, vocab, lines, 5, 30);
  for (std::size_t i = 0; i < lines; ++i) {
    s.hyp_b.push_back(i % 2 ? s.refs[i] : s.hyp_a[i]);
  }
  return s;
}

void BM_Bleu(benchmark::State& state) {
  auto s = systems(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mtkit::metrics::bleu_corpus(s.hyp_a, s.refs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Bleu)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_Chrf(benchmark::State& state) {
  auto s = systems(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mtkit::metrics::chrf_corpus(s.hyp_a, s.refs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Chrf)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_Bootstrap(benchmark::State& state) {
  auto s = systems(500);
  auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mtkit::metrics::paired_bootstrap(
        s.hyp_a, s.hyp_b, s.refs, mtkit::metrics::Metric::bleu, 1000, 1, threads));
  }
}
BENCHMARK(BM_Bootstrap)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
