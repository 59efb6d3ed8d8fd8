#include <benchmark/benchmark.h>

#include "mtkit/gateway/backend.hpp"
#include "mtkit/pipeline/pipeline.hpp"

namespace {

const char* kDocument =
    "Das Gesundheitsamt meldet 42 neue Fälle. Weitere Informationen unter www.rki.de "
    "oder per E-Mail an info@rki.de. <b>Wichtig:</b> „Bleiben Sie zu Hause.“ "
    "Die Impfzentren öffnen am 3. Mai um 8:00 Uhr.";

void BM_PipelineRoundTrip(benchmark::State& state) {
  mtkit::pipeline::PipelineModels models;
  mtkit::LanguagePair pair{mtkit::Lang::de, mtkit::Lang::en};
  auto engine = mtkit::gateway::make_mock_backend(mtkit::gateway::MockMode::identity);
  for (auto _ : state) {
    auto pre = mtkit::pipeline::preprocess(kDocument, pair, models);
    benchmark::DoNotOptimize(
        mtkit::pipeline::postprocess(engine->translate(pre.lines, pair), pre.state, models));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PipelineRoundTrip)->Unit(benchmark::kMicrosecond);

}  // namespace
