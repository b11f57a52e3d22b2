#include <benchmark/benchmark.h>

#include <cmath>

#include "fsr/fse.hpp"

namespace {

// A window with the default 32x32 geometry and a deterministic quarter-ish
// support pattern.
fsr::ReconstructionArea make_window() {
    fsr::ReconstructionArea area;
    area.rows = 32;
    area.cols = 32;
    area.values.assign(1024, 0.0);
    area.labels.assign(1024, fsr::AreaLabel::Loss);
    for (int m = 0; m < 32; ++m) {
        for (int n = 0; n < 32; ++n) {
            std::size_t i = area.index(m, n);
            area.values[i] = 128.0 + 60.0 * std::cos(0.7 * m) * std::sin(0.4 * n);
            if ((m % 2 == 0) && (n % 2 == (m / 2) % 2)) area.labels[i] = fsr::AreaLabel::Support;
        }
    }
    return area;
}

void BM_BuildWeights(benchmark::State& state) {
    fsr::ReconstructionArea area = make_window();
    for (auto _ : state) {
        benchmark::DoNotOptimize(fsr::build_weights(area, 0.7, 0.5));
    }
}
BENCHMARK(BM_BuildWeights);

void BM_GenerateModel(benchmark::State& state) {
    fsr::ReconstructionArea area = make_window();
    fsr::WeightField w = fsr::build_weights(area, 0.7, 0.5);
    const int iters = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fsr::generate_model(area, w, iters, 0.5));
    }
    state.SetItemsProcessed(state.iterations() * iters);
}
BENCHMARK(BM_GenerateModel)->Arg(20)->Arg(100)->Arg(300);

void BM_EvaluateModel(benchmark::State& state) {
    fsr::ReconstructionArea area = make_window();
    fsr::WeightField w = fsr::build_weights(area, 0.7, 0.5);
    fsr::SparseModel model = fsr::generate_model(area, w, 100, 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fsr::evaluate_model(model));
    }
}
BENCHMARK(BM_EvaluateModel);

}  // namespace
