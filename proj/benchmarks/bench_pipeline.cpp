#include <benchmark/benchmark.h>

#include <cmath>

#include "fsr/fsr.hpp"

namespace {

fsr::ImageGrid synthetic_image(int size) {
    fsr::ImageGrid img(size, size);
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x)
            img.at(x, y) = 128.0 + 50.0 * std::cos(2.0 * M_PI * (3 * y + 5 * x) / 32.0) +
                           30.0 * std::cos(2.0 * M_PI * y / 32.0);
    return img;
}

void BM_FsrFixed(benchmark::State& state) {
    const int size = 128;
    fsr::ImageGrid img = synthetic_image(size);
    fsr::SamplingMask mask = fsr::generate_quarter_mask({size, size, 1});
    fsr::ImageGrid degraded = fsr::apply_mask(img, mask);
    fsr::FsrConfig cfg;
    const int iters = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fsr::fsr_fixed(degraded, mask, iters, cfg));
    }
}
BENCHMARK(BM_FsrFixed)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_TdFsr(benchmark::State& state) {
    const int size = 128;
    fsr::ImageGrid img = synthetic_image(size);
    fsr::SamplingMask mask = fsr::generate_quarter_mask({size, size, 1});
    fsr::ImageGrid degraded = fsr::apply_mask(img, mask);
    fsr::FsrConfig cfg;
    fsr::TdConfig td;
    const int iters = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fsr::td_fsr(degraded, mask, iters, cfg, td));
    }
}
BENCHMARK(BM_TdFsr)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_AllocateIterations(benchmark::State& state) {
    const int blocks = static_cast<int>(state.range(0));
    std::vector<double> field(blocks);
    for (int i = 0; i < blocks; ++i) field[i] = (i % 97) / 96.0;
    fsr::TdConfig td;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fsr::allocate_iterations(field, 20, td));
    }
}
BENCHMARK(BM_AllocateIterations)->Arg(1024)->Arg(24576);

void BM_LinearBaseline(benchmark::State& state) {
    const int size = static_cast<int>(state.range(0));
    fsr::ImageGrid img = synthetic_image(size);
    fsr::SamplingMask mask = fsr::generate_quarter_mask({size, size, 1});
    fsr::ImageGrid degraded = fsr::apply_mask(img, mask);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fsr::linear_reconstruct(degraded, mask));
    }
}
BENCHMARK(BM_LinearBaseline)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace
