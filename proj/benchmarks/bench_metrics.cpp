#include <benchmark/benchmark.h>

#include <cmath>

#include "fsr/metrics.hpp"

namespace {

fsr::ImageGrid wave_image(int size, double phase) {
    fsr::ImageGrid img(size, size);
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x)
            img.at(x, y) = 128.0 + 100.0 * std::sin(0.05 * x + 0.07 * y + phase);
    return img;
}

void BM_Psnr(benchmark::State& state) {
    const int size = static_cast<int>(state.range(0));
    fsr::ImageGrid a = wave_image(size, 0.0);
    fsr::ImageGrid b = wave_image(size, 0.01);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fsr::psnr(a, b));
    }
}
BENCHMARK(BM_Psnr)->Arg(512);

void BM_Ssim(benchmark::State& state) {
    const int size = static_cast<int>(state.range(0));
    fsr::ImageGrid a = wave_image(size, 0.0);
    fsr::ImageGrid b = wave_image(size, 0.01);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fsr::ssim(a, b));
    }
}
BENCHMARK(BM_Ssim)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace
