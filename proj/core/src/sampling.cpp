#include "fsr/sampling.hpp"

#include <stdexcept>

namespace fsr {

namespace {

// splitmix64 finalizer; statistically solid and stateless.
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

SamplingMask generate_quarter_mask(const MaskSpec& spec) {
    if (spec.width < 2 || spec.height < 2 || spec.width % 2 != 0 || spec.height % 2 != 0)
        throw std::invalid_argument("generate_quarter_mask: dimensions must be even and >= 2");

    SamplingMask mask(spec.width, spec.height, false);
    const int cells_x = spec.width / 2;
    const int cells_y = spec.height / 2;
    for (int cy = 0; cy < cells_y; ++cy) {
        for (int cx = 0; cx < cells_x; ++cx) {
            std::uint64_t cell = static_cast<std::uint64_t>(cy) * cells_x + cx;
            // 2^64 is divisible by 4, so the low two bits are exactly uniform.
            std::uint64_t h = mix64(spec.seed ^ mix64(cell));
            int pos = static_cast<int>(h & 3u);
            mask.set(cx * 2 + (pos & 1), cy * 2 + (pos >> 1), true);
        }
    }
    return mask;
}

double mask_density(const SamplingMask& mask) {
    return mask.density();
}

}  // namespace fsr
