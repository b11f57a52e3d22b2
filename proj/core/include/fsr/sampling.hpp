#pragma once

#include <cstdint>

#include "fsr/image.hpp"

namespace fsr {

/// Parameters of the simulated non-regular quarter-sampling sensor. Each
/// low-resolution sensor cell covers an aligned 2x2 pixel block, so both
/// dimensions must be even.
struct MaskSpec {
    int width = 0;
    int height = 0;
    std::uint64_t seed = 0;
};

/// Generates the quarter-sampling mask: in every aligned 2x2 cell exactly one
/// pixel is kept, chosen uniformly by a counter-based generator keyed on
/// (seed, cell index). Same spec => bit-identical mask, independent of
/// evaluation order. Throws std::invalid_argument on odd dimensions.
SamplingMask generate_quarter_mask(const MaskSpec& spec);

/// Fraction of acquired pixels, in [0,1].
double mask_density(const SamplingMask& mask);

}  // namespace fsr
