#pragma once

// A second, from-scratch SSIM: explicit 2-D Gaussian window per position,
// nothing shared with the production metric.

#include "fsr/image.hpp"

namespace fsrtest {

double reference_ssim(const fsr::ImageGrid& reference, const fsr::ImageGrid& test);

}  // namespace fsrtest
