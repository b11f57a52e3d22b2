#pragma once

#include "fsr/image.hpp"

namespace fsr {

/// Full-reference quality of one reconstruction.
struct QualityScore {
    double psnr_db = 0.0;  // +infinity for identical inputs
    double ssim = 0.0;     // in [-1, 1]
};

/// 10*log10(255^2 / MSE) over all pixels of the unquantized images; returns
/// +infinity when the images are identical. Throws on dimension mismatch.
double psnr(const ImageGrid& reference, const ImageGrid& test);

/// Mean single-scale SSIM: 11x11 Gaussian window (sigma 1.5), K1 = 0.01,
/// K2 = 0.03, dynamic range 255, averaged over all fully-valid window
/// positions. Requires both dimensions >= 11.
double ssim(const ImageGrid& reference, const ImageGrid& test);

QualityScore measure_quality(const ImageGrid& reference, const ImageGrid& test);

}  // namespace fsr
