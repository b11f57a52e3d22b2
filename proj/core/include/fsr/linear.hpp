#pragma once

#include "fsr/image.hpp"

namespace fsr {

/// Linear-interpolation baseline: Delaunay triangulation of the acquired
/// pixel positions, barycentric interpolation inside the convex hull and
/// nearest-acquired-neighbor values beyond it. Acquired pixels pass through
/// unchanged. Degenerate point sets (fewer than three acquired pixels, or all
/// collinear) fall back to global nearest-neighbor filling; a mask with no
/// acquired pixel at all yields a constant 128 fill.
ImageGrid linear_reconstruct(const ImageGrid& degraded, const SamplingMask& mask);

}  // namespace fsr
