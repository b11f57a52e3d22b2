#pragma once

// Independent brute-force references for the model generation path. These
// deliberately avoid the FFT and the incremental spectrum updates of the
// production engine: projections are direct O((MN)^2) sums and the residual
// lives in the spatial domain.

#include <complex>
#include <utility>
#include <vector>

#include "fsr/fse.hpp"
#include "fsr/image.hpp"
#include "fsr/pipeline.hpp"

namespace fsrtest {

struct ReferenceModel {
    int rows = 0;
    int cols = 0;
    std::vector<std::complex<double>> coeffs;
    std::vector<std::pair<int, int>> selection_order;  // one entry per iteration
};

/// Direct-sum DFT of a real field (no FFT involved).
std::vector<std::complex<double>> naive_dft_2d(const std::vector<double>& values,
                                               int rows, int cols);

/// Literal matching-pursuit loop with a spatial residual and direct-sum
/// projections; same selection rule (canonical conjugate representative,
/// smallest row-major bin on ties) and gamma-damped pair update as the engine.
ReferenceModel reference_generate_model(const fsr::ReconstructionArea& area,
                                        const fsr::WeightField& weights, int iterations,
                                        double gamma);

/// Direct-sum synthesis of a coefficient array.
std::vector<double> reference_evaluate(const std::vector<std::complex<double>>& coeffs,
                                       int rows, int cols);

/// Independent raster-order reconstruction built on the reference model path:
/// plain nested-loop bookkeeping of Support/Reconstructed/Loss, no code shared
/// with the production pipeline.
fsr::ImageGrid reference_reconstruct(const fsr::ImageGrid& degraded,
                                     const fsr::SamplingMask& mask,
                                     const std::vector<int>& per_block_iterations,
                                     const fsr::FsrConfig& cfg);

}  // namespace fsrtest
