#pragma once

#include <vector>

#include "fsr/fse.hpp"
#include "fsr/image.hpp"

namespace fsr {

/// Tuning knobs of the block-wise reconstruction.
struct FsrConfig {
    int block_size = 4;     // U = V
    int border_width = 14;
    int fft_size = 32;      // M = N = block_size + 2 * border_width
    double rho_hat = 0.7;
    double gamma = 0.5;
    double delta = 0.5;

    void validate() const;
};

/// Per-block iteration counts in raster traversal order. total is always the
/// exact integer sum of the entries.
struct IterationPlan {
    std::vector<int> per_block;
    long long total = 0;

    static IterationPlan uniform(std::size_t blocks, int iterations);
    void validate() const;
};

/// Budget bookkeeping of one reconstruction run.
struct RunStats {
    long long planned = 0;  // sum of the plan over all blocks
    long long spent = 0;    // sum over blocks that actually ran the model loop
    int blocks_total = 0;
    int blocks_processed = 0;
    bool bounds_relaxed = false;  // set by the texture allocator when bounds gave way
};

/// Block tiling of an image; right/bottom blocks may be smaller.
struct BlockLayout {
    int image_width = 0;
    int image_height = 0;
    int block_size = 0;
    int blocks_x = 0;
    int blocks_y = 0;

    int count() const { return blocks_x * blocks_y; }

    struct Rect {
        int x0, y0, x1, y1;  // half-open
    };
    Rect block_rect(int index) const;
};

BlockLayout make_block_layout(int image_width, int image_height, const FsrConfig& cfg);

/// Block traversal policy. RasterSequential is the reconstruction contract;
/// IndependentBlocks treats previously reconstructed pixels as Loss so blocks
/// have no mutual dependency. The independent mode exists for exercising
/// parallel kernels and is not used for quality evaluation.
enum class TraversalMode { RasterSequential, IndependentBlocks };

/// Assembles the M x N window of one block: values from the working image,
/// labels Support / Reconstructed / Loss / Outside.
ReconstructionArea partition_areas(const ImageGrid& working, const SamplingMask& mask,
                                   const SamplingMask& reconstructed, int block_index,
                                   const FsrConfig& cfg);

/// Runs the block-wise reconstruction in raster order with the given per-block
/// iteration counts. Missing pixels of each central block are replaced by the
/// evaluated model, clamped to [0,255]; acquired pixels are never touched.
/// Fully available blocks are skipped and consume no iterations. Windows
/// without any usable pixel fall back to the mean of available pixels in the
/// image-clipped window (128 when there are none).
ImageGrid reconstruct_image(const ImageGrid& degraded, const SamplingMask& mask,
                            const IterationPlan& plan, const FsrConfig& cfg,
                            RunStats* stats = nullptr,
                            TraversalMode mode = TraversalMode::RasterSequential);

/// Classic fixed-iteration reconstruction: a uniform plan of avg_iterations
/// per block.
ImageGrid fsr_fixed(const ImageGrid& degraded, const SamplingMask& mask, int avg_iterations,
                    const FsrConfig& cfg, RunStats* stats = nullptr);

}  // namespace fsr
