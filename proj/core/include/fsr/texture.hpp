#pragma once

#include <iosfwd>
#include <vector>

#include "fsr/image.hpp"
#include "fsr/pipeline.hpp"

namespace fsr {

/// Local statistics of one block, measured on available pixels only.
struct BlockStats {
    double mean = 0.0;
    double variance = 0.0;    // unbiased sample variance over available pixels
    double normalized = 0.0;  // min-max normalized over the image, in [0,1]
    int available = 0;        // pixels that entered the statistics
    bool degenerate = false;  // fewer than two available pixels
};

/// Parameters of the texture-dependent iteration mapping.
struct TdConfig {
    int surround = 2;     // p: block enlargement for the variance window
    int min_iters = 10;   // i_min
    int max_iters = 300;  // i_max

    void validate() const;
};

/// Variance plan of one image: per-block statistics plus the integer
/// iteration allocation derived from them.
struct TdPlan {
    std::vector<BlockStats> stats;
    IterationPlan plan;
    bool bounds_relaxed = false;
};

/// Statistics of one block over its (U+2p) x (V+2p) neighborhood clipped to
/// the image, using only pixels outside the loss area (Support and
/// Reconstructed). Blocks with fewer than two such pixels get variance 0 and
/// are flagged degenerate.
BlockStats block_variance(const ImageGrid& image, const SamplingMask& mask,
                          const SamplingMask& reconstructed, int block_index, int surround,
                          const FsrConfig& cfg);

/// Min-max normalization of the block variances onto [0,1]; an all-equal
/// field maps to all zeros. Fills stats[i].normalized and returns the values.
std::vector<double> normalize_variances(std::vector<BlockStats>& stats);

/// Maps normalized variances to per-block iteration counts: the linear mapping
/// (i_max - i_min) * v plus a uniform term that hands every block its share of
/// the unassigned budget, so the raw allocations sum to block_count * avg.
/// The raw values are then clamped into [min_iters, max_iters], the resulting
/// surplus or deficit is redistributed uniformly over unclamped blocks until
/// stable, and largest-remainder rounding produces integers whose sum equals
/// block_count * avg exactly. If the total budget lies outside
/// [B*min, B*max], conservation wins: the allocation degrades to uniform
/// budget/B and bounds_relaxed (when given) is set.
IterationPlan allocate_iterations(const std::vector<double>& normalized_variances,
                                  int avg_iterations, const TdConfig& td,
                                  bool* bounds_relaxed = nullptr);

/// Convenience: variance statistics + normalization + allocation for a whole
/// degraded image, before any reconstruction.
TdPlan compute_td_plan(const ImageGrid& degraded, const SamplingMask& mask, int avg_iterations,
                       const FsrConfig& cfg, const TdConfig& td);

/// Texture-dependent reconstruction: plans the iteration budget from the
/// degraded image's block variances and runs the block-wise reconstruction
/// with it. Spends exactly the same total budget as fsr_fixed at the same
/// avg_iterations.
ImageGrid td_fsr(const ImageGrid& degraded, const SamplingMask& mask, int avg_iterations,
                 const FsrConfig& cfg, const TdConfig& td, RunStats* stats = nullptr);

/// Writes a plan as CSV: blockIndex,variance,normalized,iterations.
void write_plan_csv(const TdPlan& plan, std::ostream& out);

}  // namespace fsr
