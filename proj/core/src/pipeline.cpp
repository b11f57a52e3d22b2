#include "fsr/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace fsr {

void FsrConfig::validate() const {
    if (block_size < 1) throw std::invalid_argument("FsrConfig: block_size must be >= 1");
    if (border_width < 0) throw std::invalid_argument("FsrConfig: border_width must be >= 0");
    if (fft_size != block_size + 2 * border_width)
        throw std::invalid_argument("FsrConfig: fft_size must equal block_size + 2*border_width");
    if (!(rho_hat > 0.0 && rho_hat < 1.0))
        throw std::invalid_argument("FsrConfig: rho_hat must lie in (0,1)");
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw std::invalid_argument("FsrConfig: gamma must lie in (0,1]");
    if (!(delta > 0.0 && delta <= 1.0))
        throw std::invalid_argument("FsrConfig: delta must lie in (0,1]");
}

IterationPlan IterationPlan::uniform(std::size_t blocks, int iterations) {
    if (iterations < 1) throw std::invalid_argument("IterationPlan: iterations must be >= 1");
    IterationPlan plan;
    plan.per_block.assign(blocks, iterations);
    plan.total = static_cast<long long>(blocks) * iterations;
    return plan;
}

void IterationPlan::validate() const {
    long long sum = 0;
    for (int i : per_block) {
        if (i < 1) throw std::invalid_argument("IterationPlan: entries must be >= 1");
        sum += i;
    }
    if (sum != total) throw std::invalid_argument("IterationPlan: total does not match entries");
}

BlockLayout::Rect BlockLayout::block_rect(int index) const {
    int bx = index % blocks_x;
    int by = index / blocks_x;
    Rect r;
    r.x0 = bx * block_size;
    r.y0 = by * block_size;
    r.x1 = std::min(r.x0 + block_size, image_width);
    r.y1 = std::min(r.y0 + block_size, image_height);
    return r;
}

BlockLayout make_block_layout(int image_width, int image_height, const FsrConfig& cfg) {
    BlockLayout layout;
    layout.image_width = image_width;
    layout.image_height = image_height;
    layout.block_size = cfg.block_size;
    layout.blocks_x = (image_width + cfg.block_size - 1) / cfg.block_size;
    layout.blocks_y = (image_height + cfg.block_size - 1) / cfg.block_size;
    return layout;
}

ReconstructionArea partition_areas(const ImageGrid& working, const SamplingMask& mask,
                                   const SamplingMask& reconstructed, int block_index,
                                   const FsrConfig& cfg) {
    BlockLayout layout = make_block_layout(working.width(), working.height(), cfg);
    if (block_index < 0 || block_index >= layout.count())
        throw std::invalid_argument("partition_areas: block index out of range");
    BlockLayout::Rect rect = layout.block_rect(block_index);

    ReconstructionArea area;
    area.rows = cfg.fft_size;
    area.cols = cfg.fft_size;
    area.values.assign(static_cast<std::size_t>(area.rows) * area.cols, 0.0);
    area.labels.assign(area.values.size(), AreaLabel::Outside);

    const int y0 = rect.y0 - cfg.border_width;
    const int x0 = rect.x0 - cfg.border_width;
    for (int m = 0; m < area.rows; ++m) {
        int y = y0 + m;
        if (y < 0 || y >= working.height()) continue;
        for (int n = 0; n < area.cols; ++n) {
            int x = x0 + n;
            if (x < 0 || x >= working.width()) continue;
            std::size_t i = area.index(m, n);
            area.values[i] = working.at(x, y);
            if (mask.at(x, y))
                area.labels[i] = AreaLabel::Support;
            else if (reconstructed.at(x, y))
                area.labels[i] = AreaLabel::Reconstructed;
            else
                area.labels[i] = AreaLabel::Loss;
        }
    }
    return area;
}

namespace {

bool block_has_missing(const SamplingMask& mask, const BlockLayout::Rect& rect) {
    for (int y = rect.y0; y < rect.y1; ++y)
        for (int x = rect.x0; x < rect.x1; ++x)
            if (!mask.at(x, y)) return true;
    return false;
}

// Mean of usable pixels in the image-clipped window; 128 when there are none.
double window_fallback_value(const ImageGrid& source, const SamplingMask& mask,
                             const SamplingMask& reconstructed, const BlockLayout::Rect& rect,
                             const FsrConfig& cfg) {
    int y0 = std::max(0, rect.y0 - cfg.border_width);
    int x0 = std::max(0, rect.x0 - cfg.border_width);
    int y1 = std::min(source.height(), rect.y0 - cfg.border_width + cfg.fft_size);
    int x1 = std::min(source.width(), rect.x0 - cfg.border_width + cfg.fft_size);
    double sum = 0.0;
    long long n = 0;
    for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) {
            if (mask.at(x, y) || reconstructed.at(x, y)) {
                sum += source.at(x, y);
                ++n;
            }
        }
    }
    return n > 0 ? sum / static_cast<double>(n) : 128.0;
}

// Builds and evaluates the model for one block, then overwrites the missing
// pixels of its central rect in `out`, reading window values from `source`.
// Returns the iterations spent (0 when the empty-support fallback fired).
long long process_block(const ImageGrid& source, ImageGrid& out, const SamplingMask& mask,
                        const SamplingMask& reconstructed, int block, int iterations,
                        const BlockLayout& layout, const FsrConfig& cfg) {
    BlockLayout::Rect rect = layout.block_rect(block);
    ReconstructionArea area = partition_areas(source, mask, reconstructed, block, cfg);
    WeightField weights = build_weights(area, cfg.rho_hat, cfg.delta);

    std::vector<double> synthesized;
    double fallback = 0.0;
    bool have_model = true;
    long long spent = 0;
    try {
        SparseModel model = generate_model(area, weights, iterations, cfg.gamma);
        synthesized = evaluate_model(model);
        spent = iterations;
    } catch (const EmptySupportError&) {
        have_model = false;
        fallback = window_fallback_value(source, mask, reconstructed, rect, cfg);
    }

    const int wy0 = rect.y0 - cfg.border_width;
    const int wx0 = rect.x0 - cfg.border_width;
    for (int y = rect.y0; y < rect.y1; ++y) {
        for (int x = rect.x0; x < rect.x1; ++x) {
            if (mask.at(x, y)) continue;
            double v = have_model
                           ? synthesized[static_cast<std::size_t>(y - wy0) * cfg.fft_size + (x - wx0)]
                           : fallback;
            out.at(x, y) = std::clamp(v, 0.0, 255.0);
        }
    }
    return spent;
}

}  // namespace

ImageGrid reconstruct_image(const ImageGrid& degraded, const SamplingMask& mask,
                            const IterationPlan& plan, const FsrConfig& cfg, RunStats* stats,
                            TraversalMode mode) {
    cfg.validate();
    plan.validate();
    if (degraded.width() != mask.width() || degraded.height() != mask.height())
        throw std::invalid_argument("reconstruct_image: mask dimensions do not match image");
    BlockLayout layout = make_block_layout(degraded.width(), degraded.height(), cfg);
    if (plan.per_block.size() != static_cast<std::size_t>(layout.count()))
        throw std::invalid_argument("reconstruct_image: plan length does not match block count");

    ImageGrid working = degraded;
    RunStats local;
    local.planned = plan.total;
    local.blocks_total = layout.count();

    if (mode == TraversalMode::RasterSequential) {
        SamplingMask reconstructed(degraded.width(), degraded.height(), false);
        for (int b = 0; b < layout.count(); ++b) {
            BlockLayout::Rect rect = layout.block_rect(b);
            if (!block_has_missing(mask, rect)) continue;
            local.spent += process_block(working, working, mask, reconstructed, b,
                                         plan.per_block[b], layout, cfg);
            local.blocks_processed += 1;
            for (int y = rect.y0; y < rect.y1; ++y)
                for (int x = rect.x0; x < rect.x1; ++x)
                    if (!mask.at(x, y)) reconstructed.set(x, y, true);
        }
    } else {
        // No block depends on another: windows read the degraded input only and
        // write-back rects are disjoint, so blocks can be farmed out safely.
        const SamplingMask none(degraded.width(), degraded.height(), false);
        std::vector<long long> spent(layout.count(), 0);
        std::vector<std::uint8_t> processed(layout.count(), 0);
        std::atomic<int> next{0};
        auto run = [&]() {
            for (;;) {
                int b = next.fetch_add(1);
                if (b >= layout.count()) break;
                if (!block_has_missing(mask, layout.block_rect(b))) continue;
                spent[b] = process_block(degraded, working, mask, none, b, plan.per_block[b],
                                         layout, cfg);
                processed[b] = 1;
            }
        };
        unsigned workers = std::max(1u, std::thread::hardware_concurrency());
        std::vector<std::thread> pool;
        for (unsigned t = 1; t < workers; ++t) pool.emplace_back(run);
        run();
        for (auto& t : pool) t.join();
        for (int b = 0; b < layout.count(); ++b) {
            local.spent += spent[b];
            local.blocks_processed += processed[b];
        }
    }

    if (stats) *stats = local;
    return working;
}

ImageGrid fsr_fixed(const ImageGrid& degraded, const SamplingMask& mask, int avg_iterations,
                    const FsrConfig& cfg, RunStats* stats) {
    if (avg_iterations < 1) throw std::invalid_argument("fsr_fixed: avg_iterations must be >= 1");
    BlockLayout layout = make_block_layout(degraded.width(), degraded.height(), cfg);
    IterationPlan plan = IterationPlan::uniform(static_cast<std::size_t>(layout.count()),
                                                avg_iterations);
    return reconstruct_image(degraded, mask, plan, cfg, stats);
}

}  // namespace fsr
