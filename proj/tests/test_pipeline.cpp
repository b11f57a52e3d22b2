#include <cmath>

#include "doctest.h"
#include "fsr/pipeline.hpp"
#include "fsr/sampling.hpp"
#include "support/reference_fse.hpp"
#include "support/synth.hpp"

using namespace fsr;

namespace {

FsrConfig small_cfg() {
    // 4-pixel blocks with a 2-pixel border keep toy images readable
    FsrConfig cfg;
    cfg.block_size = 4;
    cfg.border_width = 2;
    cfg.fft_size = 8;
    return cfg;
}

}  // namespace

TEST_SUITE_BEGIN("pipeline");

TEST_CASE("config invariants are enforced") {
    FsrConfig cfg;
    cfg.validate();  // defaults are valid: 4 + 2*14 = 32
    cfg.fft_size = 16;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = FsrConfig{};
    cfg.gamma = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("first block of the raster order sees no reconstructed pixels") {
    ImageGrid img = fsrtest::make_random_image(12, 12, 1);
    SamplingMask mask = generate_quarter_mask({12, 12, 3});
    SamplingMask none(12, 12, false);
    ReconstructionArea area = partition_areas(img, mask, none, 0, small_cfg());
    for (AreaLabel l : area.labels) CHECK(l != AreaLabel::Reconstructed);
}

TEST_CASE("an all-true mask yields only support and outside labels") {
    ImageGrid img = fsrtest::make_random_image(12, 12, 2);
    SamplingMask mask(12, 12, true);
    SamplingMask none(12, 12, false);
    ReconstructionArea area = partition_areas(img, mask, none, 0, small_cfg());
    for (AreaLabel l : area.labels)
        CHECK((l == AreaLabel::Support || l == AreaLabel::Outside));
}

TEST_CASE("labels match a brute-force bookkeeping pass on a toy image") {
    // process block 0, mark its missing pixels, then inspect block 1's window
    const FsrConfig cfg = small_cfg();
    ImageGrid img = fsrtest::make_random_image(12, 12, 3);
    SamplingMask mask = fsrtest::make_bernoulli_mask(12, 12, 0.5, 17);
    SamplingMask written(12, 12, false);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x)
            if (!mask.at(x, y)) written.set(x, y, true);

    ReconstructionArea area = partition_areas(img, mask, written, 1, cfg);
    // independent bookkeeping with plain loops
    for (int m = 0; m < 8; ++m) {
        for (int n = 0; n < 8; ++n) {
            int y = -2 + m;      // block 1 starts at x=4, window origin (4-2, 0-2)
            int x = 4 - 2 + n;
            AreaLabel expect;
            if (x < 0 || x >= 12 || y < 0 || y >= 12)
                expect = AreaLabel::Outside;
            else if (mask.at(x, y))
                expect = AreaLabel::Support;
            else if (x < 4 && y < 4)
                expect = AreaLabel::Reconstructed;  // block 0 already wrote these
            else
                expect = AreaLabel::Loss;
            CHECK(area.labels[area.index(m, n)] == expect);
            if (expect != AreaLabel::Outside)
                CHECK(area.values[area.index(m, n)] == img.at(x, y));
        }
    }
}

TEST_CASE("all-true mask reconstructs to the identity with zero spend") {
    ImageGrid img = fsrtest::make_random_image(16, 16, 4);
    SamplingMask mask(16, 16, true);
    RunStats stats;
    ImageGrid out = fsr_fixed(img, mask, 20, small_cfg(), &stats);
    CHECK(out == img);
    CHECK(stats.spent == 0);
    CHECK(stats.blocks_processed == 0);
    CHECK(stats.planned == 16 * 20);
}

TEST_CASE("constant image under a quarter mask comes back within one gray level") {
    ImageGrid img(16, 16, 100.0);
    SamplingMask mask = generate_quarter_mask({16, 16, 11});
    ImageGrid degraded = apply_mask(img, mask);
    ImageGrid out = fsr_fixed(degraded, mask, 8, small_cfg());
    for (double v : out.samples()) CHECK(std::abs(v - 100.0) < 1.0);
}

TEST_CASE("reconstruction is deterministic and never touches acquired pixels") {
    ImageGrid img = fsrtest::make_random_image(20, 12, 5);
    SamplingMask mask = generate_quarter_mask({20, 12, 5});
    ImageGrid degraded = apply_mask(img, mask);
    const FsrConfig cfg = small_cfg();
    ImageGrid a = fsr_fixed(degraded, mask, 10, cfg);
    ImageGrid b = fsr_fixed(degraded, mask, 10, cfg);
    CHECK(a == b);
    for (int y = 0; y < 12; ++y)
        for (int x = 0; x < 20; ++x)
            if (mask.at(x, y)) CHECK(a.at(x, y) == degraded.at(x, y));
}

TEST_CASE("output does not depend on placeholder values") {
    ImageGrid img = fsrtest::make_random_image(16, 16, 6);
    SamplingMask mask = generate_quarter_mask({16, 16, 6});
    ImageGrid degraded = apply_mask(img, mask);
    ImageGrid poisoned = degraded;
    for (int y = 0; y < 16; ++y)
        for (int x = 0; x < 16; ++x)
            if (!mask.at(x, y)) poisoned.at(x, y) = 999.0;
    const FsrConfig cfg = small_cfg();
    CHECK(fsr_fixed(degraded, mask, 12, cfg) == fsr_fixed(poisoned, mask, 12, cfg));
}

TEST_CASE("matches the independent reference pipeline") {
    const FsrConfig cfg = small_cfg();
    for (auto [w, h] : {std::pair{8, 8}, std::pair{12, 12}, std::pair{10, 10}}) {
        ImageGrid img = fsrtest::make_random_image(w, h, 40 + w);
        SamplingMask mask = fsrtest::make_bernoulli_mask(w, h, 0.45, 50 + h);
        ImageGrid degraded = apply_mask(img, mask);
        BlockLayout layout = make_block_layout(w, h, cfg);
        std::vector<int> iters(layout.count(), 6);
        ImageGrid fast =
            reconstruct_image(degraded, mask, IterationPlan{iters, 6LL * layout.count()}, cfg);
        ImageGrid ref = fsrtest::reference_reconstruct(degraded, mask, iters, cfg);
        for (std::size_t i = 0; i < fast.samples().size(); ++i)
            CHECK(fast.samples()[i] == doctest::Approx(ref.samples()[i]).epsilon(1e-9));
    }
}

TEST_CASE("partial edge blocks are reconstructed in place") {
    // 10x10 with 4-pixel blocks leaves 2-pixel strips at the right and bottom
    ImageGrid img = fsrtest::make_random_image(10, 10, 7);
    SamplingMask mask = fsrtest::make_bernoulli_mask(10, 10, 0.4, 9);
    ImageGrid degraded = apply_mask(img, mask);
    ImageGrid out = fsr_fixed(degraded, mask, 6, small_cfg());
    for (int y = 0; y < 10; ++y)
        for (int x = 0; x < 10; ++x)
            if (mask.at(x, y)) CHECK(out.at(x, y) == degraded.at(x, y));
}

TEST_CASE("empty-support windows fall back to a constant fill") {
    // single block, nothing acquired: the window is empty and 128 fills in
    ImageGrid img(4, 4, 55.0);
    SamplingMask mask(4, 4, false);
    ImageGrid degraded = apply_mask(img, mask);
    RunStats stats;
    ImageGrid out = fsr_fixed(degraded, mask, 5, small_cfg(), &stats);
    for (double v : out.samples()) CHECK(v == 128.0);
    CHECK(stats.spent == 0);  // no model ran
    CHECK(stats.blocks_processed == 1);
}

TEST_CASE("fallback pixels feed later windows as reconstructed data") {
    // all pixels missing: block 0 falls back to 128 and later blocks model
    // from those delta-weighted pixels instead of falling back again
    ImageGrid img(8, 8, 55.0);
    SamplingMask mask(8, 8, false);
    ImageGrid degraded = apply_mask(img, mask);
    RunStats stats;
    ImageGrid out = fsr_fixed(degraded, mask, 5, small_cfg(), &stats);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x) CHECK(out.at(x, y) == 128.0);
    for (double v : out.samples()) {
        CHECK(v > 100.0);
        CHECK(v <= 128.0);
    }
    CHECK(stats.spent == 15);  // blocks 1..3 ran the model loop
    CHECK(stats.blocks_processed == 4);
}

TEST_CASE("uniform plans account for the whole budget") {
    IterationPlan plan = IterationPlan::uniform(24576, 20);
    CHECK(plan.total == 491520);
    CHECK_THROWS_AS(IterationPlan::uniform(4, 0), std::invalid_argument);

    ImageGrid img(8, 8, 1.0);
    SamplingMask mask(8, 8, true);
    CHECK_THROWS_AS(fsr_fixed(img, mask, 0, small_cfg()), std::invalid_argument);
}

TEST_CASE("plan validation rejects bad plans") {
    ImageGrid img(8, 8, 1.0);
    SamplingMask mask = generate_quarter_mask({8, 8, 1});
    IterationPlan plan;
    plan.per_block = {5, 5, 5};  // wrong length for a 2x2 block grid
    plan.total = 15;
    CHECK_THROWS_AS(reconstruct_image(apply_mask(img, mask), mask, plan, small_cfg()),
                    std::invalid_argument);
    plan.per_block = {5, 5, 5, 0};
    plan.total = 15;
    CHECK_THROWS_AS(reconstruct_image(apply_mask(img, mask), mask, plan, small_cfg()),
                    std::invalid_argument);
}

TEST_CASE("independent-blocks mode is deterministic and order-free") {
    ImageGrid img = fsrtest::make_random_image(16, 16, 8);
    SamplingMask mask = generate_quarter_mask({16, 16, 21});
    ImageGrid degraded = apply_mask(img, mask);
    const FsrConfig cfg = small_cfg();
    BlockLayout layout = make_block_layout(16, 16, cfg);
    IterationPlan plan = IterationPlan::uniform(static_cast<std::size_t>(layout.count()), 8);

    ImageGrid a = reconstruct_image(degraded, mask, plan, cfg, nullptr,
                                    TraversalMode::IndependentBlocks);
    ImageGrid b = reconstruct_image(degraded, mask, plan, cfg, nullptr,
                                    TraversalMode::IndependentBlocks);
    CHECK(a == b);

    // when damage is confined to one block, no window ever sees area R and
    // both traversal modes agree exactly
    SamplingMask local(16, 16, true);
    for (int y = 5; y < 7; ++y)
        for (int x = 5; x < 7; ++x) local.set(x, y, false);
    ImageGrid local_degraded = apply_mask(img, local);
    ImageGrid seq = reconstruct_image(local_degraded, local, plan, cfg);
    ImageGrid par = reconstruct_image(local_degraded, local, plan, cfg, nullptr,
                                      TraversalMode::IndependentBlocks);
    CHECK(seq == par);
}

TEST_SUITE_END();
