#include "fsr/texture.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace fsr {

void TdConfig::validate() const {
    if (surround < 0) throw std::invalid_argument("TdConfig: surround must be >= 0");
    if (min_iters < 1 || min_iters > max_iters)
        throw std::invalid_argument("TdConfig: need 1 <= min_iters <= max_iters");
}

BlockStats block_variance(const ImageGrid& image, const SamplingMask& mask,
                          const SamplingMask& reconstructed, int block_index, int surround,
                          const FsrConfig& cfg) {
    if (surround < 0) throw std::invalid_argument("block_variance: surround must be >= 0");
    BlockLayout layout = make_block_layout(image.width(), image.height(), cfg);
    if (block_index < 0 || block_index >= layout.count())
        throw std::invalid_argument("block_variance: block index out of range");
    BlockLayout::Rect rect = layout.block_rect(block_index);

    const int x0 = std::max(0, rect.x0 - surround);
    const int y0 = std::max(0, rect.y0 - surround);
    const int x1 = std::min(image.width(), rect.x1 + surround);
    const int y1 = std::min(image.height(), rect.y1 + surround);

    BlockStats stats;
    double sum = 0.0;
    for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) {
            if (!mask.at(x, y) && !reconstructed.at(x, y)) continue;  // loss area is neglected
            sum += image.at(x, y);
            stats.available += 1;
        }
    }
    if (stats.available <= 1) {
        stats.mean = stats.available == 1 ? sum : 0.0;
        stats.degenerate = true;
        return stats;
    }
    stats.mean = sum / stats.available;
    double ss = 0.0;
    for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) {
            if (!mask.at(x, y) && !reconstructed.at(x, y)) continue;
            double d = image.at(x, y) - stats.mean;
            ss += d * d;
        }
    }
    stats.variance = ss / (stats.available - 1);
    return stats;
}

std::vector<double> normalize_variances(std::vector<BlockStats>& stats) {
    if (stats.empty()) throw std::invalid_argument("normalize_variances: no blocks");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const BlockStats& s : stats) {
        lo = std::min(lo, s.variance);
        hi = std::max(hi, s.variance);
    }
    std::vector<double> out(stats.size(), 0.0);
    if (hi > lo) {
        for (std::size_t i = 0; i < stats.size(); ++i)
            out[i] = (stats[i].variance - lo) / (hi - lo);
    }
    for (std::size_t i = 0; i < stats.size(); ++i) stats[i].normalized = out[i];
    return out;
}

IterationPlan allocate_iterations(const std::vector<double>& normalized_variances,
                                  int avg_iterations, const TdConfig& td, bool* bounds_relaxed) {
    td.validate();
    if (normalized_variances.empty())
        throw std::invalid_argument("allocate_iterations: no blocks");
    if (avg_iterations < 1)
        throw std::invalid_argument("allocate_iterations: avg_iterations must be >= 1");

    const std::size_t count = normalized_variances.size();
    const long long target = static_cast<long long>(count) * avg_iterations;
    const double lo = td.min_iters;
    const double hi = td.max_iters;
    const double span = hi - lo;
    if (bounds_relaxed) *bounds_relaxed = false;

    std::vector<double> value(count);
    if (target < static_cast<long long>(count) * td.min_iters ||
        target > static_cast<long long>(count) * td.max_iters) {
        // Conservation beats the bounds: fall back to a uniform share.
        std::fill(value.begin(), value.end(), static_cast<double>(target) / count);
        if (bounds_relaxed) *bounds_relaxed = true;
    } else {
        double mapped_sum = 0.0;
        for (double v : normalized_variances) mapped_sum += span * v;
        const double uniform_share = (static_cast<double>(target) - mapped_sum) / count;
        std::vector<std::uint8_t> clamped(count, 0);
        for (std::size_t i = 0; i < count; ++i) {
            value[i] = span * normalized_variances[i] + uniform_share;
            if (value[i] < lo) {
                value[i] = lo;
                clamped[i] = 1;
            } else if (value[i] > hi) {
                value[i] = hi;
                clamped[i] = 1;
            }
        }

        // Uniform redistribution over the unclamped blocks, repeated until
        // stable, converges to a single common shift with blocks pinning at
        // the approached bound in value order. Solving for that shift
        // directly (sort + prefix sums) gives the same fixpoint in
        // O(B log B) instead of one pass per newly pinned block.
        for (int era = 0; era < 4; ++era) {
            double total = std::accumulate(value.begin(), value.end(), 0.0);
            double surplus = static_cast<double>(target) - total;
            if (std::abs(surplus) < 1e-9) break;

            std::vector<std::size_t> open;
            open.reserve(count);
            for (std::size_t i = 0; i < count; ++i)
                if (!clamped[i]) open.push_back(i);
            if (open.empty()) {
                // Every block sits on a bound but the budget is attainable:
                // reopen the blocks with headroom in the needed direction.
                for (std::size_t i = 0; i < count; ++i)
                    if ((surplus > 0 && value[i] < hi) || (surplus < 0 && value[i] > lo)) {
                        clamped[i] = 0;
                        open.push_back(i);
                    }
                if (open.empty()) break;  // unreachable while target is attainable
            }

            const bool removing = surplus < 0;
            const double bound = removing ? lo : hi;
            // pin order: the blocks nearest the approached bound pin first
            std::sort(open.begin(), open.end(), [&](std::size_t a, std::size_t b) {
                return removing ? value[a] < value[b] : value[a] > value[b];
            });
            double open_sum = 0.0;
            for (std::size_t i : open) open_sum += value[i];
            const double outside_sum = total - open_sum;

            const std::size_t k = open.size();
            double prefix = 0.0;  // sum of the first m (pinned) values
            bool solved = false;
            for (std::size_t m = 0; m < k; ++m) {
                const double rest_sum = open_sum - prefix;
                const double rest = static_cast<double>(k - m);
                const double shift =
                    (static_cast<double>(target) - outside_sum - bound * static_cast<double>(m) -
                     rest_sum) /
                    rest;
                const double eps = 1e-9;
                bool prev_pins = m == 0 || (removing ? value[open[m - 1]] + shift <= bound + eps
                                                     : value[open[m - 1]] + shift >= bound - eps);
                bool next_stays = removing ? value[open[m]] + shift >= bound - eps
                                           : value[open[m]] + shift <= bound + eps;
                if (prev_pins && next_stays) {
                    for (std::size_t j = 0; j < m; ++j) {
                        value[open[j]] = bound;
                        clamped[open[j]] = 1;
                    }
                    for (std::size_t j = m; j < k; ++j) value[open[j]] += shift;
                    solved = true;
                    break;
                }
                prefix += value[open[m]];
            }
            if (solved) break;
            // the whole open set pins at the bound; the next era reopens
            for (std::size_t i : open) {
                value[i] = bound;
                clamped[i] = 1;
            }
        }
    }

    // Largest-remainder rounding conserves the integer total exactly. Ties go
    // to the more textured block first so the mapping stays monotone.
    IterationPlan plan;
    plan.per_block.resize(count);
    long long floor_sum = 0;
    std::vector<double> remainder(count);
    for (std::size_t i = 0; i < count; ++i) {
        double f = std::floor(value[i]);
        plan.per_block[i] = static_cast<int>(f);
        remainder[i] = value[i] - f;
        floor_sum += plan.per_block[i];
    }
    long long bumps = target - floor_sum;
    if (bumps > 0) {
        std::vector<std::size_t> order(count);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (remainder[a] != remainder[b]) return remainder[a] > remainder[b];
            if (normalized_variances[a] != normalized_variances[b])
                return normalized_variances[a] > normalized_variances[b];
            return a < b;
        });
        for (std::size_t r = 0; r < order.size() && bumps > 0; ++r) {
            plan.per_block[order[r]] += 1;
            --bumps;
        }
    }
    plan.total = target;
    plan.validate();
    return plan;
}

TdPlan compute_td_plan(const ImageGrid& degraded, const SamplingMask& mask, int avg_iterations,
                       const FsrConfig& cfg, const TdConfig& td) {
    cfg.validate();
    if (degraded.width() != mask.width() || degraded.height() != mask.height())
        throw std::invalid_argument("compute_td_plan: mask dimensions do not match image");
    BlockLayout layout = make_block_layout(degraded.width(), degraded.height(), cfg);
    const SamplingMask none(degraded.width(), degraded.height(), false);

    TdPlan result;
    result.stats.reserve(static_cast<std::size_t>(layout.count()));
    for (int b = 0; b < layout.count(); ++b)
        result.stats.push_back(block_variance(degraded, mask, none, b, td.surround, cfg));
    std::vector<double> normalized = normalize_variances(result.stats);
    result.plan = allocate_iterations(normalized, avg_iterations, td, &result.bounds_relaxed);
    return result;
}

ImageGrid td_fsr(const ImageGrid& degraded, const SamplingMask& mask, int avg_iterations,
                 const FsrConfig& cfg, const TdConfig& td, RunStats* stats) {
    TdPlan planned = compute_td_plan(degraded, mask, avg_iterations, cfg, td);
    ImageGrid out = reconstruct_image(degraded, mask, planned.plan, cfg, stats);
    if (stats) stats->bounds_relaxed = planned.bounds_relaxed;
    return out;
}

void write_plan_csv(const TdPlan& plan, std::ostream& out) {
    out << "blockIndex,variance,normalized,iterations\n";
    for (std::size_t i = 0; i < plan.stats.size(); ++i) {
        out << i << ',' << plan.stats[i].variance << ',' << plan.stats[i].normalized << ','
            << plan.plan.per_block[i] << '\n';
    }
}

}  // namespace fsr
