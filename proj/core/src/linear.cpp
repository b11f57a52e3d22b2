#include "fsr/linear.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fsr/delaunay.hpp"

namespace fsr {

namespace {

// Nearest acquired pixel by Euclidean distance, ties to the smaller (y, x).
// Ring search over Chebyshev radii; a ring beyond the best distance cannot win.
double nearest_acquired_value(const ImageGrid& img, const SamplingMask& mask, int qx, int qy) {
    const int w = img.width();
    const int h = img.height();
    long long best_d2 = -1;
    int best_x = -1, best_y = -1;
    auto consider = [&](int x, int y) {
        if (x < 0 || x >= w || y < 0 || y >= h || !mask.at(x, y)) return;
        long long dx = x - qx, dy = y - qy;
        long long d2 = dx * dx + dy * dy;
        if (best_d2 == -1 || d2 < best_d2 ||
            (d2 == best_d2 && (y < best_y || (y == best_y && x < best_x)))) {
            best_d2 = d2;
            best_x = x;
            best_y = y;
        }
    };
    const int max_r = std::max(w, h);
    for (int r = 0; r <= max_r; ++r) {
        if (best_d2 != -1 && static_cast<long long>(r) * r > best_d2) break;
        if (r == 0) {
            consider(qx, qy);
            continue;
        }
        for (int x = qx - r; x <= qx + r; ++x) {
            consider(x, qy - r);
            consider(x, qy + r);
        }
        for (int y = qy - r + 1; y <= qy + r - 1; ++y) {
            consider(qx - r, y);
            consider(qx + r, y);
        }
    }
    if (best_d2 == -1) throw std::logic_error("nearest_acquired_value: empty mask");
    return img.at(best_x, best_y);
}

}  // namespace

ImageGrid linear_reconstruct(const ImageGrid& degraded, const SamplingMask& mask) {
    if (degraded.width() != mask.width() || degraded.height() != mask.height())
        throw std::invalid_argument("linear_reconstruct: dimension mismatch");

    std::vector<Delaunay::Point> pts;
    std::vector<double> vals;
    for (int y = 0; y < degraded.height(); ++y) {
        for (int x = 0; x < degraded.width(); ++x) {
            if (mask.at(x, y)) {
                pts.push_back({static_cast<double>(x), static_cast<double>(y)});
                vals.push_back(degraded.at(x, y));
            }
        }
    }

    if (pts.empty()) return ImageGrid(degraded.width(), degraded.height(), 128.0);

    ImageGrid out = degraded;

    // Degenerate sets (under three points, or all collinear) cannot be
    // triangulated; fill from the nearest sample instead.
    bool collinear = true;
    if (pts.size() >= 3) {
        const auto& p0 = pts[0];
        const auto& p1 = pts[1];
        for (std::size_t i = 2; i < pts.size() && collinear; ++i) {
            double o = (p1.x - p0.x) * (pts[i].y - p0.y) - (p1.y - p0.y) * (pts[i].x - p0.x);
            if (o != 0.0) collinear = false;
        }
    }
    if (pts.size() < 3 || collinear) {
        for (int y = 0; y < out.height(); ++y)
            for (int x = 0; x < out.width(); ++x)
                if (!mask.at(x, y)) out.at(x, y) = nearest_acquired_value(degraded, mask, x, y);
        return out;
    }

    Delaunay dt(pts);
    int hint = dt.any_alive_triangle();
    for (int y = 0; y < out.height(); ++y) {
        for (int x = 0; x < out.width(); ++x) {
            if (mask.at(x, y)) continue;
            int t = dt.locate(static_cast<double>(x), static_cast<double>(y), hint);
            hint = t;
            if (dt.is_hull_triangle(t)) {
                out.at(x, y) = nearest_acquired_value(degraded, mask, x, y);
                continue;
            }
            auto wgt = dt.barycentric(t, static_cast<double>(x), static_cast<double>(y));
            const auto& tri = dt.triangle(t);
            out.at(x, y) = wgt[0] * vals[tri.v[0]] + wgt[1] * vals[tri.v[1]] +
                           wgt[2] * vals[tri.v[2]];
        }
    }
    return out;
}

}  // namespace fsr
