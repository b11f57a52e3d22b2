#include "fsr/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fsr {

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Uniform in [-0.5, 0.5) from a hash.
double signed_unit(std::uint64_t h) {
    return static_cast<double>(h >> 11) * (1.0 / 9007199254740992.0) - 0.5;
}

constexpr double kJitter = 1.0 / 1048576.0;  // 2^-20 pixels

// Morton interleave of two 16-bit values for a spatially coherent insertion order.
std::uint32_t morton(std::uint32_t x, std::uint32_t y) {
    auto spread = [](std::uint32_t v) {
        v &= 0xFFFF;
        v = (v | (v << 8)) & 0x00FF00FF;
        v = (v | (v << 4)) & 0x0F0F0F0F;
        v = (v | (v << 2)) & 0x33333333;
        v = (v | (v << 1)) & 0x55555555;
        return v;
    };
    return spread(x) | (spread(y) << 1);
}

}  // namespace

Delaunay::Delaunay(const std::vector<Point>& points) {
    if (points.size() < 3) throw std::invalid_argument("Delaunay: need at least 3 points");
    const int n = static_cast<int>(points.size());
    points_ = points;

    double min_x = points[0].x, max_x = points[0].x;
    double min_y = points[0].y, max_y = points[0].y;
    for (const Point& p : points) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const double cx = 0.5 * (min_x + max_x);
    const double cy = 0.5 * (min_y + max_y);
    const double r = std::max({max_x - min_x, max_y - min_y, 1.0}) * 64.0;
    points_.push_back({cx - 2.0 * r, cy - r});
    points_.push_back({cx + 2.0 * r, cy - r});
    points_.push_back({cx, cy + 2.0 * r});

    px_.resize(points_.size());
    py_.resize(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
        px_[i] = points_[i].x + kJitter * signed_unit(mix64(2 * i));
        py_[i] = points_[i].y + kJitter * signed_unit(mix64(2 * i + 1));
    }

    stamp_.assign(16, 0);
    create_triangle(n, n + 1, n + 2);

    // Insert in Morton order: neighboring points land in nearby triangles, so
    // the locate walk stays short.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    const double sx = 65535.0 / std::max(max_x - min_x, 1e-9);
    const double sy = 65535.0 / std::max(max_y - min_y, 1e-9);
    std::vector<std::uint32_t> key(n);
    for (int i = 0; i < n; ++i) {
        auto qx = static_cast<std::uint32_t>(std::clamp((points[i].x - min_x) * sx, 0.0, 65535.0));
        auto qy = static_cast<std::uint32_t>(std::clamp((points[i].y - min_y) * sy, 0.0, 65535.0));
        key[i] = morton(qx, qy);
    }
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return key[a] < key[b]; });

    int hint = 0;
    for (int i : order) {
        insert(i, hint);
        hint = last_created_;
    }
}

int Delaunay::create_triangle(int a, int b, int c) {
    int id;
    if (!free_.empty()) {
        id = free_.back();
        free_.pop_back();
    } else {
        id = static_cast<int>(tris_.size());
        tris_.push_back(Triangle{});
        if (stamp_.size() < tris_.size()) stamp_.resize(tris_.size() * 2, 0);
    }
    tris_[id].v = {a, b, c};
    tris_[id].nb = {-1, -1, -1};
    tris_[id].alive = true;
    last_created_ = id;
    return id;
}

double Delaunay::orient_perturbed(int a, int b, double x, double y) const {
    return (px_[b] - px_[a]) * (y - py_[a]) - (py_[b] - py_[a]) * (x - px_[a]);
}

double Delaunay::orient_perturbed(int a, int b, int c) const {
    return orient_perturbed(a, b, px_[c], py_[c]);
}

bool Delaunay::in_circumcircle(const Triangle& t, int p) const {
    const double adx = px_[t.v[0]] - px_[p], ady = py_[t.v[0]] - py_[p];
    const double bdx = px_[t.v[1]] - px_[p], bdy = py_[t.v[1]] - py_[p];
    const double cdx = px_[t.v[2]] - px_[p], cdy = py_[t.v[2]] - py_[p];
    const double ad = adx * adx + ady * ady;
    const double bd = bdx * bdx + bdy * bdy;
    const double cd = cdx * cdx + cdy * cdy;
    // positive for p strictly inside the circumcircle of a CCW triangle
    return adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) +
               ad * (bdx * cdy - bdy * cdx) >
           0.0;
}

int Delaunay::locate(double x, double y, int hint) const {
    int t = (hint >= 0 && hint < static_cast<int>(tris_.size()) && tris_[hint].alive)
                ? hint
                : any_alive_triangle();
    const std::size_t limit = 4 * tris_.size() + 64;
    std::size_t steps = 0;
    int from = -1;
    while (true) {
        if (++steps > limit) break;  // fall through to the exhaustive scan
        const Triangle& tri = tris_[t];
        int next = -1;
        for (int e = 0; e < 3; ++e) {
            int nb = tri.nb[e];
            if (nb == -1 || (nb == from && from != -1)) continue;
            if (orient_perturbed(tri.v[(e + 1) % 3], tri.v[(e + 2) % 3], x, y) < 0.0) {
                next = nb;
                break;
            }
        }
        if (next == -1) {
            bool inside = true;
            for (int e = 0; e < 3; ++e)
                if (orient_perturbed(tri.v[(e + 1) % 3], tri.v[(e + 2) % 3], x, y) < 0.0)
                    inside = false;
            if (inside) return t;
            break;  // stuck against a wall; scan instead
        }
        from = t;
        t = next;
    }
    for (int i = 0; i < static_cast<int>(tris_.size()); ++i) {
        if (!tris_[i].alive) continue;
        bool inside = true;
        for (int e = 0; e < 3; ++e)
            if (orient_perturbed(tris_[i].v[(e + 1) % 3], tris_[i].v[(e + 2) % 3], x, y) < 0.0)
                inside = false;
        if (inside) return i;
    }
    throw std::runtime_error("Delaunay: point cannot be located");
}

bool Delaunay::is_hull_triangle(int t) const {
    const int n = point_count();
    for (int v : tris_[t].v)
        if (v >= n) return true;
    return false;
}

std::array<double, 3> Delaunay::barycentric(int t, double x, double y) const {
    const Triangle& tri = tris_[t];
    const Point a = points_[tri.v[0]];
    const Point b = points_[tri.v[1]];
    const Point c = points_[tri.v[2]];
    double den = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    double w0, w1, w2;
    if (std::abs(den) > 1e-12) {
        w1 = ((x - a.x) * (c.y - a.y) - (y - a.y) * (c.x - a.x)) / den;
        w2 = ((b.x - a.x) * (y - a.y) - (b.y - a.y) * (x - a.x)) / den;
        w0 = 1.0 - w1 - w2;
    } else {
        // exact-coordinate sliver: use the perturbed vertices instead
        double pden = orient_perturbed(tri.v[0], tri.v[1], tri.v[2]);
        w1 = ((x - px_[tri.v[0]]) * (py_[tri.v[2]] - py_[tri.v[0]]) -
              (y - py_[tri.v[0]]) * (px_[tri.v[2]] - px_[tri.v[0]])) /
             pden;
        w2 = ((px_[tri.v[1]] - px_[tri.v[0]]) * (y - py_[tri.v[0]]) -
              (py_[tri.v[1]] - py_[tri.v[0]]) * (x - px_[tri.v[0]])) /
             pden;
        w0 = 1.0 - w1 - w2;
    }
    // keep interpolation convex under numeric noise
    if (w0 < 0.0 || w1 < 0.0 || w2 < 0.0 || w0 > 1.0 || w1 > 1.0 || w2 > 1.0) {
        w0 = std::clamp(w0, 0.0, 1.0);
        w1 = std::clamp(w1, 0.0, 1.0);
        w2 = std::clamp(w2, 0.0, 1.0);
        double s = w0 + w1 + w2;
        if (s > 0) {
            w0 /= s;
            w1 /= s;
            w2 /= s;
        } else {
            w0 = 1.0;
            w1 = w2 = 0.0;
        }
    }
    return {w0, w1, w2};
}

int Delaunay::any_alive_triangle() const {
    for (int i = static_cast<int>(tris_.size()) - 1; i >= 0; --i)
        if (tris_[i].alive) return i;
    throw std::runtime_error("Delaunay: no alive triangle");
}

std::vector<int> Delaunay::alive_triangles() const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(tris_.size()); ++i)
        if (tris_[i].alive) out.push_back(i);
    return out;
}

void Delaunay::insert(int p, int hint) {
    int t0 = locate(px_[p], py_[p], hint);

    // Bowyer-Watson cavity: every reachable triangle whose circumcircle holds p.
    ++epoch_;
    std::vector<int> cavity;
    std::vector<int> queue{t0};
    stamp_[t0] = epoch_;
    while (!queue.empty()) {
        int t = queue.back();
        queue.pop_back();
        if (!in_circumcircle(tris_[t], p)) {
            stamp_[t] = 0;  // visited but kept
            continue;
        }
        cavity.push_back(t);
        for (int nb : tris_[t].nb) {
            if (nb == -1 || stamp_[nb] == epoch_) continue;
            stamp_[nb] = epoch_;
            queue.push_back(nb);
        }
    }
    // the containing triangle is always part of the cavity
    if (cavity.empty()) cavity.push_back(t0);
    ++epoch_;
    for (int t : cavity) stamp_[t] = epoch_;

    struct BoundaryEdge {
        int a, b;      // directed CCW around the cavity
        int outside;   // triangle beyond the edge, -1 on the outer rim
    };
    std::vector<BoundaryEdge> rim;
    for (int t : cavity) {
        for (int e = 0; e < 3; ++e) {
            int nb = tris_[t].nb[e];
            if (nb != -1 && tris_[nb].alive && stamp_[nb] == epoch_) continue;
            rim.push_back({tris_[t].v[(e + 1) % 3], tris_[t].v[(e + 2) % 3], nb});
        }
    }
    for (int t : cavity) {
        tris_[t].alive = false;
        free_.push_back(t);
    }

    // One new triangle per rim edge, fanned around p.
    std::vector<int> fresh(rim.size());
    for (std::size_t i = 0; i < rim.size(); ++i) {
        fresh[i] = create_triangle(p, rim[i].a, rim[i].b);
        Triangle& nt = tris_[fresh[i]];
        nt.nb[0] = rim[i].outside;
        if (rim[i].outside != -1) {
            Triangle& out = tris_[rim[i].outside];
            for (int e = 0; e < 3; ++e)
                if (out.v[(e + 1) % 3] == rim[i].b && out.v[(e + 2) % 3] == rim[i].a)
                    out.nb[e] = fresh[i];
        }
    }
    // Stitch fan neighbors through the shared spokes (p, vertex).
    for (std::size_t i = 0; i < rim.size(); ++i) {
        for (std::size_t j = 0; j < rim.size(); ++j) {
            if (rim[j].a == rim[i].b) {
                tris_[fresh[i]].nb[1] = fresh[j];  // edge (b, p) of i touches (p, a) of j
                tris_[fresh[j]].nb[2] = fresh[i];
            }
        }
    }
}

}  // namespace fsr
