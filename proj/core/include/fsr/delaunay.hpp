#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace fsr {

/// Incremental Delaunay triangulation of a 2-D point set. Cocircular and
/// collinear ties (ubiquitous on integer pixel grids) are broken by a
/// deterministic per-point symbolic perturbation applied only inside the
/// geometric predicates, so results are reproducible while interpolation can
/// still use the exact input coordinates.
class Delaunay {
public:
    struct Point {
        double x, y;
    };

    /// Builds the triangulation. The three synthetic far-away vertices used to
    /// bootstrap the structure keep ids point_count()..point_count()+2.
    explicit Delaunay(const std::vector<Point>& points);

    int point_count() const { return static_cast<int>(points_.size()) - 3; }

    struct Triangle {
        std::array<int, 3> v;   // vertex ids, CCW in perturbed coordinates
        std::array<int, 3> nb;  // neighbor across the edge opposite v[i], -1 if none
        bool alive = false;
    };

    /// Walks from `hint` to the triangle containing (x, y); any alive triangle
    /// id works as a hint. The containing triangle of a point beyond the hull
    /// touches a synthetic vertex (see is_hull_triangle).
    int locate(double x, double y, int hint) const;

    bool is_hull_triangle(int t) const;

    /// Barycentric weights of (x, y) in triangle t, computed from the exact
    /// coordinates (falling back to perturbed ones for degenerate slivers).
    std::array<double, 3> barycentric(int t, double x, double y) const;

    const Triangle& triangle(int t) const { return tris_[t]; }
    int any_alive_triangle() const;
    std::vector<int> alive_triangles() const;

    /// Perturbed coordinates, exposed so tests can verify the empty
    /// circumcircle property of the perturbed set.
    Point perturbed(int vertex) const { return {px_[vertex], py_[vertex]}; }

private:
    int create_triangle(int a, int b, int c);
    void insert(int p, int hint);
    double orient_perturbed(int a, int b, double x, double y) const;
    double orient_perturbed(int a, int b, int c) const;
    bool in_circumcircle(const Triangle& t, int p) const;

    std::vector<Point> points_;      // exact coordinates incl. synthetic vertices
    std::vector<double> px_, py_;    // perturbed coordinates
    std::vector<Triangle> tris_;
    std::vector<int> free_;
    mutable std::vector<std::uint32_t> stamp_;
    mutable std::uint32_t epoch_ = 0;
    int last_created_ = -1;
};

}  // namespace fsr
