#pragma once

#include "polyguard/geometry.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace polyguard {

// Closed simple polygon, counter-clockwise vertex ring. The reflex index set
// is recomputed on construction, never trusted from callers.
class SimplePolygon {
  public:
    SimplePolygon() = default;

    // Normalizes to CCW starting at the lexicographically smallest vertex and
    // validates simplicity. Throws std::invalid_argument on bad input.
    static SimplePolygon from_points(std::vector<Point> pts);

    // Same, but keeps the given ring order (must already be CCW).
    static SimplePolygon from_ccw_ring(std::vector<Point> pts, bool validate = true);

    int size() const { return (int)verts_.size(); }
    const Point& v(int i) const { return verts_[mod(i)]; }
    const std::vector<Point>& vertices() const { return verts_; }
    Segment edge(int i) const { return {verts_[mod(i)], verts_[mod(i + 1)]}; }

    const std::vector<int>& reflex_indices() const { return reflex_; }
    bool is_reflex(int i) const;
    bool is_reflex_point(const Point& p) const;
    bool is_convex_vertex_point(const Point& p) const;
    std::vector<Point> reflex_points() const;

    Rat area2() const;  // twice the signed area (positive)
    Rat area() const { return area2() / 2; }

    bool contains(const Point& p) const;      // boundary-inclusive
    bool on_boundary(const Point& p) const;
    // True iff the closed segment pq lies inside the closed polygon.
    bool contains_segment(const Point& p, const Point& q) const;

    // True iff p sees q inside this polygon (segment containment).
    bool sees(const Point& p, const Point& q) const { return contains_segment(p, q); }

  private:
    int mod(int i) const {
        int n = (int)verts_.size();
        i %= n;
        return i < 0 ? i + n : i;
    }
    void compute_reflex();

    std::vector<Point> verts_;
    std::vector<int> reflex_;
};

// A maximal free segment inside P with both endpoints on the boundary.
struct Chord {
    Point a, b;
};

// Events of a line against the polygon boundary, used for chords and
// maximal segments. Returns the inclusion intervals of {origin + t*dir}
// inside P as sorted, disjoint, closed t-intervals. With merge_touching
// false, intervals are kept split at every boundary contact.
std::vector<std::pair<Rat, Rat>> line_in_polygon_intervals(const SimplePolygon& P,
                                                           const Point& origin, const Vec& dir,
                                                           bool merge_touching = true);

// The chord of P containing a and b, if seg(a,b) lies inside P.
std::optional<Chord> chord_through(const SimplePolygon& P, const Point& a, const Point& b);

// Maximal segment inside P starting at apex in direction dir; nullopt when
// the ray leaves P immediately.
std::optional<Segment> max_segment_in(const SimplePolygon& P, const Point& apex, const Vec& dir);

// Exact triangulation by ear clipping. Collinear (straight) ring vertices are
// dropped; the triangle set covers the polygon exactly.
class Triangulation {
  public:
    struct Tri {
        int v[3];   // CCW vertex ids
        int nb[3];  // neighbor across edge (v[i], v[(i+1)%3]), or -1
    };

    static Triangulation build(const SimplePolygon& P);

    const std::vector<Point>& points() const { return pts_; }
    const std::vector<Tri>& tris() const { return tris_; }
    const Point& p(int v) const { return pts_[v]; }

    bool tri_contains(int t, const Point& q) const;
    // Any triangle whose closure contains q; -1 if outside.
    int locate(const Point& q) const;
    // All triangles whose closure contains q.
    std::vector<int> locate_all(const Point& q) const;
    // Dual-tree path between triangles (sequence of triangle ids).
    std::vector<int> tri_path(int from, int to) const;

  private:
    std::vector<Point> pts_;
    std::vector<Tri> tris_;
};

// Cumulative seconds this thread has spent building triangulations; used by
// the solver's CPU-phase accounting.
double& triangulation_seconds();

// Exact geodesic between p and q inside P; interior polyline vertices are
// reflex vertices of P. Throws std::domain_error when p or q is outside.
std::vector<Point> shortest_path(const SimplePolygon& P, const Point& p, const Point& q);

// Variant reusing a prebuilt triangulation of P.
std::vector<Point> shortest_path(const SimplePolygon& P, const Triangulation& T, const Point& p,
                                 const Point& q);

}  // namespace polyguard
