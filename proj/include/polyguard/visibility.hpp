#pragma once

#include "polyguard/region.hpp"

#include <map>
#include <memory>
#include <optional>

namespace polyguard {

// Closed visibility region. `region` always holds a convex-cell cover good
// for membership, containment and subtraction tests. `boundary` is present
// when the construction is crack-free (point sources; segment sources on the
// boundary or chords); `windows` are the boundary edges not on the polygon
// boundary, merged collinearly.
struct VisRegion {
    Region region;
    std::optional<SimplePolygon> boundary;
    std::vector<Segment> windows;

    bool contains(const Point& p) const { return region.contains(p); }
    Rat area2() const { return region.area2(); }
};

// Per-polygon visibility machinery with caching. Queries are exact; regions
// are closed sets represented up to measure zero (zero-width antennas are
// dropped, which never changes positive-area containment tests).
class VisibilityEngine {
  public:
    explicit VisibilityEngine(SimplePolygon P);

    const SimplePolygon& polygon() const { return P_; }
    const Triangulation& triangulation() const { return tri_; }

    // Star-shaped visibility region of q; throws std::domain_error if q is
    // outside P. Cached per q.
    const VisRegion& vis_point(const Point& q);

    // Weak visibility cells of segment (a,b) inside P, cached. Works for any
    // segment contained in P; cells may overlap for strictly interior
    // sources, so use only membership/subtraction on the result.
    const Region& weak_vis_cells(const Point& a, const Point& b);

    // Full weak visibility polygon with boundary; s must lie on the polygon
    // boundary or be a chord (both endpoints on the boundary).
    VisRegion weak_visibility_polygon(const Segment& s);

    // Enhanced (sign=+1) / diminished (sign=-1) visibility region.
    VisRegion vis_delta(const Point& q, const HalfAngle& h, int sign);

    // True iff q sees the whole closed segment (u,v): the triangle quv lies
    // inside P (degenerating to a segment when collinear).
    bool sees_edge(const Point& q, const Point& u, const Point& v) const;

    // True iff the convex cell lies fully inside vis(q).
    bool face_visible_from_point(const Point& q, const ConvexCell& f);

    // True iff some point of the segment (a,b) sees x.
    bool point_weakly_visible(const Point& a, const Point& b, const Point& x);

    // Query counters, for the CPU-phase accounting.
    long point_queries = 0;
    long weak_queries = 0;

  private:
    struct PointCmp {
        bool operator()(const Point& a, const Point& b) const { return a < b; }
    };
    struct SegCmp {
        bool operator()(const std::pair<Point, Point>& a,
                        const std::pair<Point, Point>& b) const {
            if (a.first != b.first) return a.first < b.first;
            return a.second < b.second;
        }
    };

    VisRegion compute_vis_point(const Point& q) const;
    Region compute_weak_cells(const Point& a, const Point& b) const;

    SimplePolygon P_;
    Triangulation tri_;
    std::map<Point, std::unique_ptr<VisRegion>, PointCmp> point_cache_;
    std::map<std::pair<Point, Point>, std::unique_ptr<Region>, SegCmp> weak_cache_;
};

// Free-function forms of the module operations (uncached).
VisRegion visibility_polygon(const SimplePolygon& P, const Point& q);
VisRegion weak_visibility_polygon(const SimplePolygon& P, const Segment& s);
VisRegion vis_delta(const SimplePolygon& P, const Point& q, const HalfAngle& h, int sign);

// Weak visibility region of a union of segments (a window chain), with the
// cells kept interior-disjoint across the pieces.
VisRegion weak_visibility_polygon_multi(const SimplePolygon& P, const std::vector<Segment>& chain);

// Boundary extraction for a crack-free cell tiling: cancels shared edges and
// walks the outer ring CCW. Returns the largest loop; `windows_out`, when
// given, receives the maximal boundary pieces that do not lie on an edge of
// `walls` (the polygon the cells live in).
std::optional<SimplePolygon> extract_union_boundary(const std::vector<ConvexCell>& cells,
                                                    const SimplePolygon& walls,
                                                    std::vector<Segment>* windows_out);

// Both parts of P cut along the chord (a,b); first part is the one to the
// left of a->b.
std::pair<SimplePolygon, SimplePolygon> split_polygon_by_chord(const SimplePolygon& P,
                                                               const Point& a, const Point& b);

}  // namespace polyguard
