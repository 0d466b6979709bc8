#pragma once

#include "polyguard/polygon.hpp"

#include <optional>
#include <vector>

namespace polyguard {

struct BBox {
    Rat xlo, ylo, xhi, yhi;
    bool overlaps(const BBox& o) const {
        return cmp(xlo, o.xhi) <= 0 && cmp(o.xlo, xhi) <= 0 && cmp(ylo, o.yhi) <= 0 &&
               cmp(o.ylo, yhi) <= 0;
    }
    bool contains(const Point& p) const {
        return cmp(xlo, p.x) <= 0 && cmp(p.x, xhi) <= 0 && cmp(ylo, p.y) <= 0 &&
               cmp(p.y, yhi) <= 0;
    }
};

BBox bbox_of(const std::vector<Point>& pts);

// Convex polygon with positive area, CCW ring.
struct ConvexCell {
    std::vector<Point> pts;

    Rat area2() const;
    Point centroid() const;
    BBox bbox() const { return bbox_of(pts); }
    bool contains(const Point& p) const;  // closed
};

// Clip a convex CCW ring to the closed half-plane left of a->b.
// Returns nullopt when the result has zero area.
std::optional<ConvexCell> clip_halfplane(const ConvexCell& c, const Point& a, const Point& b);

// Closed intersection of two convex cells; nullopt when the intersection has
// zero area (touching cells intersect in a point or segment and yield nullopt).
std::optional<ConvexCell> cell_intersection(const ConvexCell& c1, const ConvexCell& c2);

// True when the closed cells share at least one point (touching counts).
bool cells_touch(const ConvexCell& c1, const ConvexCell& c2);

// Cover of the closure of c \ k by convex cells with disjoint interiors.
std::vector<ConvexCell> cell_subtract(const ConvexCell& c, const ConvexCell& k);

// A region as a union of convex cells. When built by the constructors here
// the cells have pairwise disjoint interiors, so area() is exact; regions
// produced by merging may overlap and are only used for membership and as
// subtrahends.
struct Region {
    std::vector<ConvexCell> cells;

    static Region from_polygon(const SimplePolygon& P);
    static Region from_cell(ConvexCell c);

    bool empty() const { return cells.empty(); }
    Rat area2() const;  // exact when cells are interior-disjoint
    bool contains(const Point& p) const;
    BBox bbox() const;

    void subtract_cell(const ConvexCell& k);
    void subtract(const Region& other);
    void clip_halfplane_inplace(const Point& a, const Point& b);
    void append(const Region& other);  // union as cell list (may overlap)
};

// area2 of the closure of (convex face) minus region; 0 iff face is covered
// up to measure zero, i.e. the closed region contains the face.
Rat uncovered_area2(const ConvexCell& face, const Region& r);

// True iff the convex cell is contained in the closed union of the region's
// cells (up to measure zero, equivalent to containment for closed unions).
bool cell_covered_by(const ConvexCell& face, const Region& r);

}  // namespace polyguard
