#include "polyguard/region.hpp"

#include <algorithm>
#include <cassert>

namespace polyguard {

BBox bbox_of(const std::vector<Point>& pts) {
    BBox b{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
    for (const Point& p : pts) {
        if (cmp(p.x, b.xlo) < 0) b.xlo = p.x;
        if (cmp(p.x, b.xhi) > 0) b.xhi = p.x;
        if (cmp(p.y, b.ylo) < 0) b.ylo = p.y;
        if (cmp(p.y, b.yhi) > 0) b.yhi = p.y;
    }
    return b;
}

Rat ConvexCell::area2() const {
    Rat a = 0;
    int n = (int)pts.size();
    for (int i = 0; i < n; ++i) {
        const Point& p = pts[i];
        const Point& q = pts[(i + 1) % n];
        a += p.x * q.y - q.x * p.y;
    }
    return a;
}

Point ConvexCell::centroid() const {
    Rat sx = 0, sy = 0;
    for (const Point& p : pts) {
        sx += p.x;
        sy += p.y;
    }
    Rat n((unsigned long)pts.size());
    return {sx / n, sy / n};
}

bool ConvexCell::contains(const Point& p) const {
    int n = (int)pts.size();
    for (int i = 0; i < n; ++i)
        if (orientation(pts[i], pts[(i + 1) % n], p) < 0) return false;
    return true;
}

std::optional<ConvexCell> clip_halfplane(const ConvexCell& c, const Point& a, const Point& b) {
    std::vector<Point> out;
    int n = (int)c.pts.size();
    for (int i = 0; i < n; ++i) {
        const Point& cur = c.pts[i];
        const Point& nxt = c.pts[(i + 1) % n];
        int oc = orientation(a, b, cur);
        int on = orientation(a, b, nxt);
        if (oc >= 0) out.push_back(cur);
        if ((oc > 0 && on < 0) || (oc < 0 && on > 0)) {
            auto x = line_intersection(a, b, cur, nxt);
            out.push_back(*x);
        }
    }
    if (out.size() < 3) return std::nullopt;
    // Drop exact duplicates.
    std::vector<Point> ded;
    for (const Point& p : out)
        if (ded.empty() || !(ded.back() == p)) ded.push_back(p);
    while (ded.size() > 1 && ded.front() == ded.back()) ded.pop_back();
    if (ded.size() < 3) return std::nullopt;
    ConvexCell r{std::move(ded)};
    if (sgn(r.area2()) <= 0) return std::nullopt;
    return r;
}

std::optional<ConvexCell> cell_intersection(const ConvexCell& c1, const ConvexCell& c2) {
    std::optional<ConvexCell> cur = c1;
    int n = (int)c2.pts.size();
    for (int i = 0; i < n && cur; ++i) cur = clip_halfplane(*cur, c2.pts[i], c2.pts[(i + 1) % n]);
    return cur;
}

bool cells_touch(const ConvexCell& c1, const ConvexCell& c2) {
    // Separating axis over both edge sets, exact and closed.
    auto separated_by = [](const ConvexCell& a, const ConvexCell& b) {
        int n = (int)a.pts.size();
        for (int i = 0; i < n; ++i) {
            const Point& p = a.pts[i];
            const Point& q = a.pts[(i + 1) % n];
            bool all_out = true;
            for (const Point& x : b.pts)
                if (orientation(p, q, x) >= 0) {
                    all_out = false;
                    break;
                }
            if (all_out) return true;
        }
        return false;
    };
    return !separated_by(c1, c2) && !separated_by(c2, c1);
}

std::vector<ConvexCell> cell_subtract(const ConvexCell& c, const ConvexCell& k) {
    std::vector<ConvexCell> out;
    if (!c.bbox().overlaps(k.bbox())) {
        out.push_back(c);
        return out;
    }
    std::optional<ConvexCell> rest = c;
    int n = (int)k.pts.size();
    for (int i = 0; i < n && rest; ++i) {
        const Point& a = k.pts[i];
        const Point& b = k.pts[(i + 1) % n];
        // Piece outside half-plane i (right of a->b), inside all previous.
        if (auto piece = clip_halfplane(*rest, b, a)) out.push_back(std::move(*piece));
        rest = clip_halfplane(*rest, a, b);
    }
    return out;
}

Region Region::from_polygon(const SimplePolygon& P) {
    Region r;
    Triangulation T = Triangulation::build(P);
    for (const auto& t : T.tris()) {
        ConvexCell c;
        c.pts = {T.p(t.v[0]), T.p(t.v[1]), T.p(t.v[2])};
        r.cells.push_back(std::move(c));
    }
    return r;
}

Region Region::from_cell(ConvexCell c) {
    Region r;
    r.cells.push_back(std::move(c));
    return r;
}

Rat Region::area2() const {
    Rat a = 0;
    for (const auto& c : cells) a += c.area2();
    return a;
}

bool Region::contains(const Point& p) const {
    for (const auto& c : cells)
        if (c.contains(p)) return true;
    return false;
}

BBox Region::bbox() const {
    assert(!cells.empty());
    BBox b = cells[0].bbox();
    for (const auto& c : cells) {
        BBox cb = c.bbox();
        if (cmp(cb.xlo, b.xlo) < 0) b.xlo = cb.xlo;
        if (cmp(cb.xhi, b.xhi) > 0) b.xhi = cb.xhi;
        if (cmp(cb.ylo, b.ylo) < 0) b.ylo = cb.ylo;
        if (cmp(cb.yhi, b.yhi) > 0) b.yhi = cb.yhi;
    }
    return b;
}

void Region::subtract_cell(const ConvexCell& k) {
    std::vector<ConvexCell> next;
    for (const auto& c : cells) {
        auto pieces = cell_subtract(c, k);
        for (auto& p : pieces) next.push_back(std::move(p));
    }
    cells = std::move(next);
}

void Region::subtract(const Region& other) {
    for (const auto& k : other.cells) {
        if (cells.empty()) break;
        subtract_cell(k);
    }
}

void Region::clip_halfplane_inplace(const Point& a, const Point& b) {
    std::vector<ConvexCell> next;
    for (const auto& c : cells)
        if (auto piece = clip_halfplane(c, a, b)) next.push_back(std::move(*piece));
    cells = std::move(next);
}

void Region::append(const Region& other) {
    cells.insert(cells.end(), other.cells.begin(), other.cells.end());
}

Rat uncovered_area2(const ConvexCell& face, const Region& r) {
    std::vector<ConvexCell> rest{face};
    BBox fb = face.bbox();
    for (const auto& k : r.cells) {
        if (rest.empty()) break;
        if (!fb.overlaps(k.bbox())) continue;
        std::vector<ConvexCell> next;
        for (const auto& c : rest) {
            auto pieces = cell_subtract(c, k);
            for (auto& p : pieces) next.push_back(std::move(p));
        }
        rest = std::move(next);
    }
    Rat a = 0;
    for (const auto& c : rest) a += c.area2();
    return a;
}

bool cell_covered_by(const ConvexCell& face, const Region& r) {
    return sgn(uncovered_area2(face, r)) == 0;
}

}  // namespace polyguard
