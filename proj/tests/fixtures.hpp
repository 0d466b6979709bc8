#pragma once

#include "polyguard/polygon.hpp"

#include <vector>

namespace polyguard::fixtures {

inline Point pt(long x, long y) { return {rat(x), rat(y)}; }
inline Point pt(long xn, long xd, long yn, long yd) { return {rat(xn, xd), rat(yn, yd)}; }

inline SimplePolygon unit_square() {
    return SimplePolygon::from_points({pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)});
}

inline SimplePolygon square(long side) {
    return SimplePolygon::from_points({pt(0, 0), pt(side, 0), pt(side, side), pt(0, side)});
}

// Bar [0,4]x[0,2] plus column [2,4]x[2,4]; single reflex vertex at (2,2).
inline SimplePolygon l_fixture() {
    return SimplePolygon::from_points(
        {pt(0, 0), pt(4, 0), pt(4, 4), pt(2, 4), pt(2, 2), pt(0, 2)});
}

// Bar [0,6]x[0,2] with prongs [0,2]x[2,4] and [4,6]x[2,4]; reflex at (2,2), (4,2).
inline SimplePolygon u_fixture() {
    return SimplePolygon::from_points(
        {pt(0, 0), pt(6, 0), pt(6, 4), pt(4, 4), pt(4, 2), pt(2, 2), pt(2, 4), pt(0, 4)});
}

// Comb with k teeth pointing up; needs exactly k guards. Tooth i occupies
// [4i, 4i+1] x [2,8]; the base strip is [0, 4(k-1)+1] x [0,2]. 4k vertices.
inline SimplePolygon comb_fixture(int k) {
    long W = 4 * (k - 1) + 1;
    std::vector<Point> v;
    v.push_back(pt(0, 0));
    v.push_back(pt(W, 0));
    v.push_back(pt(W, 8));
    for (int i = k - 1; i >= 1; --i) {
        v.push_back(pt(4 * i, 8));
        v.push_back(pt(4 * i, 2));
        v.push_back(pt(4 * (i - 1) + 1, 2));
        v.push_back(pt(4 * (i - 1) + 1, 8));
    }
    v.push_back(pt(0, 8));
    return SimplePolygon::from_points(v);
}

inline SimplePolygon convex_pentagon() {
    return SimplePolygon::from_points({pt(0, 0), pt(4, 0), pt(5, 3), pt(2, 5), pt(-1, 2)});
}

// Width-1 corridor snaking right, up, left, up: produces a weak visibility
// polygon tree of depth >= 3 from the left end.
inline SimplePolygon snake_fixture() {
    return SimplePolygon::from_points({pt(0, 0), pt(4, 0), pt(4, 4), pt(2, 4), pt(2, 6),
                                       pt(1, 6), pt(1, 3), pt(3, 3), pt(3, 1), pt(0, 1)});
}

}  // namespace polyguard::fixtures
