#pragma once

#include "polyguard/rational.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace polyguard {

struct Vec {
    Rat x, y;
    bool is_zero() const { return sign(x) == 0 && sign(y) == 0; }
};

struct Point {
    Rat x, y;
};

inline bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
inline bool operator!=(const Point& a, const Point& b) { return !(a == b); }
// Lexicographic (x, then y).
inline bool operator<(const Point& a, const Point& b) {
    int c = cmp(a.x, b.x);
    if (c != 0) return c < 0;
    return a.y < b.y;
}

inline Vec operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator+(const Point& p, const Vec& v) { return {p.x + v.x, p.y + v.y}; }
inline Vec operator*(const Rat& s, const Vec& v) { return {s * v.x, s * v.y}; }
inline Vec operator-(const Vec& v) { return {-v.x, -v.y}; }

inline Rat cross(const Vec& u, const Vec& v) { return u.x * v.y - u.y * v.x; }
inline Rat dot(const Vec& u, const Vec& v) { return u.x * v.x + u.y * v.y; }

std::size_t hash_point(const Point& p);

struct Segment {
    Point a, b;  // a != b
};

struct Ray {
    Point apex;
    Vec dir;  // nonzero
};

// Angle stored as the tangent of its half; the represented angle is
// 2*atan(t), so rotations stay exact rational linear maps.
struct HalfAngle {
    Rat t;  // t >= 0
};

inline HalfAngle half_angle_pow2(int k) { return HalfAngle{pow2(-k)}; }

// Sign of (q-p) x (r-p): +1 counter-clockwise, 0 collinear, -1 clockwise.
int orientation(const Point& p, const Point& q, const Point& r);

// Exact rotation of v by 2*atan(h.t), counter-clockwise when ccw is set.
// The norm is preserved exactly (the map is a true rotation).
Vec rotate(const Vec& v, const HalfAngle& h, bool ccw);

struct SegmentOverlap {
    Segment common;
};

using SegIntersection = std::variant<std::monostate, Point, Segment>;

// Exact intersection of two closed segments: empty, a single point, or an
// overlap segment (collinear case).
SegIntersection segment_intersection(const Segment& s1, const Segment& s2);

// True if p lies on the closed segment s.
bool on_segment(const Point& p, const Segment& s);

// Intersection parameter of ray with segment: returns t >= 0 such that
// apex + t*dir is the first contact, or nullopt. Collinear overlaps report
// the nearest overlap point with t > 0 (or t = 0 if the apex lies on s).
std::optional<Rat> ray_segment_param(const Ray& r, const Segment& s);

// Point at parameter t along the ray.
inline Point ray_at(const Ray& r, const Rat& t) { return r.apex + t * r.dir; }

// Intersection point of lines (p1,p2) and (p3,p4); nullopt when parallel.
std::optional<Point> line_intersection(const Point& p1, const Point& p2, const Point& p3,
                                       const Point& p4);

// Strict angular order of direction vectors around the origin, starting at
// direction (1,0) and sweeping counter-clockwise. Exact; collinear
// same-direction vectors compare equal.
bool angle_less(const Vec& u, const Vec& v);

// True when d is strictly inside the counter-clockwise cone from a to b
// (the cone may be reflex; a and b must be non-parallel or opposite).
bool strictly_inside_ccw_cone(const Vec& a, const Vec& b, const Vec& d);

}  // namespace polyguard
