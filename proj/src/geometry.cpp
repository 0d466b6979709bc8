#include "polyguard/geometry.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace polyguard {

bool parse_rat(const std::string& token, Rat& out) {
    if (token.empty()) return false;
    std::string t = token;
    auto slash = t.find('/');
    try {
        if (slash == std::string::npos) {
            mpz_class n;
            if (n.set_str(t, 10) != 0) return false;
            out = Rat(n);
        } else {
            std::string ns = t.substr(0, slash), ds = t.substr(slash + 1);
            if (ns.empty() || ds.empty()) return false;
            mpz_class n, d;
            if (n.set_str(ns, 10) != 0 || d.set_str(ds, 10) != 0) return false;
            if (sgn(d) == 0) return false;
            out = Rat(n, d);
            out.canonicalize();
        }
    } catch (const std::invalid_argument&) {
        return false;
    }
    return true;
}

std::string rat_to_decimal(const Rat& r, int significant_digits) {
    if (sgn(r) == 0) return "0";
    mpf_class f(r, significant_digits * 4 + 64);
    mp_exp_t exp;
    std::string digits = f.get_str(exp, 10, significant_digits);
    bool neg = false;
    if (!digits.empty() && digits[0] == '-') {
        neg = true;
        digits = digits.substr(1);
    }
    std::string s;
    if (exp <= 0) {
        s = "0." + std::string(-exp, '0') + digits;
    } else if ((std::size_t)exp >= digits.size()) {
        s = digits + std::string(exp - digits.size(), '0');
    } else {
        s = digits.substr(0, exp) + "." + digits.substr(exp);
    }
    return neg ? "-" + s : s;
}

std::size_t hash_rat(const Rat& r) {
    std::size_t h = 1469598103934665603ull;
    auto mix = [&h](std::size_t v) {
        h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    const mpz_class& n = r.get_num();
    const mpz_class& d = r.get_den();
    mix((std::size_t)mpz_get_si(n.get_mpz_t()));
    mix(mpz_size(n.get_mpz_t()));
    mix((std::size_t)mpz_get_si(d.get_mpz_t()));
    mix(mpz_size(d.get_mpz_t()));
    return h;
}

std::size_t hash_point(const Point& p) {
    std::size_t h = hash_rat(p.x);
    h ^= hash_rat(p.y) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
}

int orientation(const Point& p, const Point& q, const Point& r) {
    return sgn(cross(q - p, r - p));
}

Vec rotate(const Vec& v, const HalfAngle& h, bool ccw) {
    const Rat& t = h.t;
    Rat denom = 1 + t * t;
    Rat c = (1 - t * t) / denom;
    Rat s = (2 * t) / denom;
    if (!ccw) s = -s;
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

bool on_segment(const Point& p, const Segment& s) {
    if (orientation(s.a, s.b, p) != 0) return false;
    return cmp(std::min(s.a.x, s.b.x), p.x) <= 0 && cmp(p.x, std::max(s.a.x, s.b.x)) <= 0 &&
           cmp(std::min(s.a.y, s.b.y), p.y) <= 0 && cmp(p.y, std::max(s.a.y, s.b.y)) <= 0;
}

std::optional<Point> line_intersection(const Point& p1, const Point& p2, const Point& p3,
                                       const Point& p4) {
    Vec d1 = p2 - p1, d2 = p4 - p3;
    Rat denom = cross(d1, d2);
    if (sgn(denom) == 0) return std::nullopt;
    Rat t = cross(p3 - p1, d2) / denom;
    return p1 + t * d1;
}

SegIntersection segment_intersection(const Segment& s1, const Segment& s2) {
    int o1 = orientation(s1.a, s1.b, s2.a);
    int o2 = orientation(s1.a, s1.b, s2.b);
    int o3 = orientation(s2.a, s2.b, s1.a);
    int o4 = orientation(s2.a, s2.b, s1.b);

    if (o1 == 0 && o2 == 0) {
        // Collinear: intersect parameter intervals along s1's direction.
        Vec d = s1.b - s1.a;
        auto param = [&](const Point& p) { return dot(p - s1.a, d); };
        Rat lo1 = 0, hi1 = dot(d, d);
        Rat a2 = param(s2.a), b2 = param(s2.b);
        Rat lo2 = std::min(a2, b2), hi2 = std::max(a2, b2);
        Rat lo = std::max(lo1, lo2), hi = std::min(hi1, hi2);
        int c = cmp(lo, hi);
        if (c > 0) return std::monostate{};
        Rat dd = dot(d, d);
        Point pl = s1.a + (lo / dd) * d;
        if (c == 0) return pl;
        Point ph = s1.a + (hi / dd) * d;
        return Segment{pl, ph};
    }

    // Lines are distinct here, so any contact is the unique line crossing.
    if (o1 * o2 <= 0 && o3 * o4 <= 0) {
        auto p = line_intersection(s1.a, s1.b, s2.a, s2.b);
        return *p;
    }
    return std::monostate{};
}

std::optional<Rat> ray_segment_param(const Ray& r, const Segment& s) {
    Vec d = r.dir;
    Vec e = s.b - s.a;
    Rat denom = cross(d, e);
    if (sgn(denom) == 0) {
        // Parallel. Overlap only when collinear.
        if (orientation(r.apex, r.apex + d, s.a) != 0) return std::nullopt;
        Rat dd = dot(d, d);
        Rat ta = dot(s.a - r.apex, d) / dd;
        Rat tb = dot(s.b - r.apex, d) / dd;
        Rat lo = std::min(ta, tb), hi = std::max(ta, tb);
        if (sgn(hi) < 0) return std::nullopt;
        return std::max(Rat(0), lo);
    }
    Rat t = cross(s.a - r.apex, e) / denom;
    Rat u = cross(s.a - r.apex, d) / denom;
    if (sgn(t) < 0) return std::nullopt;
    if (sgn(u) < 0 || cmp(u, 1) > 0) return std::nullopt;
    return t;
}

namespace {
// Half classification: 0 for the positive x-axis and upper half plane,
// 1 for the negative x-axis and lower half plane.
int angle_half(const Vec& v) {
    int sy = sign(v.y);
    if (sy > 0) return 0;
    if (sy < 0) return 1;
    return sign(v.x) > 0 ? 0 : 1;
}
}  // namespace

bool angle_less(const Vec& u, const Vec& v) {
    int hu = angle_half(u), hv = angle_half(v);
    if (hu != hv) return hu < hv;
    return sgn(cross(u, v)) > 0;
}

bool strictly_inside_ccw_cone(const Vec& a, const Vec& b, const Vec& d) {
    Rat cab = cross(a, b);
    int s = sgn(cab);
    if (s > 0) {
        // Convex cone.
        return sgn(cross(a, d)) > 0 && sgn(cross(d, b)) > 0;
    }
    if (s < 0) {
        // Reflex cone: complement of the convex cone from b to a.
        return !(sgn(cross(b, d)) >= 0 && sgn(cross(d, a)) >= 0);
    }
    // a and b parallel or opposite.
    if (sgn(dot(a, b)) > 0) return false;  // zero-width cone
    return sgn(cross(a, d)) > 0;           // half-plane cone
}

}  // namespace polyguard
