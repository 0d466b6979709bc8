#include "polyguard/instance_io.hpp"

#include <random>
#include <sstream>

namespace polyguard {

namespace {

std::vector<std::string> tokens_of(const std::string& text) {
    std::istringstream is(text);
    std::vector<std::string> toks;
    std::string t;
    while (is >> t) toks.push_back(t);
    return toks;
}

}  // namespace

SimplePolygon parse_instance(const std::string& text) {
    auto toks = tokens_of(text);
    if (toks.empty()) throw ParseError("empty instance", 0);
    long n = 0;
    try {
        std::size_t pos = 0;
        n = std::stol(toks[0], &pos);
        if (pos != toks[0].size()) throw std::invalid_argument("trailing");
    } catch (...) {
        throw ParseError("vertex count is not an integer", 0);
    }
    if (n < 3) throw ParseError("vertex count must be at least 3", 0);
    if ((long)toks.size() != 1 + 2 * n)
        throw ParseError("expected " + std::to_string(2 * n) + " coordinate tokens",
                         (int)toks.size());
    std::vector<Point> pts;
    for (long i = 0; i < n; ++i) {
        Rat x, y;
        if (!parse_rat(toks[1 + 2 * i], x)) throw ParseError("bad rational", (int)(1 + 2 * i));
        if (!parse_rat(toks[2 + 2 * i], y)) throw ParseError("bad rational", (int)(2 + 2 * i));
        pts.push_back({x, y});
    }
    try {
        return SimplePolygon::from_points(std::move(pts));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), 1);
    }
}

std::string serialize_instance(const SimplePolygon& P) {
    std::ostringstream os;
    os << P.size();
    for (const Point& p : P.vertices()) os << " " << p.x << " " << p.y;
    os << "\n";
    return os.str();
}

std::vector<Point> parse_guards(const std::string& text) {
    auto toks = tokens_of(text);
    if (toks.empty()) throw ParseError("empty guards file", 0);
    long g = 0;
    try {
        g = std::stol(toks[0]);
    } catch (...) {
        throw ParseError("guard count is not an integer", 0);
    }
    if (g < 0 || (long)toks.size() != 1 + 2 * g)
        throw ParseError("expected " + std::to_string(2 * g) + " coordinate tokens",
                         (int)toks.size());
    std::vector<Point> out;
    for (long i = 0; i < g; ++i) {
        Rat x, y;
        if (!parse_rat(toks[1 + 2 * i], x)) throw ParseError("bad rational", (int)(1 + 2 * i));
        if (!parse_rat(toks[2 + 2 * i], y)) throw ParseError("bad rational", (int)(2 + 2 * i));
        out.push_back({x, y});
    }
    return out;
}

std::string serialize_guards(const std::vector<Point>& guards) {
    std::ostringstream os;
    os << guards.size();
    for (const Point& p : guards) os << " " << p.x << " " << p.y;
    os << "\n";
    return os.str();
}

SimplePolygon generate_polygon(int n, std::uint64_t seed) {
    if (n < 3) throw std::invalid_argument("generate_polygon: n must be at least 3");
    std::mt19937_64 rng(seed);
    long grid = 4l * n;
    for (int attempt = 0; attempt < 64; ++attempt) {
        // Random distinct grid points in general position (no 3 collinear).
        std::vector<Point> pts;
        int guard = 4096;
        while ((int)pts.size() < n && guard-- > 0) {
            Point p{rat((long)(rng() % (std::uint64_t)grid)),
                    rat((long)(rng() % (std::uint64_t)grid))};
            bool ok = true;
            for (const Point& q : pts)
                if (q == p) ok = false;
            for (std::size_t i = 0; ok && i < pts.size(); ++i)
                for (std::size_t j = i + 1; ok && j < pts.size(); ++j)
                    if (orientation(pts[i], pts[j], p) == 0) ok = false;
            if (ok) pts.push_back(p);
        }
        if ((int)pts.size() < n) continue;

        // 2-opt uncrossing: swap reversed chains until no two edges cross.
        // Each uncrossing strictly decreases the tour length, so this stops.
        bool changed = true;
        int rounds = 0;
        while (changed && rounds++ < 100000) {
            changed = false;
            for (int i = 0; i < n && !changed; ++i) {
                for (int j = i + 1; j < n && !changed; ++j) {
                    bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
                    if (adjacent) continue;
                    Segment e1{pts[i], pts[(i + 1) % n]};
                    Segment e2{pts[j], pts[(j + 1) % n]};
                    auto isect = segment_intersection(e1, e2);
                    if (std::holds_alternative<std::monostate>(isect)) continue;
                    std::reverse(pts.begin() + i + 1, pts.begin() + j + 1);
                    changed = true;
                }
            }
        }
        if (changed) continue;  // did not settle; re-draw
        try {
            return SimplePolygon::from_points(pts);
        } catch (const std::invalid_argument&) {
            continue;
        }
    }
    throw std::runtime_error("generate_polygon: failed to settle a simple polygon");
}

}  // namespace polyguard
