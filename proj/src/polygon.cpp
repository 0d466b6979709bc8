#include "polyguard/polygon.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <deque>
#include <map>
#include <queue>
#include <set>

namespace polyguard {

namespace {

bool in_closed_ccw_tri(const Point& a, const Point& b, const Point& c, const Point& q) {
    return orientation(a, b, q) >= 0 && orientation(b, c, q) >= 0 && orientation(c, a, q) >= 0;
}

}  // namespace

SimplePolygon SimplePolygon::from_points(std::vector<Point> pts) {
    if (pts.size() < 3) throw std::invalid_argument("polygon needs >= 3 vertices");
    // Orientation.
    Rat a2 = 0;
    int n = (int)pts.size();
    for (int i = 0; i < n; ++i) {
        const Point& p = pts[i];
        const Point& q = pts[(i + 1) % n];
        a2 += p.x * q.y - q.x * p.y;
    }
    if (sgn(a2) == 0) throw std::invalid_argument("degenerate polygon (zero area)");
    if (sgn(a2) < 0) std::reverse(pts.begin(), pts.end());
    // Canonical start: lexicographically smallest vertex.
    int best = 0;
    for (int i = 1; i < n; ++i)
        if (pts[i] < pts[best]) best = i;
    std::rotate(pts.begin(), pts.begin() + best, pts.end());
    return from_ccw_ring(std::move(pts), true);
}

SimplePolygon SimplePolygon::from_ccw_ring(std::vector<Point> pts, bool validate) {
    SimplePolygon P;
    P.verts_ = std::move(pts);
    int n = (int)P.verts_.size();
    if (n < 3) throw std::invalid_argument("polygon needs >= 3 vertices");
    if (validate) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (P.verts_[i] == P.verts_[j])
                    throw std::invalid_argument("repeated vertex in polygon");
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
                auto isect = segment_intersection(P.edge(i), P.edge(j));
                if (adjacent) {
                    if (std::holds_alternative<Segment>(isect))
                        throw std::invalid_argument("overlapping adjacent edges");
                    // The shared vertex is the only allowed contact.
                    if (std::holds_alternative<Point>(isect)) {
                        const Point& p = std::get<Point>(isect);
                        Point shared = (j == i + 1) ? P.verts_[j] : P.verts_[0];
                        if (p != shared) throw std::invalid_argument("non-simple polygon");
                    }
                } else {
                    if (!std::holds_alternative<std::monostate>(isect))
                        throw std::invalid_argument("non-simple polygon (edges intersect)");
                }
            }
        }
        Rat a2 = 0;
        for (int i = 0; i < n; ++i) {
            const Point& p = P.verts_[i];
            const Point& q = P.verts_[(i + 1) % n];
            a2 += p.x * q.y - q.x * p.y;
        }
        if (sgn(a2) <= 0) throw std::invalid_argument("polygon ring must be CCW");
    }
    P.compute_reflex();
    return P;
}

void SimplePolygon::compute_reflex() {
    reflex_.clear();
    int n = (int)verts_.size();
    for (int i = 0; i < n; ++i) {
        if (orientation(v(i - 1), v(i), v(i + 1)) < 0) reflex_.push_back(i);
    }
}

bool SimplePolygon::is_reflex(int i) const {
    return std::binary_search(reflex_.begin(), reflex_.end(), mod(i));
}

bool SimplePolygon::is_reflex_point(const Point& p) const {
    for (int i : reflex_)
        if (verts_[i] == p) return true;
    return false;
}

bool SimplePolygon::is_convex_vertex_point(const Point& p) const {
    for (int i = 0; i < (int)verts_.size(); ++i)
        if (verts_[i] == p) return !is_reflex(i);
    return false;
}

std::vector<Point> SimplePolygon::reflex_points() const {
    std::vector<Point> out;
    for (int i : reflex_) out.push_back(verts_[i]);
    return out;
}

Rat SimplePolygon::area2() const {
    Rat a2 = 0;
    int n = (int)verts_.size();
    for (int i = 0; i < n; ++i) {
        const Point& p = verts_[i];
        const Point& q = verts_[(i + 1) % n];
        a2 += p.x * q.y - q.x * p.y;
    }
    return a2;
}

bool SimplePolygon::on_boundary(const Point& p) const {
    int n = (int)verts_.size();
    for (int i = 0; i < n; ++i)
        if (on_segment(p, edge(i))) return true;
    return false;
}

bool SimplePolygon::contains(const Point& p) const {
    if (on_boundary(p)) return true;
    // Crossing number with the half-open rule; exact.
    int n = (int)verts_.size();
    bool inside = false;
    for (int i = 0; i < n; ++i) {
        const Point& a = verts_[i];
        const Point& b = verts_[(i + 1) % n];
        bool a_above = cmp(a.y, p.y) > 0;
        bool b_above = cmp(b.y, p.y) > 0;
        if (a_above == b_above) continue;
        // x coordinate of the edge at height p.y
        Rat xi = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
        if (cmp(p.x, xi) < 0) inside = !inside;
    }
    return inside;
}

bool SimplePolygon::contains_segment(const Point& p, const Point& q) const {
    if (!contains(p) || !contains(q)) return false;
    if (p == q) return true;
    Vec d = q - p;
    std::vector<Rat> ts;
    ts.push_back(Rat(0));
    ts.push_back(Rat(1));
    int n = (int)verts_.size();
    Segment s{p, q};
    for (int i = 0; i < n; ++i) {
        auto isect = segment_intersection(s, edge(i));
        if (std::holds_alternative<Point>(isect)) {
            const Point& x = std::get<Point>(isect);
            Rat t = (sgn(d.x) != 0) ? (x.x - p.x) / d.x : (x.y - p.y) / d.y;
            ts.push_back(t);
        } else if (std::holds_alternative<Segment>(isect)) {
            const Segment& ov = std::get<Segment>(isect);
            for (const Point& x : {ov.a, ov.b}) {
                Rat t = (sgn(d.x) != 0) ? (x.x - p.x) / d.x : (x.y - p.y) / d.y;
                ts.push_back(t);
            }
        }
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        if (cmp(ts[i], 0) < 0 || cmp(ts[i + 1], 1) > 0) continue;
        Rat mid = (ts[i] + ts[i + 1]) / 2;
        if (!contains(p + mid * d)) return false;
    }
    return true;
}

std::vector<std::pair<Rat, Rat>> line_in_polygon_intervals(const SimplePolygon& P,
                                                           const Point& origin, const Vec& dir,
                                                           bool merge_touching) {
    std::vector<Rat> ts;
    int n = P.size();
    Point far = origin + dir;
    for (int i = 0; i < n; ++i) {
        Segment e = P.edge(i);
        Vec ed = e.b - e.a;
        Rat denom = cross(dir, ed);
        if (sgn(denom) == 0) {
            if (orientation(origin, far, e.a) == 0) {
                Rat dd = dot(dir, dir);
                ts.push_back(dot(e.a - origin, dir) / dd);
                ts.push_back(dot(e.b - origin, dir) / dd);
            }
            continue;
        }
        Rat t = cross(e.a - origin, ed) / denom;
        Rat u = cross(e.a - origin, dir) / denom;
        if (sgn(u) >= 0 && cmp(u, 1) <= 0) ts.push_back(t);
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    std::vector<std::pair<Rat, Rat>> raw;
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        Rat mid = (ts[i] + ts[i + 1]) / 2;
        if (P.contains(origin + mid * dir)) raw.push_back({ts[i], ts[i + 1]});
    }
    if (!merge_touching) return raw;
    std::vector<std::pair<Rat, Rat>> out;
    for (auto& iv : raw) {
        if (!out.empty() && out.back().second == iv.first)
            out.back().second = iv.second;
        else
            out.push_back(iv);
    }
    return out;
}

std::optional<Chord> chord_through(const SimplePolygon& P, const Point& a, const Point& b) {
    if (a == b) return std::nullopt;
    if (!P.contains_segment(a, b)) return std::nullopt;
    Vec d = b - a;
    auto ivs = line_in_polygon_intervals(P, a, d);
    for (auto& iv : ivs) {
        if (cmp(iv.first, 0) <= 0 && cmp(iv.second, 1) >= 0)
            return Chord{a + iv.first * d, a + iv.second * d};
    }
    return std::nullopt;  // not reached for valid inputs
}

std::optional<Segment> max_segment_in(const SimplePolygon& P, const Point& apex, const Vec& dir) {
    auto ivs = line_in_polygon_intervals(P, apex, dir);
    for (auto& iv : ivs) {
        if (cmp(iv.first, 0) <= 0 && cmp(iv.second, 0) > 0)
            return Segment{apex + std::max(Rat(0), iv.first) * dir, apex + iv.second * dir};
    }
    return std::nullopt;
}

double& triangulation_seconds() {
    thread_local double secs = 0;
    return secs;
}

namespace {
struct TriTimer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    ~TriTimer() {
        triangulation_seconds() +=
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};
}  // namespace

Triangulation Triangulation::build(const SimplePolygon& P) {
    TriTimer timer;
    Triangulation T;
    // Drop straight vertices; they do not affect the covered region.
    int n = P.size();
    for (int i = 0; i < n; ++i) {
        if (orientation(P.v(i - 1), P.v(i), P.v(i + 1)) != 0) T.pts_.push_back(P.v(i));
    }
    int m = (int)T.pts_.size();
    if (m < 3) throw std::invalid_argument("triangulation: degenerate polygon");
    std::vector<int> ring(m);
    for (int i = 0; i < m; ++i) ring[i] = i;

    auto emit = [&T](int a, int b, int c) { T.tris_.push_back({{a, b, c}, {-1, -1, -1}}); };

    while (ring.size() > 3) {
        bool clipped = false;
        int rs = (int)ring.size();
        for (int k = 0; k < rs && !clipped; ++k) {
            int ip = ring[(k + rs - 1) % rs], ic = ring[k], in = ring[(k + 1) % rs];
            const Point &a = T.pts_[ip], &b = T.pts_[ic], &c = T.pts_[in];
            int o = orientation(a, b, c);
            if (o < 0) continue;
            if (o == 0) {  // straight after earlier clips: drop, no triangle
                ring.erase(ring.begin() + k);
                clipped = true;
                break;
            }
            bool blocked = false;
            for (int u : ring) {
                if (u == ip || u == ic || u == in) continue;
                if (in_closed_ccw_tri(a, b, c, T.pts_[u])) {
                    blocked = true;
                    break;
                }
            }
            if (!blocked) {
                emit(ip, ic, in);
                ring.erase(ring.begin() + k);
                clipped = true;
            }
        }
        if (!clipped) throw std::runtime_error("ear clipping stalled on non-simple input");
    }
    if (orientation(T.pts_[ring[0]], T.pts_[ring[1]], T.pts_[ring[2]]) > 0)
        emit(ring[0], ring[1], ring[2]);

    // Adjacency over shared edges.
    std::map<std::pair<int, int>, std::pair<int, int>> half;  // (lo,hi) -> (tri, side)
    for (int t = 0; t < (int)T.tris_.size(); ++t) {
        for (int s = 0; s < 3; ++s) {
            int u = T.tris_[t].v[s], w = T.tris_[t].v[(s + 1) % 3];
            auto key = std::minmax(u, w);
            auto it = half.find({key.first, key.second});
            if (it == half.end()) {
                half[{key.first, key.second}] = {t, s};
            } else {
                T.tris_[t].nb[s] = it->second.first;
                T.tris_[it->second.first].nb[it->second.second] = t;
            }
        }
    }
    return T;
}

bool Triangulation::tri_contains(int t, const Point& q) const {
    const Tri& tr = tris_[t];
    return in_closed_ccw_tri(pts_[tr.v[0]], pts_[tr.v[1]], pts_[tr.v[2]], q);
}

int Triangulation::locate(const Point& q) const {
    for (int t = 0; t < (int)tris_.size(); ++t)
        if (tri_contains(t, q)) return t;
    return -1;
}

std::vector<int> Triangulation::locate_all(const Point& q) const {
    std::vector<int> out;
    for (int t = 0; t < (int)tris_.size(); ++t)
        if (tri_contains(t, q)) out.push_back(t);
    return out;
}

std::vector<int> Triangulation::tri_path(int from, int to) const {
    std::vector<int> prev(tris_.size(), -2);
    std::queue<int> q;
    q.push(from);
    prev[from] = -1;
    while (!q.empty()) {
        int t = q.front();
        q.pop();
        if (t == to) break;
        for (int s = 0; s < 3; ++s) {
            int nb = tris_[t].nb[s];
            if (nb >= 0 && prev[nb] == -2) {
                prev[nb] = t;
                q.push(nb);
            }
        }
    }
    std::vector<int> path;
    for (int t = to; t != -1; t = prev[t]) path.push_back(t);
    std::reverse(path.begin(), path.end());
    return path;
}

namespace {

// Funnel algorithm over a portal list; portals are (left, right) pairs.
std::vector<Point> string_pull(const Point& start, const Point& end,
                               const std::vector<std::pair<Point, Point>>& mids) {
    std::vector<std::pair<Point, Point>> portals;
    portals.reserve(mids.size() + 2);
    portals.push_back({start, start});
    for (auto& m : mids) portals.push_back(m);
    portals.push_back({end, end});

    std::vector<Point> path;
    path.push_back(start);
    Point apex = start, left = start, right = start;
    int apex_i = 0, left_i = 0, right_i = 0;

    for (int i = 1; i < (int)portals.size(); ++i) {
        const Point& pl = portals[i].first;
        const Point& pr = portals[i].second;

        // Right side.
        if (apex == right || sgn(cross(right - apex, pr - apex)) >= 0) {
            if (apex == right || apex == pr || sgn(cross(left - apex, pr - apex)) < 0) {
                right = pr;
                right_i = i;
            } else {
                if (!(path.back() == left)) path.push_back(left);
                apex = left;
                apex_i = left_i;
                left = right = apex;
                left_i = right_i = apex_i;
                i = apex_i;
                continue;
            }
        }
        // Left side.
        if (apex == left || sgn(cross(left - apex, pl - apex)) <= 0) {
            if (apex == left || apex == pl || sgn(cross(right - apex, pl - apex)) > 0) {
                left = pl;
                left_i = i;
            } else {
                if (!(path.back() == right)) path.push_back(right);
                apex = right;
                apex_i = right_i;
                left = right = apex;
                left_i = right_i = apex_i;
                i = apex_i;
                continue;
            }
        }
    }
    if (!(path.back() == end)) path.push_back(end);
    // Remove collinear interior points.
    std::vector<Point> out;
    for (const Point& p : path) {
        while (out.size() >= 2 &&
               orientation(out[out.size() - 2], out.back(), p) == 0)
            out.pop_back();
        if (out.empty() || !(out.back() == p)) out.push_back(p);
    }
    return out;
}

}  // namespace

std::vector<Point> shortest_path(const SimplePolygon& P, const Triangulation& T, const Point& p,
                                 const Point& q) {
    if (!P.contains(p) || !P.contains(q)) throw std::domain_error("shortest_path: point outside polygon");
    if (p == q) return {p};
    if (P.contains_segment(p, q)) return {p, q};
    int tp = T.locate(p), tq = T.locate(q);
    assert(tp >= 0 && tq >= 0);
    auto corridor = T.tri_path(tp, tq);
    std::vector<std::pair<Point, Point>> portals;
    for (std::size_t i = 0; i + 1 < corridor.size(); ++i) {
        int t = corridor[i], nxt = corridor[i + 1];
        const auto& tr = T.tris()[t];
        for (int s = 0; s < 3; ++s) {
            if (tr.nb[s] == nxt) {
                // Exit edge tail->head in CCW order: left = head, right = tail.
                portals.push_back({T.p(tr.v[(s + 1) % 3]), T.p(tr.v[s])});
                break;
            }
        }
    }
    return string_pull(p, q, portals);
}

std::vector<Point> shortest_path(const SimplePolygon& P, const Point& p, const Point& q) {
    Triangulation T = Triangulation::build(P);
    return shortest_path(P, T, p, q);
}

}  // namespace polyguard
