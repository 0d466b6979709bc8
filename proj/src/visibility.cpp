#include "polyguard/visibility.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

namespace polyguard {

namespace {

ConvexCell tri_cell(const Triangulation& T, int t) {
    const auto& tr = T.tris()[t];
    return ConvexCell{{T.p(tr.v[0]), T.p(tr.v[1]), T.p(tr.v[2])}};
}

// Clip the segment u->v to the closed half-plane left of a->b; returns the
// remaining parameter interval of [0,1], or nullopt.
std::optional<std::pair<Rat, Rat>> clip_param(const Point& u, const Point& v, const Point& a,
                                              const Point& b, std::pair<Rat, Rat> iv) {
    Vec n = b - a;
    Rat fu = cross(n, u - a);
    Rat fv = cross(n, v - a);
    int su = sgn(fu), sv = sgn(fv);
    if (su >= 0 && sv >= 0) return iv;
    if (su < 0 && sv < 0) return std::nullopt;
    Rat t = fu / (fu - fv);  // zero crossing
    if (su < 0) {
        iv.first = std::max(iv.first, t);
    } else {
        iv.second = std::min(iv.second, t);
    }
    if (cmp(iv.first, iv.second) > 0) return std::nullopt;
    return iv;
}

// Clip segment to a convex cell; closed, may return a degenerate interval.
std::optional<std::pair<Rat, Rat>> seg_clip_to_cell(const Point& u, const Point& v,
                                                    const ConvexCell& c) {
    std::optional<std::pair<Rat, Rat>> iv = std::make_pair(Rat(0), Rat(1));
    int n = (int)c.pts.size();
    for (int i = 0; i < n && iv; ++i) iv = clip_param(u, v, c.pts[i], c.pts[(i + 1) % n], *iv);
    return iv;
}

// ---------------------------------------------------------------------------
// Point visibility: cone expansion over the triangulation.

struct ConeExpander {
    const Triangulation& T;
    Point q;
    std::vector<ConvexCell>* out;

    void emit(int t, const Point* bl, const Point* br) {
        std::optional<ConvexCell> cell = tri_cell(T, t);
        if (br) cell = clip_halfplane(*cell, q, *br);
        if (cell && bl) cell = clip_halfplane(*cell, *bl, q);
        if (cell) out->push_back(std::move(*cell));
    }

    // Entered `t` through diagonal (l,r) as seen from q (l left, r right),
    // with cone bound points bl (left) and br (right); the cone has positive
    // width: orientation(q, br, bl) > 0.
    void expand(int t, const Point& l, const Point& r, const Point& bl, const Point& br) {
        emit(t, &bl, &br);
        const auto& tr = T.tris()[t];
        for (int s = 0; s < 3; ++s) {
            int nb = tr.nb[s];
            if (nb < 0) continue;
            const Point& tail = T.p(tr.v[s]);
            const Point& head = T.p(tr.v[(s + 1) % 3]);
            // Skip the entry diagonal.
            if ((tail == l && head == r) || (tail == r && head == l)) continue;
            // Exit edge: left endpoint = head, right endpoint = tail.
            const Point& sl = head;
            const Point& sr = tail;
            Point nbl = (orientation(q, bl, sl) <= 0) ? sl : bl;
            Point nbr = (orientation(q, br, sr) >= 0) ? sr : br;
            if (orientation(q, nbr, nbl) > 0) expand(nb, sl, sr, nbl, nbr);
        }
    }
};

// ---------------------------------------------------------------------------
// Weak visibility: hourglass expansion.

struct HourglassExpander {
    const Triangulation& T;
    std::vector<ConvexCell>* out;

    struct Tangent {
        Point from, to;  // directed line; A-chain left-closed, B-chain right-closed
    };

    // A directed line supports a free sight from the interior of the source
    // through the entry diagonal iff it separates the chains: all of A
    // weakly left, all of B weakly right (anchors included; for a crossing
    // point strictly inside the source the anchors lie on opposite sides
    // anyway). That family is convex in line space и bounded by two angular
    // extremes, each pivoting on two chain points, possibly from the same
    // chain. Sights emanating from the source endpoints themselves are
    // covered separately by the endpoints' point-visibility regions. Every
    // qualifying direction satisfies cross(dir, l-r) >= 0, so comparisons
    // happen inside a closed half-circle.
    static bool beam_bounds(const std::vector<Point>& A, const std::vector<Point>& B,
                            const Point& l, const Point& r, Tangent& right, Tangent& left) {
        Vec ref = l - r;
        bool have = false;
        Vec dr{rat(0), rat(0)}, dl{rat(0), rat(0)};
        // CCW sweep position from -ref: 0 at -ref, 1 strictly inside, 2 at +ref.
        auto stage = [&ref](const Vec& d) {
            if (sgn(cross(d, ref)) != 0) return 1;
            return (sgn(dot(d, ref)) > 0) ? 2 : 0;
        };
        auto before = [&](const Vec& d1, const Vec& d2) {  // strictly more clockwise
            int s1 = stage(d1), s2 = stage(d2);
            if (s1 != s2) return s1 < s2;
            if (s1 != 1) return false;
            return sgn(cross(d1, d2)) > 0;
        };
        auto consider = [&](const Point& u, const Point& v) {
            if (u == v) return;
            for (const Vec& d : {v - u, u - v}) {
                bool ok = true;
                for (const Point& x : A)
                    if (sgn(cross(d, x - u)) < 0) {
                        ok = false;
                        break;
                    }
                if (ok)
                    for (const Point& x : B)
                        if (sgn(cross(d, x - u)) > 0) {
                            ok = false;
                            break;
                        }
                if (!ok) continue;
                if (!have) {
                    have = true;
                    dr = dl = d;
                    right = left = Tangent{u, u + d};
                    continue;
                }
                if (before(d, dr)) {
                    dr = d;
                    right = Tangent{u, u + d};
                }
                if (before(dl, d)) {
                    dl = d;
                    left = Tangent{u, u + d};
                }
            }
        };
        for (std::size_t i = 0; i < A.size(); ++i) {
            for (std::size_t j = i + 1; j < A.size(); ++j) consider(A[i], A[j]);
            for (const Point& pb : B) consider(A[i], pb);
        }
        for (std::size_t i = 0; i < B.size(); ++i)
            for (std::size_t j = i + 1; j < B.size(); ++j) consider(B[i], B[j]);
        return have;
    }

    // Entered `t` through diagonal (l,r); A = geodesic source-left-anchor..l,
    // B = geodesic source-right-anchor..r.
    void expand(int t, const Point& l, const Point& r, const std::vector<Point>& A,
                const std::vector<Point>& B) {
        Tangent tr_r{l, r}, tr_l{l, r};
        bool open = beam_bounds(A, B, l, r, tr_r, tr_l);
        if (getenv("POLYGUARD_WV_DEBUG")) {
            fprintf(stderr, "expand tri %d via (%s,%s)-(%s,%s) open=%d\n  A:", t,
                    l.x.get_str().c_str(), l.y.get_str().c_str(), r.x.get_str().c_str(),
                    r.y.get_str().c_str(), (int)open);
            for (auto& p : A) fprintf(stderr, " (%s,%s)", p.x.get_str().c_str(), p.y.get_str().c_str());
            fprintf(stderr, "\n  B:");
            for (auto& p : B) fprintf(stderr, " (%s,%s)", p.x.get_str().c_str(), p.y.get_str().c_str());
            if (open)
                fprintf(stderr, "\n  beamR (%s,%s)->(%s,%s) beamL (%s,%s)->(%s,%s)",
                        tr_r.from.x.get_str().c_str(), tr_r.from.y.get_str().c_str(),
                        tr_r.to.x.get_str().c_str(), tr_r.to.y.get_str().c_str(),
                        tr_l.from.x.get_str().c_str(), tr_l.from.y.get_str().c_str(),
                        tr_l.to.x.get_str().c_str(), tr_l.to.y.get_str().c_str());
            fprintf(stderr, "\n");
        }
        if (!open) return;  // closed hourglass

        std::optional<ConvexCell> cell = tri_cell(T, t);
        cell = clip_halfplane(*cell, tr_r.from, tr_r.to);
        if (cell) cell = clip_halfplane(*cell, tr_l.to, tr_l.from);
        if (cell) out->push_back(*cell);

        const auto& tr = T.tris()[t];
        int wi = -1;
        for (int s = 0; s < 3; ++s) {
            const Point& p = T.p(tr.v[s]);
            if (p != l && p != r) {
                wi = s;
                break;
            }
        }
        const Point& w = T.p(tr.v[wi]);

        auto beam_positive = [&](const Point& u, const Point& v) {
            auto iv = clip_param(u, v, tr_r.from, tr_r.to, {Rat(0), Rat(1)});
            if (!iv) return false;
            iv = clip_param(u, v, tr_l.to, tr_l.from, *iv);
            if (!iv) return false;
            return cmp(iv->first, iv->second) < 0;
        };

        for (int s = 0; s < 3; ++s) {
            int nb = tr.nb[s];
            if (nb < 0) continue;
            const Point& tail = T.p(tr.v[s]);
            const Point& head = T.p(tr.v[(s + 1) % 3]);
            if ((tail == l && head == r) || (tail == r && head == l)) continue;
            bool left_sub = (head == l || tail == l);  // shares l: sub-edge (l, w)
            if (!beam_positive(tail, head)) continue;
            if (left_sub) {
                std::vector<Point> B2 = B;
                while (B2.size() >= 2 &&
                       orientation(B2[B2.size() - 2], B2[B2.size() - 1], w) >= 0)
                    B2.pop_back();
                B2.push_back(w);
                expand(nb, l, w, A, B2);
            } else {
                std::vector<Point> A2 = A;
                while (A2.size() >= 2 &&
                       orientation(A2[A2.size() - 2], A2[A2.size() - 1], w) <= 0)
                    A2.pop_back();
                A2.push_back(w);
                expand(nb, w, r, A2, B);
            }
        }
    }
};

bool seg_touches_tri(const Triangulation& T, int t, const Segment& s) {
    auto iv = seg_clip_to_cell(s.a, s.b, tri_cell(T, t));
    return iv.has_value();
}

}  // namespace

// ---------------------------------------------------------------------------
// Boundary extraction

namespace {

struct VertexReg {
    std::map<Point, int, bool (*)(const Point&, const Point&)> ids;
    std::vector<Point> pts;
    VertexReg() : ids(+[](const Point& a, const Point& b) { return a < b; }) {}
    int get(const Point& p) {
        auto it = ids.find(p);
        if (it != ids.end()) return it->second;
        int id = (int)pts.size();
        ids.emplace(p, id);
        pts.push_back(p);
        return id;
    }
};

// CCW position class of x relative to reference direction r: 0 when collinear
// same direction, then increasing counter-clockwise.
int pos_stage(const Vec& r, const Vec& x) {
    Rat cr = cross(r, x);
    Rat dt = dot(r, x);
    int sc = sgn(cr), sd = sgn(dt);
    if (sc == 0 && sd > 0) return 0;
    if (sc > 0) return 1;
    if (sc == 0 && sd < 0) return 2;
    return 3;
}

bool ccw_pos_less(const Vec& r, const Vec& a, const Vec& b) {
    int sa = pos_stage(r, a), sb = pos_stage(r, b);
    if (sa != sb) return sa < sb;
    return sgn(cross(a, b)) > 0;
}

}  // namespace

std::optional<SimplePolygon> extract_union_boundary(const std::vector<ConvexCell>& cells,
                                                    const SimplePolygon& walls,
                                                    std::vector<Segment>* windows_out) {
    VertexReg reg;
    std::vector<std::pair<int, int>> raw;
    for (const auto& c : cells) {
        int n = (int)c.pts.size();
        for (int i = 0; i < n; ++i) {
            int u = reg.get(c.pts[i]);
            int v = reg.get(c.pts[(i + 1) % n]);
            if (u != v) raw.push_back({u, v});
        }
    }
    // Refine edges at vertices lying in their interior.
    std::vector<std::pair<int, int>> refined;
    for (auto [u, v] : raw) {
        const Point& pu = reg.pts[u];
        const Point& pv = reg.pts[v];
        Vec d = pv - pu;
        std::vector<std::pair<Rat, int>> on;
        for (int w = 0; w < (int)reg.pts.size(); ++w) {
            if (w == u || w == v) continue;
            const Point& pw = reg.pts[w];
            if (orientation(pu, pv, pw) != 0) continue;
            Rat t = (sgn(d.x) != 0) ? (pw.x - pu.x) / d.x : (pw.y - pu.y) / d.y;
            if (sgn(t) > 0 && cmp(t, 1) < 0) on.push_back({t, w});
        }
        std::sort(on.begin(), on.end());
        int prev = u;
        for (auto& [t, w] : on) {
            refined.push_back({prev, w});
            prev = w;
        }
        refined.push_back({prev, v});
    }
    // Cancel opposite pairs.
    std::map<std::pair<int, int>, int> count;
    for (auto& e : refined) count[e]++;
    std::map<int, std::vector<int>> outgoing;
    int total = 0;
    for (auto& [e, c] : count) {
        auto rev = std::make_pair(e.second, e.first);
        int crev = count.count(rev) ? count[rev] : 0;
        int net = c - crev;
        for (int k = 0; k < net; ++k) {
            outgoing[e.first].push_back(e.second);
            ++total;
        }
    }
    if (total == 0) return std::nullopt;

    // Walk loops; keep the one with the largest area.
    std::optional<std::vector<Point>> best;
    Rat best_area = 0;
    while (true) {
        int start = -1;
        for (auto& [u, vs] : outgoing)
            if (!vs.empty()) {
                if (start < 0 || reg.pts[u] < reg.pts[start]) start = u;
            }
        if (start < 0) break;
        std::vector<int> loop;
        int cur = start;
        // First edge: smallest CCW position from straight down.
        Vec ref{Rat(0), Rat(-1)};
        auto pick = [&](int at, const Vec& refdir, int forbid) {
            auto& vs = outgoing[at];
            int bi = -1;
            for (int i = 0; i < (int)vs.size(); ++i) {
                if (vs[i] == forbid) continue;
                if (bi < 0) {
                    bi = i;
                    continue;
                }
                Vec a = reg.pts[vs[i]] - reg.pts[at];
                Vec b = reg.pts[vs[bi]] - reg.pts[at];
                // Choose the first clockwise from refdir = largest CCW pos.
                if (!ccw_pos_less(refdir, a, b)) bi = i;
            }
            if (bi < 0 && forbid >= 0 && !vs.empty()) {
                for (int i = 0; i < (int)vs.size(); ++i)
                    if (vs[i] == forbid) {
                        bi = i;
                        break;
                    }
            }
            if (bi < 0) return -1;
            int v = vs[bi];
            vs.erase(vs.begin() + bi);
            return v;
        };
        int nxt = pick(cur, ref, -1);
        if (nxt < 0) break;
        loop.push_back(cur);
        int prev = cur;
        cur = nxt;
        int guard = total + 5;
        while (cur != start && guard-- > 0) {
            loop.push_back(cur);
            Vec rev = reg.pts[prev] - reg.pts[cur];
            int nn = pick(cur, rev, prev);
            if (nn < 0) break;
            prev = cur;
            cur = nn;
        }
        if (cur != start) break;  // open walk; malformed
        std::vector<Point> ring;
        for (int id : loop) ring.push_back(reg.pts[id]);
        Rat a2 = 0;
        int n = (int)ring.size();
        for (int i = 0; i < n; ++i)
            a2 += ring[i].x * ring[(i + 1) % n].y - ring[(i + 1) % n].x * ring[i].y;
        if (sgn(a2) > 0 && cmp(a2, best_area) > 0) {
            best_area = a2;
            best = ring;
        }
    }
    if (!best || best->size() < 3) return std::nullopt;

    if (windows_out) {
        windows_out->clear();
        auto on_wall = [&walls](const Point& a, const Point& b) {
            for (int i = 0; i < walls.size(); ++i) {
                Segment e = walls.edge(i);
                if (on_segment(a, e) && on_segment(b, e)) return true;
            }
            return false;
        };
        int n = (int)best->size();
        std::vector<bool> win(n);
        for (int i = 0; i < n; ++i) win[i] = !on_wall((*best)[i], (*best)[(i + 1) % n]);
        for (int i = 0; i < n; ++i) {
            if (!win[i]) continue;
            // Merge a maximal run of collinear window edges starting here.
            int pr = (i + n - 1) % n;
            bool starts_run =
                !win[pr] || orientation((*best)[pr], (*best)[i], (*best)[(i + 1) % n]) != 0;
            if (!starts_run) continue;
            int j = i;
            while (win[j] &&
                   orientation((*best)[i], (*best)[(j + 1) % n], (*best)[(j + 2) % n]) == 0 &&
                   win[(j + 1) % n] && (j + 1) % n != i)
                j = (j + 1) % n;
            windows_out->push_back({(*best)[i], (*best)[(j + 1) % n]});
            if (j < i) break;
            i = j;
        }
    }
    return SimplePolygon::from_ccw_ring(*best, false);
}

std::pair<SimplePolygon, SimplePolygon> split_polygon_by_chord(const SimplePolygon& P,
                                                               const Point& a, const Point& b) {
    // Ring with a and b inserted.
    std::vector<Point> ring;
    int n = P.size();
    for (int i = 0; i < n; ++i) {
        ring.push_back(P.v(i));
        Segment e = P.edge(i);
        std::vector<std::pair<Rat, Point>> ins;
        Vec d = e.b - e.a;
        for (const Point& x : {a, b}) {
            if (x == e.a || x == e.b) continue;
            if (!on_segment(x, e)) continue;
            Rat t = (sgn(d.x) != 0) ? (x.x - e.a.x) / d.x : (x.y - e.a.y) / d.y;
            ins.push_back({t, x});
        }
        std::sort(ins.begin(), ins.end(),
                  [](const auto& l, const auto& r) { return cmp(l.first, r.first) < 0; });
        for (auto& [t, x] : ins) ring.push_back(x);
    }
    int ia = -1, ib = -1;
    for (int i = 0; i < (int)ring.size(); ++i) {
        if (ring[i] == a) ia = i;
        if (ring[i] == b) ib = i;
    }
    if (ia < 0 || ib < 0) throw std::invalid_argument("chord endpoints not on boundary");
    int m = (int)ring.size();
    auto collect = [&](int from, int to) {
        std::vector<Point> side;
        for (int i = from; i != to; i = (i + 1) % m) side.push_back(ring[i]);
        side.push_back(ring[to]);
        return side;
    };
    // Side left of a->b runs along the ring from b back to a.
    std::vector<Point> left = collect(ib, ia);
    std::vector<Point> right = collect(ia, ib);
    return {SimplePolygon::from_ccw_ring(std::move(left), false),
            SimplePolygon::from_ccw_ring(std::move(right), false)};
}

// ---------------------------------------------------------------------------
// Engine

VisibilityEngine::VisibilityEngine(SimplePolygon P)
    : P_(std::move(P)), tri_(Triangulation::build(P_)) {}

VisRegion VisibilityEngine::compute_vis_point(const Point& q) const {
    if (!P_.contains(q)) throw std::domain_error("visibility_polygon: point outside polygon");
    std::vector<ConvexCell> cells;
    ConeExpander ex{tri_, q, &cells};
    auto seeds = tri_.locate_all(q);
    assert(!seeds.empty());
    for (int t : seeds) {
        cells.push_back(tri_cell(tri_, t));
        const auto& tr = tri_.tris()[t];
        for (int s = 0; s < 3; ++s) {
            const Point& tail = tri_.p(tr.v[s]);
            const Point& head = tri_.p(tr.v[(s + 1) % 3]);
            if (on_segment(q, Segment{tail, head})) continue;
            int nb = tr.nb[s];
            if (nb < 0) continue;
            if (orientation(q, tail, head) > 0) ex.expand(nb, head, tail, head, tail);
        }
    }
    VisRegion vr;
    vr.region.cells = std::move(cells);
    vr.boundary = extract_union_boundary(vr.region.cells, P_, &vr.windows);
    return vr;
}

const VisRegion& VisibilityEngine::vis_point(const Point& q) {
    auto it = point_cache_.find(q);
    if (it != point_cache_.end()) return *it->second;
    ++point_queries;
    auto vr = std::make_unique<VisRegion>(compute_vis_point(q));
    auto* raw = vr.get();
    point_cache_.emplace(q, std::move(vr));
    return *raw;
}

namespace {

void vis_point_cells(const SimplePolygon& Q, const Triangulation& T, const Point& q,
                     std::vector<ConvexCell>* out);

// Appends new cells clipped against everything already present, keeping the
// cell list interior-disjoint.
void append_disjoint(std::vector<ConvexCell>* base, const std::vector<ConvexCell>& added) {
    std::size_t original = base->size();
    for (const auto& k : added) {
        std::vector<ConvexCell> pieces{k};
        for (std::size_t i = 0; i < base->size() && !pieces.empty(); ++i) {
            const ConvexCell& b = (*base)[i];
            if (!k.bbox().overlaps(b.bbox())) continue;
            std::vector<ConvexCell> next;
            for (const auto& c : pieces) {
                auto shards = cell_subtract(c, b);
                for (auto& s : shards) next.push_back(std::move(s));
            }
            pieces = std::move(next);
        }
        for (auto& p : pieces) base->push_back(std::move(p));
    }
    (void)original;
}

// Weak visibility cells of a source segment lying on the boundary of Q.
// Sights from the interior of the source are covered by hourglass beams;
// sights pivoting at the source endpoints are exactly the endpoints' point
// visibility, appended disjointly afterwards.
void weak_cells_boundary_source(const SimplePolygon& Q, const Triangulation& T, const Segment& s,
                                std::vector<ConvexCell>* out) {
    std::vector<int> seeds;
    std::set<int> seed_set;
    for (int t = 0; t < (int)T.tris().size(); ++t)
        if (seg_touches_tri(T, t, s)) {
            seeds.push_back(t);
            seed_set.insert(t);
            out->push_back(tri_cell(T, t));
        }
    HourglassExpander ex{T, out};
    for (int t : seeds) {
        const auto& tr = T.tris()[t];
        auto piece = seg_clip_to_cell(s.a, s.b, tri_cell(T, t));
        Vec d = s.b - s.a;
        Point pa = s.a + piece->first * d;
        Point pb = s.a + piece->second * d;
        Point m{(pa.x + pb.x) / 2, (pa.y + pb.y) / 2};
        for (int sd = 0; sd < 3; ++sd) {
            int nb = tr.nb[sd];
            if (nb < 0 || seed_set.count(nb)) continue;
            const Point& tail = T.p(tr.v[sd]);
            const Point& head = T.p(tr.v[(sd + 1) % 3]);
            const Point& l = head;
            const Point& r = tail;
            Point me{(tail.x + head.x) / 2, (tail.y + head.y) / 2};
            Vec dir = me - m;
            Point aL = s.a, aR = s.b;
            if (cmp(cross(dir, s.a - m), cross(dir, s.b - m)) < 0) std::swap(aL, aR);
            std::vector<Point> A = shortest_path(Q, T, aL, l);
            std::vector<Point> B = shortest_path(Q, T, aR, r);
            ex.expand(nb, l, r, A, B);
        }
    }
    // Endpoint sights.
    for (const Point& ep : {s.a, s.b}) {
        std::vector<ConvexCell> pv;
        vis_point_cells(Q, T, ep, &pv);
        append_disjoint(out, pv);
    }
}

void vis_point_cells(const SimplePolygon& Q, const Triangulation& T, const Point& q,
                     std::vector<ConvexCell>* out) {
    ConeExpander ex{T, q, out};
    auto seeds = T.locate_all(q);
    for (int t : seeds) {
        out->push_back(tri_cell(T, t));
        const auto& tr = T.tris()[t];
        for (int s = 0; s < 3; ++s) {
            const Point& tail = T.p(tr.v[s]);
            const Point& head = T.p(tr.v[(s + 1) % 3]);
            if (on_segment(q, Segment{tail, head})) continue;
            int nb = tr.nb[s];
            if (nb < 0) continue;
            if (orientation(q, tail, head) > 0) ex.expand(nb, head, tail, head, tail);
        }
    }
    (void)Q;
}

// Maximal sub-segments of the line through (origin, origin+dir) whose
// relative interior lies strictly inside P: the line's inclusion intervals
// minus the spans of collinear boundary edges.
std::vector<std::pair<Rat, Rat>> interior_cut_intervals(const SimplePolygon& P,
                                                        const Point& origin, const Vec& dir) {
    auto ivs = line_in_polygon_intervals(P, origin, dir, /*merge_touching=*/false);
    // Collinear boundary spans.
    std::vector<std::pair<Rat, Rat>> spans;
    Point far = origin + dir;
    Rat dd = dot(dir, dir);
    for (int i = 0; i < P.size(); ++i) {
        Segment e = P.edge(i);
        if (orientation(origin, far, e.a) != 0 || orientation(origin, far, e.b) != 0) continue;
        Rat ta = dot(e.a - origin, dir) / dd;
        Rat tb = dot(e.b - origin, dir) / dd;
        spans.push_back({std::min(ta, tb), std::max(ta, tb)});
    }
    std::sort(spans.begin(), spans.end(),
              [](const auto& l, const auto& r) { return cmp(l.first, r.first) < 0; });
    std::vector<std::pair<Rat, Rat>> out;
    for (auto& iv : ivs) {
        Rat cur = iv.first;
        for (auto& sp : spans) {
            if (cmp(sp.second, cur) <= 0) continue;
            if (cmp(sp.first, iv.second) >= 0) break;
            if (cmp(sp.first, cur) > 0) out.push_back({cur, std::min(sp.first, iv.second)});
            cur = std::max(cur, sp.second);
            if (cmp(cur, iv.second) >= 0) break;
        }
        if (cmp(cur, iv.second) < 0) out.push_back({cur, iv.second});
    }
    std::vector<std::pair<Rat, Rat>> pos;
    for (auto& iv : out)
        if (cmp(iv.first, iv.second) < 0) pos.push_back(iv);
    return pos;
}

}  // namespace

Region VisibilityEngine::compute_weak_cells(const Point& a, const Point& b) const {
    Segment s{a, b};
    if (!P_.contains_segment(a, b))
        throw std::domain_error("weak_visibility_polygon: segment not inside polygon");
    Region out;

    // Fast path: source along a single boundary edge.
    for (int i = 0; i < P_.size(); ++i) {
        Segment e = P_.edge(i);
        if (on_segment(a, e) && on_segment(b, e)) {
            weak_cells_boundary_source(P_, tri_, s, &out.cells);
            return out;
        }
    }

    // General source: a straight sight starting on line(s) stays in one
    // closed half-plane of that line, so cut P along the interior chords of
    // the line and run the boundary-source expansion in every piece that
    // touches s.
    Vec dir = b - a;
    auto cuts = interior_cut_intervals(P_, a, dir);
    std::vector<SimplePolygon> pieces{P_};
    for (auto& iv : cuts) {
        Point ca = a + iv.first * dir;
        Point cb = a + iv.second * dir;
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            if (!pieces[i].on_boundary(ca) || !pieces[i].on_boundary(cb)) continue;
            Point mid{(ca.x + cb.x) / 2, (ca.y + cb.y) / 2};
            if (pieces[i].on_boundary(mid)) continue;  // already split here
            if (!pieces[i].contains(mid)) continue;
            auto [L, R] = split_polygon_by_chord(pieces[i], ca, cb);
            pieces[i] = std::move(L);
            pieces.push_back(std::move(R));
            break;
        }
    }
    Rat dd = dot(dir, dir);
    for (const auto& Q : pieces) {
        // Source sub-segments on this piece's boundary.
        std::vector<std::pair<Rat, Rat>> srcs;
        Point far = a + dir;
        for (int i = 0; i < Q.size(); ++i) {
            Segment e = Q.edge(i);
            if (orientation(a, far, e.a) != 0 || orientation(a, far, e.b) != 0) continue;
            Rat ta = dot(e.a - a, dir) / dd;
            Rat tb = dot(e.b - a, dir) / dd;
            Rat lo = std::max(std::min(ta, tb), Rat(0));
            Rat hi = std::min(std::max(ta, tb), Rat(1));
            if (cmp(lo, hi) < 0) srcs.push_back({lo, hi});
        }
        std::sort(srcs.begin(), srcs.end(),
                  [](const auto& l, const auto& r) { return cmp(l.first, r.first) < 0; });
        std::vector<std::pair<Rat, Rat>> merged;
        for (auto& iv : srcs) {
            if (!merged.empty() && cmp(merged.back().second, iv.first) >= 0)
                merged.back().second = std::max(merged.back().second, iv.second);
            else
                merged.push_back(iv);
        }
        if (!merged.empty()) {
            Triangulation TQ = Triangulation::build(Q);
            for (auto& iv : merged) {
                Segment sub{a + iv.first * dir, a + iv.second * dir};
                weak_cells_boundary_source(Q, TQ, sub, &out.cells);
            }
        } else {
            // Isolated touches: ring vertices of Q on s contribute their
            // point visibility within Q.
            std::vector<Point> touches;
            for (const Point& v : Q.vertices())
                if (on_segment(v, s)) touches.push_back(v);
            if (!touches.empty()) {
                Triangulation TQ = Triangulation::build(Q);
                for (const Point& z : touches) {
                    std::vector<ConvexCell> pv;
                    vis_point_cells(Q, TQ, z, &pv);
                    append_disjoint(&out.cells, pv);
                }
            }
        }
    }
    return out;
}

const Region& VisibilityEngine::weak_vis_cells(const Point& a, const Point& b) {
    auto key = std::make_pair(std::min(a, b), std::max(a, b));
    auto it = weak_cache_.find(key);
    if (it != weak_cache_.end()) return *it->second;
    ++weak_queries;
    auto r = std::make_unique<Region>(compute_weak_cells(key.first, key.second));
    auto* raw = r.get();
    weak_cache_.emplace(key, std::move(r));
    return *raw;
}

VisRegion VisibilityEngine::weak_visibility_polygon(const Segment& s) {
    if (!P_.contains_segment(s.a, s.b))
        throw std::domain_error("weak_visibility_polygon: segment not inside polygon");
    VisRegion vr;
    vr.region = weak_vis_cells(s.a, s.b);
    vr.boundary = extract_union_boundary(vr.region.cells, P_, &vr.windows);
    return vr;
}

VisRegion VisibilityEngine::vis_delta(const Point& q, const HalfAngle& h, int sign) {
    const VisRegion& base = vis_point(q);
    VisRegion out;
    out.region = base.region;
    if (sgn(h.t) == 0) return out;

    for (int ri : P_.reflex_indices()) {
        const Point& r = P_.v(ri);
        if (r == q) continue;
        // Applicable: a window of vis(q) collinear with (q,r), lying on the
        // ray from r away from q.
        Vec away = r - q;
        bool applicable = false;
        for (const Segment& w : base.windows) {
            if (orientation(q, r, w.a) != 0 || orientation(q, r, w.b) != 0) continue;
            if (!on_segment(r, w) && sgn(dot(w.a - r, away)) < 0 && sgn(dot(w.b - r, away)) < 0)
                continue;
            // Window must extend beyond r, away from q.
            if (sgn(dot(w.a - r, away)) > 0 || sgn(dot(w.b - r, away)) > 0) {
                applicable = true;
                break;
            }
        }
        if (!applicable) continue;
        if (!P_.contains_segment(q, r)) continue;

        const VisRegion& vr = vis_point(r);
        Vec d0 = away;
        Vec dm = rotate(d0, h, false);
        Vec dp = rotate(d0, h, true);
        Region wedge;
        auto cone_clip = [&](const Vec& from, const Vec& to) {
            Point pf = r + Rat(1) * from, pt = r + Rat(1) * to;
            for (const auto& c : vr.region.cells) {
                auto piece = clip_halfplane(c, r, pf);
                if (piece) piece = clip_halfplane(*piece, pt, r);
                if (piece) wedge.cells.push_back(std::move(*piece));
            }
        };
        cone_clip(dm, d0);
        cone_clip(d0, dp);
        if (sign < 0) {
            out.region.subtract(wedge);
        } else {
            wedge.subtract(out.region);
            out.region.append(wedge);
        }
    }
    return out;
}

bool VisibilityEngine::sees_edge(const Point& q, const Point& u, const Point& v) const {
    if (u == v) return P_.contains_segment(q, u);
    int o = orientation(q, u, v);
    if (o == 0) {
        // Collinear: check the covering segment.
        const Point* lo = &q;
        const Point* hi = &q;
        for (const Point* p : {&u, &v}) {
            if (*p < *lo) lo = p;
            if (*hi < *p) hi = p;
        }
        return P_.contains_segment(*lo, *hi);
    }
    Point a = q, b = u, c = v;
    if (o < 0) std::swap(b, c);
    if (!P_.contains_segment(a, b) || !P_.contains_segment(b, c) || !P_.contains_segment(c, a))
        return false;
    // No boundary piece may cross the open triangle.
    ConvexCell tcell{{a, b, c}};
    BBox tb = tcell.bbox();
    for (int i = 0; i < P_.size(); ++i) {
        Segment e = P_.edge(i);
        if (!tb.overlaps(bbox_of({e.a, e.b}))) continue;
        auto iv = seg_clip_to_cell(e.a, e.b, tcell);
        if (!iv || cmp(iv->first, iv->second) >= 0) continue;
        Vec d = e.b - e.a;
        Rat tm = (iv->first + iv->second) / 2;
        Point m = e.a + tm * d;
        if (orientation(a, b, m) > 0 && orientation(b, c, m) > 0 && orientation(c, a, m) > 0)
            return false;
    }
    return true;
}

bool VisibilityEngine::face_visible_from_point(const Point& q, const ConvexCell& f) {
    const VisRegion& V = vis_point(q);
    for (const Point& p : f.pts)
        if (!V.region.contains(p)) return false;
    BBox fb = f.bbox();
    for (const Segment& w : V.windows) {
        if (!fb.overlaps(bbox_of({w.a, w.b}))) continue;
        auto iv = seg_clip_to_cell(w.a, w.b, f);
        if (!iv || cmp(iv->first, iv->second) >= 0) continue;
        Vec d = w.b - w.a;
        Point m = w.a + ((iv->first + iv->second) / 2) * d;
        bool on_edge = false;
        int n = (int)f.pts.size();
        for (int i = 0; i < n && !on_edge; ++i)
            if (on_segment(m, Segment{f.pts[i], f.pts[(i + 1) % n]})) on_edge = true;
        if (!on_edge) return false;
    }
    return true;
}

bool VisibilityEngine::point_weakly_visible(const Point& a, const Point& b, const Point& x) {
    const VisRegion& V = vis_point(x);
    if (a == b) return V.region.contains(a);
    for (const auto& c : V.region.cells)
        if (seg_clip_to_cell(a, b, c)) return true;
    return false;
}

// ---------------------------------------------------------------------------

VisRegion visibility_polygon(const SimplePolygon& P, const Point& q) {
    VisibilityEngine e(P);
    return e.vis_point(q);
}

VisRegion weak_visibility_polygon(const SimplePolygon& P, const Segment& s) {
    VisibilityEngine e(P);
    return e.weak_visibility_polygon(s);
}

VisRegion vis_delta(const SimplePolygon& P, const Point& q, const HalfAngle& h, int sign) {
    VisibilityEngine e(P);
    return e.vis_delta(q, h, sign);
}

VisRegion weak_visibility_polygon_multi(const SimplePolygon& P,
                                        const std::vector<Segment>& chain) {
    VisibilityEngine e(P);
    VisRegion vr;
    for (const Segment& s : chain) {
        const Region& piece = e.weak_vis_cells(s.a, s.b);
        if (vr.region.cells.empty())
            vr.region.cells = piece.cells;
        else
            append_disjoint(&vr.region.cells, piece.cells);
    }
    vr.boundary = extract_union_boundary(vr.region.cells, P, &vr.windows);
    return vr;
}

}  // namespace polyguard
