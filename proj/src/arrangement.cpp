#include "polyguard/arrangement.hpp"

#include <algorithm>
#include <numeric>
#include <cassert>
#include <map>
#include <set>

namespace polyguard {

namespace {

Rat seg_param(const Point& origin, const Vec& d, const Point& x) {
    return (sgn(d.x) != 0) ? (x.x - origin.x) / d.x : (x.y - origin.y) / d.y;
}

// Angle comparison of two cones given by (cross, dot) pairs of their extreme
// direction vectors; both angles in (0, pi].
bool cone_angle_less(const std::pair<Rat, Rat>& a, const std::pair<Rat, Rat>& b) {
    auto stage = [](const std::pair<Rat, Rat>& p) {
        // 0: acute, 1: right, 2: obtuse, 3: straight (pi)
        if (sgn(p.first) == 0) return 3;
        int sd = sgn(p.second);
        if (sd > 0) return 0;
        if (sd == 0) return 1;
        return 2;
    };
    int sa = stage(a), sb = stage(b);
    if (sa != sb) return sa < sb;
    if (sa == 1 || sa == 3) return false;
    // tan = cross/dot, monotone within a stage (dot signs equal).
    return cmp(a.first * b.second, b.first * a.second) < 0;
}

}  // namespace

std::vector<ConvexCell> subdivide_polygon(const SimplePolygon& P,
                                          const std::vector<Segment>& segments) {
    // Full segment list: polygon boundary plus interior segments.
    std::vector<Segment> all;
    for (int i = 0; i < P.size(); ++i) all.push_back(P.edge(i));
    for (const auto& s : segments) all.push_back(s);

    // Split each segment at all intersections with the others.
    std::vector<std::vector<Point>> cuts(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
        cuts[i].push_back(all[i].a);
        cuts[i].push_back(all[i].b);
    }
    std::vector<BBox> boxes;
    for (const auto& s : all) boxes.push_back(bbox_of({s.a, s.b}));
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            if (!boxes[i].overlaps(boxes[j])) continue;
            auto isect = segment_intersection(all[i], all[j]);
            if (std::holds_alternative<Point>(isect)) {
                const Point& p = std::get<Point>(isect);
                cuts[i].push_back(p);
                cuts[j].push_back(p);
            } else if (std::holds_alternative<Segment>(isect)) {
                const Segment& ov = std::get<Segment>(isect);
                for (const Point& p : {ov.a, ov.b}) {
                    cuts[i].push_back(p);
                    cuts[j].push_back(p);
                }
            }
        }
    }

    // Vertex registry and directed sub-edges.
    std::map<Point, int> ids;
    std::vector<Point> pts;
    auto vid = [&](const Point& p) {
        auto it = ids.find(p);
        if (it != ids.end()) return it->second;
        int id = (int)pts.size();
        ids.emplace(p, id);
        pts.push_back(p);
        return id;
    };
    std::set<std::pair<int, int>> undirected;
    for (std::size_t i = 0; i < all.size(); ++i) {
        Vec d = all[i].b - all[i].a;
        std::vector<std::pair<Rat, int>> line;
        for (const Point& p : cuts[i]) line.push_back({seg_param(all[i].a, d, p), vid(p)});
        std::sort(line.begin(), line.end(), [](const auto& l, const auto& r) {
            int c = cmp(l.first, r.first);
            if (c != 0) return c < 0;
            return l.second < r.second;
        });
        for (std::size_t k = 0; k + 1 < line.size(); ++k) {
            int u = line[k].second, v = line[k + 1].second;
            if (u == v) continue;
            undirected.insert({std::min(u, v), std::max(u, v)});
        }
    }

    // Half-edge structure: outgoing edges sorted CCW per vertex.
    struct Half {
        int from, to;
        int next = -1;
        bool used = false;
    };
    std::vector<Half> halves;
    std::map<std::pair<int, int>, int> hid;
    std::vector<std::vector<int>> out(pts.size());
    for (auto [u, v] : undirected) {
        hid[{u, v}] = (int)halves.size();
        halves.push_back({u, v});
        out[u].push_back((int)halves.size() - 1);
        hid[{v, u}] = (int)halves.size();
        halves.push_back({v, u});
        out[v].push_back((int)halves.size() - 1);
    }
    for (std::size_t v = 0; v < pts.size(); ++v) {
        std::sort(out[v].begin(), out[v].end(), [&](int h1, int h2) {
            Vec d1 = pts[halves[h1].to] - pts[(int)v];
            Vec d2 = pts[halves[h2].to] - pts[(int)v];
            return angle_less(d1, d2);
        });
    }
    // next(h) = the clockwise neighbor of twin(h) around head(h).
    for (auto& [key, h] : hid) {
        int twin = hid[{key.second, key.first}];
        const auto& ring = out[key.second];
        int idx = -1;
        for (std::size_t i = 0; i < ring.size(); ++i)
            if (ring[i] == twin) idx = (int)i;
        halves[h].next = ring[(idx + ring.size() - 1) % ring.size()];
    }

    // Trace faces; keep CCW loops (positive area).
    std::vector<ConvexCell> cells;
    for (std::size_t h0 = 0; h0 < halves.size(); ++h0) {
        if (halves[h0].used) continue;
        std::vector<int> loop;
        int h = (int)h0;
        int guard = (int)halves.size() + 2;
        do {
            halves[h].used = true;
            loop.push_back(halves[h].from);
            h = halves[h].next;
        } while (h != (int)h0 && guard-- > 0);
        Rat a2 = 0;
        int n = (int)loop.size();
        for (int i = 0; i < n; ++i) {
            const Point& p = pts[loop[i]];
            const Point& q = pts[loop[(i + 1) % n]];
            a2 += p.x * q.y - q.x * p.y;
        }
        if (sgn(a2) <= 0) continue;
        ConvexCell c;
        for (int idv : loop) c.pts.push_back(pts[idv]);
        cells.push_back(std::move(c));
    }
    return cells;
}

int GArrangement::register_vertex(const Point& p) {
    auto it = vert_ids_.find(p);
    if (it != vert_ids_.end()) return it->second;
    int id = (int)verts_.size();
    vert_ids_.emplace(p, id);
    verts_.push_back(p);
    return id;
}

int GArrangement::add_face(ConvexCell cell, int angular_depth) {
    Face f;
    f.id = (int)faces_.size();
    f.cell = std::move(cell);
    f.angular_depth = angular_depth;
    f.witness_point = f.cell.centroid();
    for (const Point& p : f.cell.pts) register_vertex(p);
    for (const Point& r : P_->reflex_points()) {
        int n = (int)f.cell.pts.size();
        for (int i = 0; i < n; ++i)
            if (f.cell.pts[i] == r) {
                f.reflex_incident.push_back(r);
                break;
            }
    }
    f.wvp_node = tree_ ? tree_->locate(f.witness_point) : -1;
    faces_.push_back(std::move(f));
    return (int)faces_.size() - 1;
}

namespace {

std::vector<Segment> compute_reflex_chords(const SimplePolygon& P) {
    std::vector<Segment> out;
    const auto& refl = P.reflex_indices();
    for (std::size_t i = 0; i < refl.size(); ++i) {
        for (std::size_t j = i + 1; j < refl.size(); ++j) {
            const Point& a = P.v(refl[i]);
            const Point& b = P.v(refl[j]);
            if (!P.contains_segment(a, b)) continue;
            auto c = chord_through(P, a, b);
            if (c) out.push_back({c->a, c->b});
        }
    }
    return out;
}

std::vector<Segment> compute_extensions(const SimplePolygon& P) {
    std::vector<Segment> out;
    for (int ri : P.reflex_indices()) {
        const Point& r = P.v(ri);
        Vec din = r - P.v(ri - 1);   // incoming edge continued through r
        Vec dout = r - P.v(ri + 1);  // outgoing edge continued backwards
        for (const Vec& d : {din, dout}) {
            auto seg = max_segment_in(P, r, d);
            if (!seg || seg->a == seg->b) continue;
            Point mid{(seg->a.x + seg->b.x) / 2, (seg->a.y + seg->b.y) / 2};
            if (!P.on_boundary(mid)) out.push_back(*seg);
        }
    }
    return out;
}

}  // namespace

GArrangement GArrangement::from_segments(const SimplePolygon& P, const WvpTree& tree,
                                         const std::vector<Segment>& segments) {
    GArrangement A;
    A.P_ = &P;
    A.tree_ = &tree;
    A.initial_segments_ = (int)segments.size();
    A.reflex_chords_ = compute_reflex_chords(P);
    A.extensions_ = compute_extensions(P);
    for (int i = 0; i < P.size(); ++i) A.register_vertex(P.v(i));
    auto cells = subdivide_polygon(P, segments);
    for (auto& c : cells) A.add_face(std::move(c), 0);
    return A;
}

GArrangement GArrangement::init_iterative(const SimplePolygon& P, const WvpTree& tree) {
    std::vector<Segment> segs;
    for (const Chord& c : tree.defining_chords()) segs.push_back({c.a, c.b});
    // Axis rays from each reflex vertex, stopped at the first hit.
    const Vec dirs[4] = {{rat(0), rat(1)}, {rat(0), rat(-1)}, {rat(-1), rat(0)}, {rat(1), rat(0)}};
    for (int ri : P.reflex_indices()) {
        const Point& r = P.v(ri);
        Vec a = P.v(ri + 1) - r;  // interior cone from dir(r->next) ccw to dir(r->prev)
        Vec b = P.v(ri - 1) - r;
        for (const Vec& d : dirs) {
            if (!strictly_inside_ccw_cone(a, b, d)) continue;
            auto maxseg = max_segment_in(P, r, d);
            if (!maxseg || maxseg->a == maxseg->b) continue;
            Rat stop_t = seg_param(r, d, maxseg->b);
            Ray ray{r, d};
            for (const auto& s : segs) {
                auto t = ray_segment_param(ray, s);
                if (t && sgn(*t) > 0 && cmp(*t, stop_t) < 0) stop_t = *t;
            }
            segs.push_back({r, ray_at(ray, stop_t)});
        }
    }
    return from_segments(P, tree, segs);
}

GArrangement GArrangement::build_oneshot(const SimplePolygon& P, const WvpTree& tree,
                                         const HalfAngle& delta) {
    if (sgn(delta.t) <= 0) throw std::domain_error("one-shot arrangement needs delta > 0");
    // Fan directions with spacing at most delta/2 = atan(t): all coprime
    // integer vectors with max-norm up to N = ceil(1/t) leave angular gaps of
    // tangent at most 1/N <= t, and keep every later intersection coordinate
    // small. Thin greedily back to the required spacing.
    const Rat& t = delta.t;
    mpz_class nceil = (den(t) + num(t) - 1) / num(t);
    if (!nceil.fits_slong_p() || nceil.get_si() > 256)
        throw std::length_error("one-shot fan too fine (delta too small)");
    long N = std::max(1l, nceil.get_si());
    std::vector<Vec> dirs;
    for (long p = -N; p <= N; ++p) {
        for (long q = -N; q <= N; ++q) {
            if (p == 0 && q == 0) continue;
            if (std::gcd(std::labs(p), std::labs(q)) != 1) continue;
            dirs.push_back(Vec{rat(p), rat(q)});
        }
    }
    std::sort(dirs.begin(), dirs.end(),
              [](const Vec& u, const Vec& v) { return angle_less(u, v); });
    auto gap_ok = [&t](const Vec& u, const Vec& v) {
        Rat c = cross(u, v);
        Rat d = dot(u, v);
        if (sgn(c) < 0 || sgn(d) <= 0) return false;
        return cmp(c, t * d) <= 0;
    };
    // Greedy thinning: keep the farthest direction still within the spacing
    // bound of the last kept one. Base gaps are all within the bound, so the
    // kept set (which always ends at the last sorted direction) satisfies it
    // around the whole circle.
    std::vector<Vec> fan{dirs[0]};
    std::size_t m = dirs.size();
    for (std::size_t i = 0; i < m - 1;) {
        std::size_t j = i + 1;
        while (j + 1 < m && gap_ok(dirs[i], dirs[j + 1])) ++j;
        fan.push_back(dirs[j]);
        i = j;
    }

    std::vector<Segment> segs;
    for (int ri : P.reflex_indices()) {
        const Point& r = P.v(ri);
        Vec a = P.v(ri + 1) - r;
        Vec b = P.v(ri - 1) - r;
        for (const Vec& d : fan) {
            if (!strictly_inside_ccw_cone(a, b, d)) continue;
            auto seg = max_segment_in(P, r, d);
            if (seg && !(seg->a == seg->b)) segs.push_back(*seg);
        }
    }
    for (const Segment& c : compute_reflex_chords(P)) segs.push_back(c);
    GArrangement A = from_segments(P, tree, segs);
    A.normalize_multireflex();
    return A;
}

void GArrangement::normalize_multireflex() {
    bool again = true;
    while (again) {
        again = false;
        for (int id = 0; id < (int)faces_.size(); ++id) {
            if (!faces_[id].alive) continue;
            if ((int)faces_[id].reflex_incident.size() <= 1) continue;
            auto res = split(id, SplitKind::Square);
            if (res) again = true;
        }
    }
}

std::vector<int> GArrangement::live_faces() const {
    std::vector<int> out;
    for (const auto& f : faces_)
        if (f.alive) out.push_back(f.id);
    return out;
}

void GArrangement::set_granularity_k(int k) { gran_k_ = k; }

const std::vector<Segment>& GArrangement::ladder_segments(int k) {
    auto it = ladder_cache_.find(k);
    if (it != ladder_cache_.end()) return it->second;
    std::vector<Segment> segs;
    HalfAngle h{pow2(-k)};
    for (int ri : P_->reflex_indices()) {
        const Point& r = P_->v(ri);
        Vec a = P_->v(ri + 1) - r;
        Vec b = P_->v(ri - 1) - r;
        Vec d = rotate(a, h, true);
        long guard = (1l << std::min(k + 4, 24)) + 64;
        while (strictly_inside_ccw_cone(a, b, d) && guard-- > 0) {
            auto seg = max_segment_in(*P_, r, d);
            if (seg && !(seg->a == seg->b)) segs.push_back(*seg);
            d = rotate(d, h, true);
        }
    }
    return ladder_cache_.emplace(k, std::move(segs)).first->second;
}

namespace {

// Does the segment properly cross the cell interior?
bool properly_crosses(const Segment& s, const ConvexCell& c) {
    BBox cb = c.bbox();
    if (!cb.overlaps(bbox_of({s.a, s.b}))) return false;
    // Clip s to the cell.
    Vec d = s.b - s.a;
    Rat lo = 0, hi = 1;
    int n = (int)c.pts.size();
    for (int i = 0; i < n; ++i) {
        const Point& a = c.pts[i];
        const Point& b = c.pts[(i + 1) % n];
        Vec nrm = b - a;
        Rat fa = cross(nrm, s.a - a);
        Rat fb = cross(nrm, s.b - a);
        int sa = sgn(fa), sb = sgn(fb);
        if (sa >= 0 && sb >= 0) continue;
        if (sa < 0 && sb < 0) return false;
        Rat t = fa / (fa - fb);
        if (sa < 0)
            lo = std::max(lo, t);
        else
            hi = std::min(hi, t);
        if (cmp(lo, hi) >= 0) return false;
    }
    if (cmp(lo, hi) >= 0) return false;
    Rat tm = (lo + hi) / 2;
    Point m = s.a + tm * d;
    for (int i = 0; i < n; ++i)
        if (orientation(c.pts[i], c.pts[(i + 1) % n], m) == 0) return false;
    return true;
}

}  // namespace

bool GArrangement::angular_splittable(int face_id, int k) {
    const auto& segs = ladder_segments(k);
    const ConvexCell& c = faces_[face_id].cell;
    for (const auto& s : segs)
        if (properly_crosses(s, c)) return true;
    return false;
}

bool GArrangement::reflex_chord_splittable(int face_id) {
    const ConvexCell& c = faces_[face_id].cell;
    for (const auto& s : reflex_chords_)
        if (properly_crosses(s, c)) return true;
    return false;
}

bool GArrangement::extension_splittable(int face_id) {
    const ConvexCell& c = faces_[face_id].cell;
    for (const auto& s : extensions_)
        if (properly_crosses(s, c)) return true;
    return false;
}

bool GArrangement::is_unsplittable(int face_id) {
    const Face& f = faces_[face_id];
    if ((int)f.reflex_incident.size() > 1) return false;
    if (reflex_chord_splittable(face_id)) return false;
    if (extension_splittable(face_id)) return false;
    if (angular_splittable(face_id, gran_k_)) return false;
    return true;
}

std::vector<int> GArrangement::split_by_lines(int face_id,
                                              const std::vector<std::pair<Point, Point>>& lines,
                                              bool inc_angular) {
    Face& f = faces_[face_id];
    std::vector<ConvexCell> pieces{f.cell};
    for (const auto& [a, b] : lines) {
        std::vector<ConvexCell> next;
        for (const auto& c : pieces) {
            auto left = clip_halfplane(c, a, b);
            auto right = clip_halfplane(c, b, a);
            if (left) next.push_back(std::move(*left));
            if (right) next.push_back(std::move(*right));
            if (!left && !right) next.push_back(c);  // degenerate; keep
        }
        pieces = std::move(next);
    }
    if (pieces.size() <= 1) return {};
    f.alive = false;
    int depth = f.angular_depth + (inc_angular ? 1 : 0);
    std::vector<int> out;
    for (auto& c : pieces) {
        int id = add_face(std::move(c), depth);
        faces_[face_id].children.push_back(id);
        out.push_back(id);
    }
    return out;
}

std::optional<std::vector<int>> GArrangement::split(int face_id, SplitKind kind) {
    const Face& f = faces_[face_id];
    if (!f.alive) return std::nullopt;
    switch (kind) {
        case SplitKind::Square: {
            BBox b = f.cell.bbox();
            Rat mx = (b.xlo + b.xhi) / 2;
            Rat my = (b.ylo + b.yhi) / 2;
            std::vector<std::pair<Point, Point>> lines = {
                {Point{mx, rat(0)}, Point{mx, rat(1)}},
                {Point{rat(0), my}, Point{rat(1), my}},
            };
            auto out = split_by_lines(face_id, lines, false);
            if (out.empty()) return std::nullopt;
            return out;
        }
        case SplitKind::Angular: {
            // Pick, among reflex vertices with a ladder ray properly crossing
            // the face, the one subtending the largest cone over it.
            const auto& segs = ladder_segments(gran_k_);
            const auto& refl = P_->reflex_indices();
            int best_ri = -1;
            std::pair<Rat, Rat> best_cone{rat(0), rat(1)};
            for (int ri : refl) {
                const Point& r = P_->v(ri);
                bool crosses = false;
                for (const auto& s : segs)
                    if (s.a == r && properly_crosses(s, f.cell)) {
                        crosses = true;
                        break;
                    }
                if (!crosses) continue;
                // Cone subtended by the face at r.
                std::vector<Vec> dirs;
                for (const Point& p : f.cell.pts)
                    if (!(p == r)) dirs.push_back(p - r);
                Vec lo = dirs[0], hi = dirs[0];
                for (const Vec& d : dirs) {
                    if (sgn(cross(d, lo)) > 0) lo = d;
                    if (sgn(cross(hi, d)) > 0) hi = d;
                }
                std::pair<Rat, Rat> cone{cross(lo, hi), dot(lo, hi)};
                if (best_ri < 0 || cone_angle_less(best_cone, cone)) {
                    best_ri = ri;
                    best_cone = cone;
                }
            }
            if (best_ri < 0) return std::nullopt;
            const Point& r = P_->v(best_ri);
            for (const auto& s : segs) {
                if (!(s.a == r) || !properly_crosses(s, f.cell)) continue;
                auto out = split_by_lines(face_id, {{s.a, s.b}}, true);
                if (!out.empty()) return out;
            }
            return std::nullopt;
        }
        case SplitKind::ReflexChord: {
            for (const auto& s : reflex_chords_) {
                if (!properly_crosses(s, f.cell)) continue;
                auto out = split_by_lines(face_id, {{s.a, s.b}}, false);
                if (!out.empty()) return out;
            }
            return std::nullopt;
        }
        case SplitKind::Extension: {
            for (const auto& s : extensions_) {
                if (!properly_crosses(s, f.cell)) continue;
                auto out = split_by_lines(face_id, {{s.a, s.b}}, false);
                if (!out.empty()) return out;
            }
            return std::nullopt;
        }
    }
    return std::nullopt;
}

Point GArrangement::representative(int face_id) const {
    const Face& f = faces_[face_id];
    if (!f.reflex_incident.empty()) {
        Point best = f.reflex_incident[0];
        for (const Point& p : f.reflex_incident)
            if (p < best) best = p;
        return best;
    }
    const Point* best = nullptr;
    for (const Point& p : f.cell.pts) {
        if (P_->is_convex_vertex_point(p)) continue;
        if (!best || p < *best) best = &p;
    }
    if (best) return *best;
    // All vertices are convex vertices of P: lexicographically smallest.
    const Point* lo = &f.cell.pts[0];
    for (const Point& p : f.cell.pts)
        if (p < *lo) lo = &p;
    return *lo;
}

std::vector<Candidate> GArrangement::candidates() const {
    std::vector<Candidate> out;
    for (int i = 0; i < (int)verts_.size(); ++i) {
        if (P_->is_convex_vertex_point(verts_[i])) continue;
        out.push_back({Candidate::Vertex, i});
    }
    for (const auto& f : faces_)
        if (f.alive) out.push_back({Candidate::Face, f.id});
    return out;
}

std::vector<Witness> GArrangement::witnesses() const {
    std::vector<Witness> out;
    for (const auto& f : faces_) {
        if (!f.alive) continue;
        out.push_back({Witness::Vertex, f.id});
        out.push_back({Witness::Face, f.id});
    }
    return out;
}

Rat GArrangement::live_area2() const {
    Rat a = 0;
    for (const auto& f : faces_)
        if (f.alive) a += f.cell.area2();
    return a;
}

std::vector<Segment> GArrangement::live_edges() const {
    std::vector<Segment> out;
    std::set<std::pair<Point, Point>, bool (*)(const std::pair<Point, Point>&,
                                               const std::pair<Point, Point>&)>
        seen(+[](const std::pair<Point, Point>& x, const std::pair<Point, Point>& y) {
            if (x.first != y.first) return x.first < y.first;
            return x.second < y.second;
        });
    for (const auto& f : faces_) {
        if (!f.alive) continue;
        int n = (int)f.cell.pts.size();
        for (int i = 0; i < n; ++i) {
            const Point& a = f.cell.pts[i];
            const Point& b = f.cell.pts[(i + 1) % n];
            // Refine at registry vertices лying inside.
            std::vector<std::pair<Rat, Point>> on;
            Vec d = b - a;
            for (const Point& w : verts_) {
                if (w == a || w == b) continue;
                if (orientation(a, b, w) != 0) continue;
                Rat t = seg_param(a, d, w);
                if (sgn(t) > 0 && cmp(t, 1) < 0) on.push_back({t, w});
            }
            std::sort(on.begin(), on.end(), [](const auto& l, const auto& r) {
                return cmp(l.first, r.first) < 0;
            });
            Point prev = a;
            auto emit = [&](const Point& u, const Point& v) {
                auto key = std::make_pair(std::min(u, v), std::max(u, v));
                if (seen.insert(key).second) out.push_back({key.first, key.second});
            };
            for (auto& [t, w] : on) {
                emit(prev, w);
                prev = w;
            }
            emit(prev, b);
        }
    }
    return out;
}

int GArrangement::locate_face(const Point& p) const {
    for (const auto& f : faces_)
        if (f.alive && f.cell.contains(p)) return f.id;
    return -1;
}

}  // namespace polyguard
