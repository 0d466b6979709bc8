#include "polyguard/fpt.hpp"

#include "polyguard/solver.hpp"

#include <algorithm>
#include <map>

namespace polyguard {

ChordComplexityReport observed_chord_complexity(const SimplePolygon& P, const WvpTree& tree) {
    VisibilityEngine eng(P);
    std::vector<Segment> probes;
    for (const Chord& c : tree.defining_chords()) probes.push_back({c.a, c.b});
    for (int i = 0; i < P.size(); ++i) probes.push_back(P.edge(i));
    const auto& refl = P.reflex_indices();
    for (std::size_t i = 0; i < refl.size(); ++i)
        for (std::size_t j = i + 1; j < refl.size(); ++j) {
            const Point& a = P.v(refl[i]);
            const Point& b = P.v(refl[j]);
            if (!P.contains_segment(a, b)) continue;
            if (auto c = chord_through(P, a, b)) probes.push_back({c->a, c->b});
        }
    ChordComplexityReport rep;
    for (const Segment& c : probes) {
        int count = 0;
        for (const Point& v : P.vertices())
            if (eng.point_weakly_visible(c.a, c.b, v)) ++count;
        if (count > rep.observed_k) {
            rep.observed_k = count;
            rep.witness = Chord{c.a, c.b};
        }
    }
    return rep;
}

namespace {

// Tree DP over per-node candidate tables. Faces and candidates are
// attributed to WVP nodes; visibility only reaches equal, sibling, or
// parent-child nodes, which the table layout exploits.
struct TreeDp {
    const WvpTree& tree;
    std::vector<Point> cand_pts;
    std::vector<int> cand_node;
    std::vector<ConvexCell> face_cells;
    std::vector<int> face_node;
    // sees[c] over faces as bitset words
    std::vector<std::vector<std::uint64_t>> sees;
    int nfaces = 0;

    explicit TreeDp(const WvpTree& t) : tree(t) {}

    bool face_seen(int c, int f) const { return (sees[c][f >> 6] >> (f & 63)) & 1; }

    bool locality_holds() const {
        for (int c = 0; c < (int)cand_pts.size(); ++c)
            for (int f = 0; f < nfaces; ++f)
                if (face_seen(c, f) && cand_node[c] >= 0 && face_node[f] >= 0 &&
                    !tree.may_interact(cand_node[c], face_node[f]))
                    return false;
        return true;
    }

    // Single-table exact search (used for one-node trees and as the
    // fallback): minimum candidate subset seeing every face.
    std::optional<std::vector<int>> single_table(int max_bits) const {
        int n = (int)cand_pts.size();
        if (n > max_bits) return std::nullopt;
        int words = (nfaces + 63) / 64;
        std::vector<std::uint64_t> full(words, 0);
        for (int f = 0; f < nfaces; ++f) full[f >> 6] |= 1ull << (f & 63);
        std::vector<int> best;
        bool found = false;
        // Increasing subset size, lexicographic masks for determinism.
        for (int size = 0; size <= n && !found; ++size) {
            std::vector<int> idx(size);
            for (int i = 0; i < size; ++i) idx[i] = i;
            while (true) {
                std::vector<std::uint64_t> cov(words, 0);
                for (int i : idx)
                    for (int w = 0; w < words; ++w) cov[w] |= sees[i][w];
                bool ok = true;
                for (int w = 0; w < words; ++w)
                    if ((cov[w] & full[w]) != full[w]) ok = false;
                if (ok) {
                    best = idx;
                    found = true;
                    break;
                }
                int i = size - 1;
                while (i >= 0 && idx[i] == n - size + i) --i;
                if (i < 0) break;
                ++idx[i];
                for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
            }
        }
        if (!found) return std::nullopt;
        return best;
    }
};

FptResult run_tree_dp(const SimplePolygon& P, TreeDp& dp, int k_cap, bool cap_is_table_bits) {
    FptResult res;
    const WvpTree& tree = dp.tree;

    // Per-node candidate lists.
    std::map<int, std::vector<int>> cands_of;
    for (int c = 0; c < (int)dp.cand_pts.size(); ++c) cands_of[dp.cand_node[c]].push_back(c);
    std::map<int, std::vector<int>> faces_of;
    for (int f = 0; f < dp.nfaces; ++f) faces_of[dp.face_node[f]].push_back(f);

    for (const auto& node : tree.nodes()) {
        int own = (int)cands_of[node.id].size();
        if (!cap_is_table_bits && own > k_cap) {
            res.refusal = "node " + std::to_string(node.id) + " has " + std::to_string(own) +
                          " candidates (cap " + std::to_string(k_cap) + ")";
            return res;
        }
    }

    bool fallback = !dp.locality_holds();
    if (tree.size() == 1 || fallback) {
        int bits_cap = cap_is_table_bits ? k_cap : std::max(k_cap, 22);
        auto sol = dp.single_table(bits_cap);
        if (!sol) {
            res.refusal = "table needs " + std::to_string(dp.cand_pts.size()) +
                          " bits (cap " + std::to_string(bits_cap) + ")";
            return res;
        }
        res.ok = true;
        for (int c : *sol) res.guards.push_back(dp.cand_pts[c]);
        return res;
    }

    // Layout per node: own candidates then one block per child.
    struct Layout {
        std::vector<int> own;
        std::vector<int> child_ids;
        std::vector<std::vector<int>> blocks;
        int bits = 0;
    };
    std::vector<Layout> lay(tree.size());
    for (const auto& node : tree.nodes()) {
        Layout& L = lay[node.id];
        L.own = cands_of[node.id];
        for (int ch : node.children) {
            L.child_ids.push_back(ch);
            L.blocks.push_back(cands_of[ch]);
        }
        L.bits = (int)L.own.size();
        for (auto& b : L.blocks) L.bits += (int)b.size();
        int cap = cap_is_table_bits ? k_cap : 22;
        if (L.bits > cap) {
            res.refusal = "node " + std::to_string(node.id) + " table needs " +
                          std::to_string(L.bits) + " bits (cap " + std::to_string(cap) + ")";
            return res;
        }
    }

    // value[node][mask]: min guards strictly below the node (children blocks
    // and deeper), or -1 when the subtree cannot be fully covered.
    std::vector<std::vector<int>> value(tree.size());
    std::vector<std::vector<std::vector<std::uint32_t>>> choice(tree.size());

    // Process deepest first.
    std::vector<int> order;
    for (const auto& n : tree.nodes()) order.push_back(n.id);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return tree.node(a).depth > tree.node(b).depth; });

    for (int id : order) {
        const Layout& L = lay[id];
        int nb = L.bits;
        value[id].assign(1u << nb, 0);
        choice[id].assign(1u << nb, {});
        if (L.child_ids.empty()) continue;

        // Per child: positions of its block within this node's mask and the
        // per-face seer masks.
        struct ChildCtx {
            int child;
            int block_from;          // bit offset in this node's mask
            int block_len;
            int child_own_len;
            std::vector<int> faces;  // faces attributed to the child
            std::vector<std::uint64_t> seen_by_parentmask;  // per face: mask over L.bits
            std::vector<std::uint64_t> seen_by_childrest;   // per face: mask over child's non-own bits
        };
        std::vector<ChildCtx> ctxs;
        int off = (int)L.own.size();
        for (std::size_t k = 0; k < L.child_ids.size(); ++k) {
            ChildCtx cc;
            cc.child = L.child_ids[k];
            cc.block_from = off;
            cc.block_len = (int)L.blocks[k].size();
            off += cc.block_len;
            cc.child_own_len = (int)lay[cc.child].own.size();
            cc.faces = faces_of[cc.child];
            // All candidates in this node's mask, flattened.
            std::vector<int> flat;
            for (int c : L.own) flat.push_back(c);
            for (auto& b : L.blocks)
                for (int c : b) flat.push_back(c);
            std::vector<int> crest;  // child's non-own bits = its children blocks
            const Layout& CL = lay[cc.child];
            for (auto& b : CL.blocks)
                for (int c : b) crest.push_back(c);
            for (int f : cc.faces) {
                std::uint64_t pm = 0;
                for (int i = 0; i < (int)flat.size(); ++i)
                    if (dp.face_seen(flat[i], f)) pm |= 1ull << i;
                cc.seen_by_parentmask.push_back(pm);
                std::uint64_t cm = 0;
                for (int i = 0; i < (int)crest.size(); ++i)
                    if (dp.face_seen(crest[i], f)) cm |= 1ull << i;
                cc.seen_by_childrest.push_back(cm);
            }
            ctxs.push_back(std::move(cc));
        }

        for (std::uint32_t mask = 0; mask < (1u << nb); ++mask) {
            int total = 0;
            bool feas = true;
            std::vector<std::uint32_t> picks;
            for (const ChildCtx& cc : ctxs) {
                std::uint32_t block =
                    (mask >> cc.block_from) & ((cc.block_len == 32) ? 0xffffffffu
                                                                    : ((1u << cc.block_len) - 1));
                const Layout& CL = lay[cc.child];
                int rest_bits = CL.bits - cc.child_own_len;
                int best = -1;
                std::uint32_t best_cp = 0;
                for (std::uint32_t cp = 0; cp < (1u << rest_bits); ++cp) {
                    std::uint32_t cmask = block | (cp << cc.child_own_len);
                    int sub = value[cc.child][cmask];
                    if (sub < 0) continue;
                    bool cov = true;
                    for (std::size_t fi = 0; fi < cc.faces.size(); ++fi) {
                        bool seen = (cc.seen_by_parentmask[fi] & mask) != 0 ||
                                    (cc.seen_by_childrest[fi] & cp) != 0;
                        if (!seen) {
                            cov = false;
                            break;
                        }
                    }
                    if (!cov) continue;
                    int cost = __builtin_popcount(cp) + sub;
                    if (best < 0 || cost < best) {
                        best = cost;
                        best_cp = cp;
                    }
                }
                if (best < 0) {
                    feas = false;
                    break;
                }
                total += __builtin_popcount(block) + best;
                picks.push_back(best_cp);
            }
            if (!feas) {
                value[id][mask] = -1;
            } else {
                value[id][mask] = total;
                choice[id][mask] = picks;
            }
        }
    }

    // Root pass: faces of the root must be covered by the root mask.
    int root = tree.root();
    const Layout& RL = lay[root];
    std::vector<int> flat;
    for (int c : RL.own) flat.push_back(c);
    for (auto& b : RL.blocks)
        for (int c : b) flat.push_back(c);
    std::vector<std::uint64_t> rootface_mask;
    for (int f : faces_of[root]) {
        std::uint64_t pm = 0;
        for (int i = 0; i < (int)flat.size(); ++i)
            if (dp.face_seen(flat[i], f)) pm |= 1ull << i;
        rootface_mask.push_back(pm);
    }
    int best = -1;
    std::uint32_t best_mask = 0;
    for (std::uint32_t mask = 0; mask < (1u << RL.bits); ++mask) {
        if (value[root][mask] < 0) continue;
        bool cov = true;
        for (std::uint64_t pm : rootface_mask)
            if ((pm & mask) == 0) {
                cov = false;
                break;
            }
        if (!cov) continue;
        int own_mask = (RL.own.empty()) ? 0 : (mask & ((1u << RL.own.size()) - 1));
        int cost = __builtin_popcount((unsigned)own_mask) + value[root][mask];
        if (best < 0 || cost < best) {
            best = cost;
            best_mask = mask;
        }
    }
    if (best < 0) {
        res.refusal = "infeasible tree DP (no covering assignment)";
        return res;
    }

    // Reconstruct guard points.
    std::vector<Point> guards;
    struct Frame {
        int node;
        std::uint32_t mask;
    };
    std::vector<Frame> stack{{root, best_mask}};
    while (!stack.empty()) {
        Frame fr = stack.back();
        stack.pop_back();
        const Layout& L = lay[fr.node];
        for (std::size_t i = 0; i < L.own.size(); ++i)
            if (fr.mask & (1u << i)) guards.push_back(dp.cand_pts[L.own[i]]);
        const auto& picks = choice[fr.node][fr.mask];
        int offb = (int)L.own.size();
        for (std::size_t k = 0; k < L.child_ids.size(); ++k) {
            int bl = (int)L.blocks[k].size();
            std::uint32_t block = (fr.mask >> offb) & ((bl == 32) ? 0xffffffffu : ((1u << bl) - 1));
            offb += bl;
            std::uint32_t cp = picks.empty() ? 0 : picks[k];
            int child = L.child_ids[k];
            std::uint32_t cmask = block | (cp << lay[child].own.size());
            stack.push_back({child, cmask});
        }
    }
    std::sort(guards.begin(), guards.end());
    guards.erase(std::unique(guards.begin(), guards.end()), guards.end());
    res.ok = true;
    res.guards = guards;
    (void)P;
    return res;
}

}  // namespace

FptResult vertex_guarding_fpt(const SimplePolygon& P, int k_cap) {
    WvpTree tree = WvpTree::build(P, WvpTree::default_start_edge(P));
    VisibilityEngine eng(P);
    TreeDp dp(tree);
    for (int i = 0; i < P.size(); ++i) {
        dp.cand_pts.push_back(P.v(i));
        dp.cand_node.push_back(tree.locate(P.v(i)));
    }
    // Arrangement induced by chord(V,R) and the boundary.
    std::vector<Segment> segs;
    const auto& refl = P.reflex_indices();
    for (int i = 0; i < P.size(); ++i) {
        for (int rj : refl) {
            const Point& a = P.v(i);
            const Point& b = P.v(rj);
            if (a == b) continue;
            if (!P.contains_segment(a, b)) continue;
            if (auto c = chord_through(P, a, b)) segs.push_back({c->a, c->b});
        }
    }
    auto cells = subdivide_polygon(P, segs);
    dp.nfaces = (int)cells.size();
    for (auto& c : cells) {
        dp.face_node.push_back(tree.locate(c.centroid()));
        dp.face_cells.push_back(std::move(c));
    }
    int words = (dp.nfaces + 63) / 64;
    dp.sees.assign(dp.cand_pts.size(), std::vector<std::uint64_t>(words, 0));
    for (std::size_t c = 0; c < dp.cand_pts.size(); ++c)
        for (int f = 0; f < dp.nfaces; ++f)
            if (eng.face_visible_from_point(dp.cand_pts[c], dp.face_cells[f]))
                dp.sees[c][f >> 6] |= 1ull << (f & 63);
    return run_tree_dp(P, dp, k_cap, /*cap_is_table_bits=*/false);
}

FptResult point_guarding_fpt(const SimplePolygon& P, const HalfAngle& delta, int k_cap) {
    FptResult res;
    if (P.reflex_indices().empty()) {
        res.ok = true;
        Rat sx = 0, sy = 0;
        for (const Point& p : P.vertices()) {
            sx += p.x;
            sy += p.y;
        }
        Rat n((unsigned long)P.size());
        res.guards = {Point{sx / n, sy / n}};
        return res;
    }
    WvpTree tree = WvpTree::build(P, WvpTree::default_start_edge(P));
    GArrangement A = GArrangement::build_oneshot(P, tree, delta);
    VisibilityEngine eng(P);
    TreeDp dp(tree);
    for (const Candidate& c : A.candidates()) {
        if (c.kind != Candidate::Vertex) continue;
        const Point& p = A.vertex_points()[c.ref];
        dp.cand_pts.push_back(p);
        dp.cand_node.push_back(tree.locate(p));
    }
    auto live = A.live_faces();
    dp.nfaces = (int)live.size();
    for (int f : live) {
        dp.face_cells.push_back(A.face(f).cell);
        dp.face_node.push_back(A.face(f).wvp_node);
    }
    int words = (dp.nfaces + 63) / 64;
    dp.sees.assign(dp.cand_pts.size(), std::vector<std::uint64_t>(words, 0));
    for (std::size_t c = 0; c < dp.cand_pts.size(); ++c)
        for (int f = 0; f < dp.nfaces; ++f)
            if (eng.face_visible_from_point(dp.cand_pts[c], dp.face_cells[f]))
                dp.sees[c][f >> 6] |= 1ull << (f & 63);
    return run_tree_dp(P, dp, k_cap, /*cap_is_table_bits=*/true);
}

}  // namespace polyguard
