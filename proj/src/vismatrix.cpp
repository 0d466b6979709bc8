#include "polyguard/vismatrix.hpp"

namespace polyguard {

namespace {

std::uint64_t pack_key(const Candidate& c, const Witness& w) {
    std::uint64_t k = (c.kind == Candidate::Face) ? 1 : 0;
    k = (k << 1) | ((w.kind == Witness::Face) ? 1 : 0);
    k = (k << 30) | (std::uint64_t)(std::uint32_t)c.ref;
    k = (k << 30) | (std::uint64_t)(std::uint32_t)w.ref;
    return k;
}

}  // namespace

int VisMatrix::candidate_node(const Candidate& c) {
    if (c.kind == Candidate::Face) return A_->face(c.ref).wvp_node;
    auto it = vertex_node_.find(c.ref);
    if (it != vertex_node_.end()) return it->second;
    int node = tree_->locate(A_->vertex_points()[c.ref]);
    vertex_node_.emplace(c.ref, node);
    return node;
}

bool VisMatrix::sees_completely(const Candidate& c, const Witness& w) {
    std::uint64_t key = pack_key(c, w);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    ++queries;
    int cn = candidate_node(c);
    int wn = A_->face(w.ref).wvp_node;
    bool result;
    if (cn >= 0 && wn >= 0 && !tree_->may_interact(cn, wn)) {
        ++pruned;
        result = false;
    } else {
        result = compute(c, w);
    }
    cache_.emplace(key, result);
    return result;
}

bool VisMatrix::compute(const Candidate& c, const Witness& w) {
    const SimplePolygon& P = eng_->polygon();
    const auto& wf = A_->face(w.ref);
    if (c.kind == Candidate::Vertex) {
        const Point& cp = A_->vertex_points()[c.ref];
        if (w.kind == Witness::Vertex) return P.contains_segment(cp, wf.witness_point);
        return eng_->face_visible_from_point(cp, wf.cell);
    }
    ++face_queries;
    const auto& cf = A_->face(c.ref);

    // Positive fast path: a corner of the candidate face seeing the witness
    // completely is enough, since vis(corner) is contained in vis(df).
    for (const Point& corner : cf.cell.pts) {
        int vid = A_->vertex_id(corner);
        if (vid < 0) continue;
        if (sees_completely({Candidate::Vertex, vid}, w)) return true;
    }

    if (w.kind == Witness::Vertex) {
        // Some point of the face sees the witness point.
        const VisRegion& v = eng_->vis_point(wf.witness_point);
        BBox fb = cf.cell.bbox();
        for (const auto& cell : v.region.cells) {
            if (!fb.overlaps(cell.bbox())) continue;
            if (cells_touch(cell, cf.cell)) return true;
        }
        return false;
    }

    // Negative fast path: if no point of the candidate face sees the witness
    // face's interior point, the face cannot be seen completely.
    {
        const VisRegion& v = eng_->vis_point(wf.witness_point);
        BBox fb = cf.cell.bbox();
        bool touches = false;
        for (const auto& cell : v.region.cells) {
            if (!fb.overlaps(cell.bbox())) continue;
            if (cells_touch(cell, cf.cell)) {
                touches = true;
                break;
            }
        }
        if (!touches) return false;
    }

    // Face-face: witness covered by the union of the candidate's edge
    // weak visibility regions.
    std::vector<ConvexCell> residual{wf.cell};
    int n = (int)cf.cell.pts.size();
    for (int i = 0; i < n && !residual.empty(); ++i) {
        const Point& a = cf.cell.pts[i];
        const Point& b = cf.cell.pts[(i + 1) % n];
        if (a == b) continue;
        const Region& wv = eng_->weak_vis_cells(a, b);
        for (const auto& k : wv.cells) {
            if (residual.empty()) break;
            std::vector<ConvexCell> next;
            for (const auto& cell : residual) {
                auto pieces = cell_subtract(cell, k);
                for (auto& p : pieces) next.push_back(std::move(p));
            }
            residual = std::move(next);
        }
    }
    return residual.empty();
}

void VisMatrix::purge_face(int face_id) {
    for (auto it = cache_.begin(); it != cache_.end();) {
        std::uint64_t k = it->first;
        int wref = (int)(k & ((1u << 30) - 1));
        int cref = (int)((k >> 30) & ((1u << 30) - 1));
        bool cface = ((k >> 61) & 1) != 0;
        if (wref == face_id || (cface && cref == face_id))
            it = cache_.erase(it);
        else
            ++it;
    }
}

}  // namespace polyguard
