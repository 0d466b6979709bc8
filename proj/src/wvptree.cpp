#include "polyguard/wvptree.hpp"

#include <deque>
#include <stdexcept>

namespace polyguard {

int WvpTree::default_start_edge(const SimplePolygon& P) {
    int best = 0;
    auto key = [&P](int i) {
        Segment e = P.edge(i);
        Point lo = std::min(e.a, e.b), hi = std::max(e.a, e.b);
        return std::make_pair(lo, hi);
    };
    for (int i = 1; i < P.size(); ++i) {
        auto ki = key(i), kb = key(best);
        if (ki.first < kb.first || (ki.first == kb.first && ki.second < kb.second)) best = i;
    }
    return best;
}

namespace {

// Positive-length collinear overlap between two segments.
bool edges_overlap(const Point& a1, const Point& b1, const Point& a2, const Point& b2) {
    auto isect = segment_intersection({a1, b1}, {a2, b2});
    return std::holds_alternative<Segment>(isect);
}

bool cells_edge_adjacent(const ConvexCell& c1, const ConvexCell& c2) {
    int n1 = (int)c1.pts.size(), n2 = (int)c2.pts.size();
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j)
            if (edges_overlap(c1.pts[i], c1.pts[(i + 1) % n1], c2.pts[j],
                              c2.pts[(j + 1) % n2]))
                return true;
    return false;
}

}  // namespace

WvpTree WvpTree::build(const SimplePolygon& P, int start_edge_index) {
    WvpTree tree;
    struct Job {
        SimplePolygon residual;
        std::vector<Segment> chain;
        int parent;
        int depth;
    };
    std::deque<Job> jobs;
    jobs.push_back({P, {P.edge(start_edge_index)}, -1, 0});

    int cap = 8 * P.size() + 32;
    while (!jobs.empty()) {
        if ((int)tree.nodes_.size() > cap)
            throw std::runtime_error("wvp tree exceeded node cap");
        Job job = std::move(jobs.front());
        jobs.pop_front();

        VisRegion wv = weak_visibility_polygon_multi(job.residual, job.chain);
        if (!wv.boundary)
            throw std::runtime_error("wvp node region extraction failed");

        WvpNode node;
        node.id = (int)tree.nodes_.size();
        node.defining_chord = Chord{job.chain.front().a, job.chain.front().b};
        for (const Segment& c : job.chain) node.source_chain.push_back(Chord{c.a, c.b});
        node.region = *wv.boundary;
        node.region_cells = wv.region;
        node.residual = job.residual;
        node.parent = job.parent;
        node.depth = job.depth;
        for (const Segment& w : wv.windows) node.windows.push_back(Chord{w.a, w.b});
        if (job.parent >= 0) tree.nodes_[job.parent].children.push_back(node.id);
        tree.nodes_.push_back(node);
        if (wv.windows.empty()) continue;

        // Pockets: connected components of the residual minus the region.
        Region rest = Region::from_polygon(job.residual);
        rest.subtract(node.region_cells);
        std::vector<ConvexCell> shards;
        for (auto& c : rest.cells)
            if (sgn(c.area2()) > 0) shards.push_back(std::move(c));
        if (shards.empty()) continue;
        std::vector<int> comp(shards.size(), -1);
        int ncomp = 0;
        for (std::size_t i = 0; i < shards.size(); ++i) {
            if (comp[i] >= 0) continue;
            comp[i] = ncomp;
            std::deque<std::size_t> bfs{i};
            while (!bfs.empty()) {
                std::size_t u = bfs.front();
                bfs.pop_front();
                for (std::size_t v = 0; v < shards.size(); ++v) {
                    if (comp[v] >= 0) continue;
                    if (!shards[u].bbox().overlaps(shards[v].bbox())) continue;
                    if (cells_edge_adjacent(shards[u], shards[v])) {
                        comp[v] = ncomp;
                        bfs.push_back(v);
                    }
                }
            }
            ++ncomp;
        }
        for (int cidx = 0; cidx < ncomp; ++cidx) {
            std::vector<ConvexCell> pocket_cells;
            for (std::size_t i = 0; i < shards.size(); ++i)
                if (comp[i] == cidx) pocket_cells.push_back(shards[i]);
            auto pocket = extract_union_boundary(pocket_cells, job.residual, nullptr);
            if (!pocket) throw std::runtime_error("wvp pocket extraction failed");
            // The window chain bounding this pocket.
            std::vector<Segment> chain;
            for (const Segment& w : wv.windows) {
                Point mid{(w.a.x + w.b.x) / 2, (w.a.y + w.b.y) / 2};
                if (pocket->on_boundary(mid)) chain.push_back(w);
            }
            if (chain.empty()) continue;  // pocket sealed by another pocket's chain
            jobs.push_back({std::move(*pocket), std::move(chain), node.id, job.depth + 1});
        }
    }
    return tree;
}

bool WvpTree::may_interact(int u, int v) const {
    if (u == v) return true;
    const WvpNode& a = nodes_[u];
    const WvpNode& b = nodes_[v];
    if (a.parent == v || b.parent == u) return true;
    if (a.parent >= 0 && a.parent == b.parent) return true;
    return false;
}

int WvpTree::locate(const Point& p) const {
    int best = -1;
    for (const auto& n : nodes_) {
        if (!n.region_cells.contains(p)) continue;
        if (best < 0 || n.depth < nodes_[best].depth) best = n.id;
    }
    return best;
}

std::vector<Chord> WvpTree::defining_chords() const {
    std::vector<Chord> out;
    for (const auto& n : nodes_)
        if (n.parent >= 0)
            for (const Chord& c : n.source_chain) out.push_back(c);
    return out;
}

}  // namespace polyguard
