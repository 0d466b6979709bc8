#pragma once

#include "polyguard/visibility.hpp"

namespace polyguard {

// Node of the weak visibility polygon tree: the weak visibility region of its
// defining chord inside the residual polygon left by its ancestors.
struct WvpNode {
    int id = -1;
    Chord defining_chord;  // first chain piece; the start edge for the root
    // A pocket can be bounded by several collinearly-broken windows meeting
    // at interior points; the node's source is that whole chain.
    std::vector<Chord> source_chain;
    SimplePolygon region;    // closed; may carry collinear vertices
    Region region_cells;     // convex cover of the region
    SimplePolygon residual;  // the polygon the node was computed in
    int parent = -1;
    int depth = 0;
    std::vector<int> children;
    std::vector<Chord> windows;
};

class WvpTree {
  public:
    // Decomposes P starting from the given boundary edge.
    static WvpTree build(const SimplePolygon& P, int start_edge_index);

    // Lexicographically smallest boundary edge (default start).
    static int default_start_edge(const SimplePolygon& P);

    const std::vector<WvpNode>& nodes() const { return nodes_; }
    const WvpNode& node(int id) const { return nodes_[id]; }
    int root() const { return 0; }
    int size() const { return (int)nodes_.size(); }

    // True iff u and v are equal, siblings, or in a parent-child relation;
    // false only when no interior point of u can see an interior point of v.
    bool may_interact(int u, int v) const;

    // Closest-to-root node whose region contains p; -1 when outside P.
    int locate(const Point& p) const;

    // Defining chords of all non-root nodes.
    std::vector<Chord> defining_chords() const;

  private:
    std::vector<WvpNode> nodes_;
};

}  // namespace polyguard
