#pragma once

#include "polyguard/arrangement.hpp"

#include <unordered_map>

namespace polyguard {

// Candidate-witness complete-visibility queries over a frozen arrangement
// snapshot, with WVP-tree pruning and per-pair caching. Face visibility goes
// through the weak visibility regions of the face's edges (vis(f) = vis(df)
// for convex faces).
class VisMatrix {
  public:
    VisMatrix(const WvpTree& tree, GArrangement& A, VisibilityEngine& eng)
        : tree_(&tree), A_(&A), eng_(&eng) {}

    bool sees_completely(const Candidate& c, const Witness& w);

    // Drops cached rows/columns of a face that was split away.
    void purge_face(int face_id);

    long queries = 0;
    long pruned = 0;
    long face_queries = 0;

  private:
    int candidate_node(const Candidate& c);
    bool compute(const Candidate& c, const Witness& w);

    const WvpTree* tree_;
    GArrangement* A_;
    VisibilityEngine* eng_;
    std::unordered_map<std::uint64_t, bool> cache_;
    std::unordered_map<int, int> vertex_node_;
};

}  // namespace polyguard
