#pragma once

#include "polyguard/arrangement.hpp"

#include <string>

namespace polyguard {

struct ChordComplexityReport {
    int observed_k = 0;
    Chord witness;  // a chord attaining the bound
};

// Lower bound on the chord-visibility width from a finite probe family: all
// WVP defining chords, all polygon edges, and all reflex chords.
ChordComplexityReport observed_chord_complexity(const SimplePolygon& P, const WvpTree& tree);

struct FptResult {
    bool ok = false;
    std::vector<Point> guards;
    std::string refusal;  // set when a cap was exceeded
};

// Optimal vertex guarding via the bottom-up table DP over the WVP tree, on
// the arrangement induced by chord(V,R) and the boundary. Refuses when a
// node's candidate count exceeds k_cap. Falls back to a single-node table
// when a candidate on a shared chord sees past the node neighborhood.
FptResult vertex_guarding_fpt(const SimplePolygon& P, int k_cap = 14);

// Same DP over the one-shot candidate set (arrangement vertices that are not
// convex vertices of P); k_cap bounds the per-node table bits.
FptResult point_guarding_fpt(const SimplePolygon& P, const HalfAngle& delta, int k_cap = 18);

}  // namespace polyguard
