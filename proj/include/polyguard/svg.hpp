#pragma once

#include "polyguard/arrangement.hpp"
#include "polyguard/solver.hpp"

#include <string>

namespace polyguard {

// Standalone SVG: polygon outline, arrangement edges, guards in orange
// (points and face fills), unseen witness faces in green. Deterministic
// output; coordinates at 12 decimal digits.
std::string render_svg(const SimplePolygon& P, const GArrangement* A,
                       const std::vector<GuardRef>& guards, const std::vector<int>& unseen_faces);

void render_svg_file(const std::string& path, const SimplePolygon& P, const GArrangement* A,
                     const std::vector<GuardRef>& guards, const std::vector<int>& unseen_faces);

}  // namespace polyguard
