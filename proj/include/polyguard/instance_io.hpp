#pragma once

#include "polyguard/polygon.hpp"

#include <string>

namespace polyguard {

struct ParseError : std::runtime_error {
    int token_index;
    ParseError(const std::string& msg, int idx)
        : std::runtime_error(msg + " (token " + std::to_string(idx) + ")"), token_index(idx) {}
};

// Instance format: first token the vertex count n, then 2n rational tokens
// ("p/q" or integer) as x y pairs in boundary order; whitespace agnostic.
SimplePolygon parse_instance(const std::string& text);

// Canonical form: CCW starting at the lexicographically smallest vertex.
std::string serialize_instance(const SimplePolygon& P);

// Guards file: first token the count g, then 2g rational tokens.
std::vector<Point> parse_guards(const std::string& text);
std::string serialize_guards(const std::vector<Point>& guards);

// Random simple polygon on n vertices: random rational points untangled by
// 2-opt uncrossing; deterministic per seed.
SimplePolygon generate_polygon(int n, std::uint64_t seed);

}  // namespace polyguard
