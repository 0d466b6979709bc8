#pragma once

#include "polyguard/visibility.hpp"
#include "polyguard/wvptree.hpp"

#include <optional>

namespace polyguard {

struct Candidate {
    enum Kind { Vertex, Face } kind;
    int ref;  // vertex id or face id
};

struct Witness {
    enum Kind { Vertex, Face } kind;
    int ref;  // face id; vertex witnesses use the face's interior point
};

enum class SplitKind { Square, Angular, ReflexChord, Extension };

// Dynamic convex subdivision of P. Faces form a forest: the initial
// subdivision faces are roots, splits attach children; live faces are the
// leaves. Vertex ids and face ids are stable and append-only.
class GArrangement {
  public:
    struct Face {
        int id = -1;
        ConvexCell cell;
        bool alive = true;
        int angular_depth = 0;
        Point witness_point;                 // interior point (centroid)
        std::vector<Point> reflex_incident;  // reflex vertices of P on the cell
        int wvp_node = -1;
        std::vector<int> children;
    };

    // Iterative-algorithm initialization: WVP defining chords plus the
    // axis-parallel rays from every reflex vertex, each stopped at the first
    // boundary or earlier-inserted edge.
    static GArrangement init_iterative(const SimplePolygon& P, const WvpTree& tree);

    // One-shot arrangement: angular fans with spacing at most delta/2 plus
    // all reflex chords; faces with more than one incident reflex vertex are
    // square-split until normalized.
    static GArrangement build_oneshot(const SimplePolygon& P, const WvpTree& tree,
                                      const HalfAngle& delta);

    const SimplePolygon& polygon() const { return *P_; }

    const std::vector<Point>& vertex_points() const { return verts_; }
    // Registry id of an existing arrangement vertex; -1 if absent.
    int vertex_id(const Point& p) const {
        auto it = vert_ids_.find(p);
        return it == vert_ids_.end() ? -1 : it->second;
    }
    const std::vector<Face>& faces() const { return faces_; }
    const Face& face(int id) const { return faces_[id]; }
    std::vector<int> live_faces() const;
    int faces_created() const { return (int)faces_.size(); }
    int initial_segment_count() const { return initial_segments_; }

    int granularity_k() const { return gran_k_; }
    void set_granularity_k(int k);

    // Applies one split; returns the new face ids, or nullopt when the kind
    // is not applicable to this face.
    std::optional<std::vector<int>> split(int face_id, SplitKind kind);

    bool is_unsplittable(int face_id);
    bool angular_splittable(int face_id, int k);
    bool reflex_chord_splittable(int face_id);
    bool extension_splittable(int face_id);

    Point representative(int face_id) const;

    // Candidate set: arrangement vertices that are not convex vertices of P,
    // plus all live faces.
    std::vector<Candidate> candidates() const;
    // Witness set: for every live face one vertex witness and one face witness.
    std::vector<Witness> witnesses() const;

    // Exact sum of live cell areas (tiling invariant).
    Rat live_area2() const;

    // All maximal reflex chords (through pairs of mutually visible reflex
    // vertices), in (source index, target index) order.
    const std::vector<Segment>& reflex_chords() const { return reflex_chords_; }
    // Edge extension segments per reflex vertex.
    const std::vector<Segment>& extensions() const { return extensions_; }

    // Ladder ray segments from each reflex vertex at granularity 2^-k.
    const std::vector<Segment>& ladder_segments(int k);

    // Refined edge set of the live subdivision (for rendering and tests):
    // every live cell edge split at all registry vertices lying on it.
    std::vector<Segment> live_edges() const;

    int locate_face(const Point& p) const;  // any live face containing p

  private:
    GArrangement() = default;
    static GArrangement from_segments(const SimplePolygon& P, const WvpTree& tree,
                                      const std::vector<Segment>& segments);
    int register_vertex(const Point& p);
    int add_face(ConvexCell cell, int angular_depth);
    void normalize_multireflex();
    std::vector<int> split_by_lines(int face_id, const std::vector<std::pair<Point, Point>>& lines,
                                    bool inc_angular);

    const SimplePolygon* P_ = nullptr;
    const WvpTree* tree_ = nullptr;
    std::vector<Point> verts_;
    std::map<Point, int> vert_ids_;
    std::vector<Face> faces_;
    std::vector<Segment> reflex_chords_;
    std::vector<Segment> extensions_;
    std::map<int, std::vector<Segment>> ladder_cache_;
    int gran_k_ = 4;
    int initial_segments_ = 0;
};

// Subdivision of P induced by a set of interior segments: the convex cells
// of the arrangement (used by the constructions above and by tests).
std::vector<ConvexCell> subdivide_polygon(const SimplePolygon& P,
                                          const std::vector<Segment>& segments);

}  // namespace polyguard
