#pragma once

#include "polyguard/ilp.hpp"
#include "polyguard/vismatrix.hpp"

#include <functional>
#include <optional>
#include <random>
#include <set>

namespace polyguard {

struct GuardRef {
    bool is_face = false;
    Point point;     // vertex guard position or face representative
    Point centroid;  // equals point for vertex guards
    int face_id = -1;
};

struct ProtocolConfig {
    enum class Split { Normal, Square };
    enum class WitnessSel { All, Critical, DelayedCritical };
    enum class IpProto { Normal, Simple };
    enum class Gran { Normal, Accelerated };

    Split split_protocol = Split::Normal;
    WitnessSel witness_protocol = WitnessSel::All;
    IpProto ip_protocol = IpProto::Normal;
    Gran granularity_update = Gran::Normal;
    std::uint64_t rng_seed = 1;
    double time_limit_s = 600.0;
    int initial_granularity_k = 4;  // lambda = 2^-4 = 1/16
    int max_granularity_k = 64;
    int critical_batch = 8;
    int var_cap = 5000;
    int start_edge = -1;  // -1: lexicographically smallest boundary edge
    std::vector<Point> reference_guards;  // optional Hausdorff reference
    std::string export_lp_dir;            // when set, every IP model is written here
    // Called at the end of every iteration with the frozen arrangement (null
    // for the convex short-circuit), the current guards, and unseen face ids.
    std::function<void(int, const GArrangement*, const std::vector<GuardRef>&,
                       const std::vector<int>&)>
        on_iteration;

    // Defaults reproduce the theorem configuration.
    static ProtocolConfig theorem() { return {}; }
    static ProtocolConfig safe_guards_off() {
        ProtocolConfig c;
        c.split_protocol = Split::Normal;
        c.witness_protocol = WitnessSel::Critical;
        c.ip_protocol = IpProto::Simple;
        c.granularity_update = Gran::Accelerated;
        return c;
    }
};

struct IterationTrace {
    int iteration = 0;
    int face_count = 0;
    Rat ip_value;
    int splits_made = 0;
    int granularity_k = 0;
    bool granularity_lowered = false;
    double wall_s = 0;
    double hausdorff_log2 = 0;
    bool has_hausdorff = false;
};

struct PhaseTimes {
    double weakvis = 0;   // weak visibility decomposition
    double shortest = 0;  // triangulations and geodesics
    double pointvis = 0;  // point visibility queries
    double facevis = 0;   // face visibility queries
    double ip = 0;
    double other = 0;
    double total = 0;
    double sum() const { return weakvis + shortest + pointvis + facevis + ip + other; }
};

struct SolveReport {
    enum class Status { Optimal, Timeout, GranularityExhausted } status = Status::Timeout;
    std::vector<Point> guards;
    std::vector<GuardRef> guard_refs;
    int iterations = 0;
    int final_granularity_k = 4;
    // Implied "vision-stability is smaller than delta" bound: the half-angle
    // tangent of the smallest refuted delta; nullopt when nothing was refuted.
    std::optional<Rat> stability_bound_t;
    std::vector<IterationTrace> trace;
    PhaseTimes phases;
    long pair_queries = 0;
    long point_queries = 0;
    long face_queries = 0;
    int faces_created = 0;
    int reflex_count = 0;
};

// delta such that delta >= 8*pi*2^-k holds exactly for k >= 4: t = 2^(4-k).
HalfAngle delta_for_granularity(int k);

SolveReport one_shot_solve(const SimplePolygon& P, const HalfAngle& delta,
                           const ProtocolConfig& cfg = ProtocolConfig::theorem());

SolveReport iterative_solve(const SimplePolygon& P, const ProtocolConfig& cfg);

// Exact coverage check: union of guard visibility regions equals P.
bool verify_coverage(const SimplePolygon& P, const std::vector<Point>& guards);
bool verify_coverage(VisibilityEngine& eng, const std::vector<Point>& guards);

// Critical witness bookkeeping, exposed for tests.
struct CriticalSet {
    bool seeded = false;
    std::set<std::pair<int, int>> keys;  // (kind, face id); kind 0 vertex, 1 face
    bool contains(const Witness& w) const {
        return keys.count({w.kind == Witness::Face ? 1 : 0, w.ref}) > 0;
    }
    void drop_face(int face_id) {
        keys.erase({0, face_id});
        keys.erase({1, face_id});
    }
};

// First call seeds 10 percent of vertex- and face-witnesses per WVP node (at
// least one each); later calls add up to `batch` unseen witnesses, each
// critical face pulling in its interior vertex witness. Returns the number
// of primary additions.
int update_critical_witnesses(CriticalSet& cs, const GArrangement& A, const WvpTree& tree,
                              const std::vector<Witness>& unseen, std::mt19937_64& rng,
                              int batch);

// log2 of the Hausdorff distance between two point sets (exact squared
// distances; the log is evaluated in floating point for reporting).
double hausdorff_log2(const std::vector<Point>& a, const std::vector<Point>& b);

}  // namespace polyguard
