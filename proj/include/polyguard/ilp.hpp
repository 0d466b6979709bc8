#pragma once

#include "polyguard/rational.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace polyguard {

struct IpConstraint {
    std::vector<std::pair<int, Rat>> terms;
    enum Cmp { Geq, Eq } cmp = Geq;
    Rat rhs;
};

// Binary program with exact rational weights.
struct IpModel {
    int num_vars = 0;
    bool maximize = false;
    std::vector<Rat> objective;
    std::vector<IpConstraint> constraints;
    std::vector<std::string> var_names;  // optional, for LP export
};

struct IpSolution {
    enum Status { Optimal, Infeasible } status = Infeasible;
    std::vector<int> assignment;
    Rat objective;
};

// Abstract guarding instance: which candidates see which witnesses.
struct GuardProblem {
    std::vector<bool> cand_is_face;
    std::vector<bool> wit_is_face;
    std::vector<std::vector<int>> coverage;  // per witness: candidate ids
    int num_candidates() const { return (int)cand_is_face.size(); }
    int num_witnesses() const { return (int)wit_is_face.size(); }
};

enum class IpMode { Weighted, Stage1, Stage2 };

struct BuiltIp {
    IpModel model;
    std::vector<int> slack_of_witness;  // slack var id per witness, -1 if none
};

// One-shot / normal IP. Weighted: minimize sum(vertex) + (1+eps) sum(face
// candidates) + eps sum(face-witness slacks) with eps = 1/(|C|+|W|+1).
// Stage1: the same with eps = 0. Stage2: adds sum(candidates) = s and
// minimizes face-guards plus unseen face-witnesses.
BuiltIp build_normal_ip(const GuardProblem& gp, IpMode mode, int stage2_s = -1);

// Big IP: maximize the number of splittable faces used (as guards or as
// unseen witnesses), subject to exactly s guards, full vertex-witness
// coverage, and the suppression constraints for splittable face witnesses.
BuiltIp build_big_ip(const GuardProblem& gp, int s, const std::vector<bool>& cand_splittable,
                     const std::vector<bool>& wit_splittable);

// Exact optimum by branch-and-bound with combinatorial bounds; deterministic
// under the fixed variable order. Throws std::length_error over the cap.
IpSolution solve(const IpModel& m, int var_cap = 5000);

// CPLEX-LP text export; coefficients as 30-significant-digit decimals with
// an exact-rational comment per non-integer coefficient.
void export_lp(const IpModel& m, std::ostream& os);

}  // namespace polyguard
