#include "polyguard/ilp.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>
#include <stdexcept>

namespace polyguard {

BuiltIp build_normal_ip(const GuardProblem& gp, IpMode mode, int stage2_s) {
    BuiltIp out;
    IpModel& m = out.model;
    int nc = gp.num_candidates();
    int nw = gp.num_witnesses();
    m.num_vars = nc;
    m.objective.assign(nc, Rat(0));
    out.slack_of_witness.assign(nw, -1);

    Rat eps = 0;
    if (mode == IpMode::Weighted) eps = Rat(1, (unsigned long)(nc + nw + 1));

    for (int c = 0; c < nc; ++c) {
        switch (mode) {
            case IpMode::Weighted:
                m.objective[c] = gp.cand_is_face[c] ? (1 + eps) : Rat(1);
                break;
            case IpMode::Stage1:
                m.objective[c] = 1;
                break;
            case IpMode::Stage2:
                m.objective[c] = gp.cand_is_face[c] ? Rat(1) : Rat(0);
                break;
        }
    }
    for (int w = 0; w < nw; ++w) {
        IpConstraint con;
        con.cmp = IpConstraint::Geq;
        con.rhs = 1;
        for (int c : gp.coverage[w]) con.terms.push_back({c, Rat(1)});
        if (gp.wit_is_face[w]) {
            int slack = m.num_vars++;
            out.slack_of_witness[w] = slack;
            Rat sw = (mode == IpMode::Weighted) ? eps : (mode == IpMode::Stage2 ? Rat(1) : Rat(0));
            m.objective.push_back(sw);
            con.terms.push_back({slack, Rat(1)});
        }
        m.constraints.push_back(std::move(con));
    }
    if (mode == IpMode::Stage2) {
        if (stage2_s < 0) throw std::invalid_argument("stage2 needs the stage1 value");
        IpConstraint total;
        total.cmp = IpConstraint::Eq;
        total.rhs = stage2_s;
        for (int c = 0; c < nc; ++c) total.terms.push_back({c, Rat(1)});
        m.constraints.push_back(std::move(total));
    }
    return out;
}

BuiltIp build_big_ip(const GuardProblem& gp, int s, const std::vector<bool>& cand_splittable,
                     const std::vector<bool>& wit_splittable) {
    BuiltIp out;
    IpModel& m = out.model;
    int nc = gp.num_candidates();
    int nw = gp.num_witnesses();
    m.num_vars = nc;
    m.maximize = true;
    m.objective.assign(nc, Rat(0));
    out.slack_of_witness.assign(nw, -1);
    Rat eps = Rat(1, (unsigned long)(nc + nw + 1));

    for (int c = 0; c < nc; ++c)
        if (gp.cand_is_face[c] && cand_splittable[c]) m.objective[c] = 1;

    IpConstraint total;
    total.cmp = IpConstraint::Eq;
    total.rhs = s;
    for (int c = 0; c < nc; ++c) total.terms.push_back({c, Rat(1)});
    m.constraints.push_back(std::move(total));

    for (int w = 0; w < nw; ++w) {
        if (!gp.wit_is_face[w]) {
            IpConstraint con;
            con.cmp = IpConstraint::Geq;
            con.rhs = 1;
            for (int c : gp.coverage[w]) con.terms.push_back({c, Rat(1)});
            m.constraints.push_back(std::move(con));
        } else if (wit_splittable[w]) {
            int slack = m.num_vars++;
            out.slack_of_witness[w] = slack;
            m.objective.push_back(Rat(1));
            // 1 - eps * sum(vis(w)) >= x_w, scaled by 1/eps to keep the
            // constraint integral: -M x_w - sum >= -M.
            Rat M = 1 / eps;
            IpConstraint con;
            con.cmp = IpConstraint::Geq;
            con.rhs = -M;
            con.terms.push_back({slack, -M});
            for (int c : gp.coverage[w]) con.terms.push_back({c, Rat(-1)});
            m.constraints.push_back(std::move(con));
        }
    }
    return out;
}

namespace {

// Specialized search for covering models: all constraints are either
// unit-coefficient >= 1 coverings or a single unit-coefficient cardinality
// equality. Branches on the candidates of a most-constrained uncovered
// witness, so the depth is bounded by the solution size.
struct CoverSolver {
    int n;
    bool has_card = false;
    long card_rhs = 0;
    std::vector<char> in_card;
    std::vector<Rat> weight;
    std::vector<std::vector<int>> cons;      // covering lists
    std::vector<std::vector<int>> var_cons;  // constraint ids per var
    std::vector<int> degree_rank;            // position in static order

    std::vector<int> assign;
    std::vector<int> sat_count;  // chosen vars per constraint
    std::vector<int> avail;      // settable vars per constraint
    long ones_in_card = 0;
    Rat cost = 0;
    bool have_best = false;
    Rat best_val;
    std::vector<int> best_assign;

    explicit CoverSolver(const IpModel& m) : n(m.num_vars), weight(m.objective) {
        in_card.assign(n, 0);
        var_cons.assign(n, {});
        std::vector<std::vector<int>> raw;
        for (const auto& con : m.constraints) {
            if (con.cmp == IpConstraint::Eq) {
                has_card = true;
                card_rhs = con.rhs.get_num().get_si();
                for (auto& [v, coef] : con.terms) in_card[v] = 1;
                continue;
            }
            std::vector<int> list;
            for (auto& [v, coef] : con.terms) list.push_back(v);
            std::sort(list.begin(), list.end());
            raw.push_back(std::move(list));
        }
        // Dominance presolve. A witness whose candidate set contains another
        // witness's set is implied; a candidate whose coverage is contained
        // in a no-heavier candidate's coverage never has to be branched on
        // (it stays available as cardinality filler).
        int words = (n + 63) / 64;
        std::vector<std::vector<std::uint64_t>> wbits(raw.size(),
                                                      std::vector<std::uint64_t>(words, 0));
        for (std::size_t i = 0; i < raw.size(); ++i)
            for (int v : raw[i]) wbits[i][v >> 6] |= 1ull << (v & 63);
        std::vector<char> wdrop(raw.size(), 0);
        auto subset = [](const std::vector<std::uint64_t>& a,
                         const std::vector<std::uint64_t>& b) {
            for (std::size_t w = 0; w < a.size(); ++w)
                if (a[w] & ~b[w]) return false;
            return true;
        };
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (wdrop[i]) continue;
            for (std::size_t j = 0; j < raw.size(); ++j) {
                if (i == j || wdrop[j] || wdrop[i]) continue;
                if (subset(wbits[i], wbits[j]) && (raw[i].size() < raw[j].size() || i < j))
                    wdrop[j] = 1;
            }
        }
        std::vector<std::vector<int>> kept;
        for (std::size_t i = 0; i < raw.size(); ++i)
            if (!wdrop[i]) kept.push_back(std::move(raw[i]));
        // Candidate dominance over the kept witnesses.
        int cwords = (int)(kept.size() + 63) / 64;
        std::vector<std::vector<std::uint64_t>> cbits(n, std::vector<std::uint64_t>(cwords, 0));
        for (std::size_t ci = 0; ci < kept.size(); ++ci)
            for (int v : kept[ci]) cbits[v][ci >> 6] |= 1ull << (ci & 63);
        std::vector<char> cdrop(n, 0);
        for (int a = 0; a < n; ++a) {
            if (cdrop[a]) continue;
            for (int b = 0; b < n; ++b) {
                if (a == b || cdrop[b] || cdrop[a]) continue;
                // a dominates b: coverage(a) >= coverage(b), weight(a) <= weight(b).
                // Under a cardinality constraint the swap argument needs both
                // variables on the same side of it.
                if (has_card && in_card[a] != in_card[b]) continue;
                if (cmp(weight[a], weight[b]) > 0) continue;
                if (!subset(cbits[b], cbits[a])) continue;
                bool strictly = cmp(weight[a], weight[b]) < 0 || !subset(cbits[a], cbits[b]);
                if (strictly || a < b) cdrop[b] = 1;
            }
        }
        for (auto& list : kept) {
            std::vector<int> pruned;
            for (int v : list)
                if (!cdrop[v]) pruned.push_back(v);
            if (!pruned.empty()) list = std::move(pruned);
            for (int v : list) var_cons[v].push_back((int)cons.size());
            cons.push_back(std::move(list));
        }
        assign.assign(n, -1);
        sat_count.assign(cons.size(), 0);
        avail.assign(cons.size(), 0);
        for (std::size_t ci = 0; ci < cons.size(); ++ci) avail[ci] = (int)cons[ci].size();
        std::vector<int> deg(n, 0);
        for (auto& c : cons)
            for (int v : c) deg[v]++;
        std::vector<int> order(n);
        for (int i = 0; i < n; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return deg[a] > deg[b]; });
        degree_rank.assign(n, 0);
        for (int i = 0; i < n; ++i) degree_rank[order[i]] = i;
    }

    bool settable(int v) const {
        return assign[v] == -1 && (!in_card[v] || !has_card || ones_in_card < card_rhs);
    }

    void set1(int v) {
        assign[v] = 1;
        cost += weight[v];
        if (in_card[v]) ++ones_in_card;
        for (int ci : var_cons[v]) {
            ++sat_count[ci];
            --avail[ci];
        }
    }
    void unset1(int v) {
        assign[v] = -1;
        cost -= weight[v];
        if (in_card[v]) --ones_in_card;
        for (int ci : var_cons[v]) {
            --sat_count[ci];
            ++avail[ci];
        }
    }
    void set0(int v) {
        assign[v] = 0;
        for (int ci : var_cons[v]) --avail[ci];
    }
    void unset0(int v) {
        assign[v] = -1;
        for (int ci : var_cons[v]) ++avail[ci];
    }

    // Cheapest completion of the cardinality constraint once all coverings
    // are satisfied; returns false when impossible.
    bool complete_and_record() {
        Rat total = cost;
        std::vector<int> extra;
        if (has_card) {
            long need = card_rhs - ones_in_card;
            if (need < 0) return false;
            if (need > 0) {
                std::vector<int> free;
                for (int v = 0; v < n; ++v)
                    if (assign[v] == -1 && in_card[v]) free.push_back(v);
                if ((long)free.size() < need) return false;
                std::stable_sort(free.begin(), free.end(), [&](int a, int b) {
                    int c = cmp(weight[a], weight[b]);
                    if (c != 0) return c < 0;
                    return a < b;
                });
                for (long i = 0; i < need; ++i) {
                    total += weight[free[i]];
                    extra.push_back(free[i]);
                }
            }
        }
        if (have_best && cmp(total, best_val) >= 0) return true;
        have_best = true;
        best_val = total;
        best_assign = assign;
        for (int& a : best_assign)
            if (a == -1) a = 0;
        for (int v : extra) best_assign[v] = 1;
        return true;
    }

    Rat lower_bound() const {
        // Disjoint packing of uncovered constraints.
        Rat lb = 0;
        std::vector<char> used(n, 0);
        for (std::size_t ci = 0; ci < cons.size(); ++ci) {
            if (sat_count[ci] > 0) continue;
            const Rat* minw = nullptr;
            bool disjoint = true;
            for (int v : cons[ci]) {
                if (!settable(v)) continue;
                if (used[v]) {
                    disjoint = false;
                    break;
                }
                if (!minw || cmp(weight[v], *minw) < 0) minw = &weight[v];
            }
            if (!disjoint || !minw) continue;
            lb += *minw;
            for (int v : cons[ci])
                if (assign[v] == -1) used[v] = 1;
        }
        return lb;
    }

    void greedy_seed() {
        // Repeatedly take the variable covering the most uncovered witnesses.
        std::vector<int> picks;
        for (;;) {
            bool uncovered = false;
            for (std::size_t ci = 0; ci < cons.size(); ++ci)
                if (sat_count[ci] == 0) uncovered = true;
            if (!uncovered) break;
            int best = -1, best_gain = -1;
            for (int v = 0; v < n; ++v) {
                if (!settable(v)) continue;
                int gain = 0;
                for (int ci : var_cons[v])
                    if (sat_count[ci] == 0) ++gain;
                if (gain > best_gain ||
                    (gain == best_gain && best >= 0 && degree_rank[v] < degree_rank[best])) {
                    best = v;
                    best_gain = gain;
                }
            }
            if (best < 0 || best_gain == 0) {
                for (auto it = picks.rbegin(); it != picks.rend(); ++it) unset1(*it);
                return;
            }
            set1(best);
            picks.push_back(best);
        }
        complete_and_record();
        for (auto it = picks.rbegin(); it != picks.rend(); ++it) unset1(*it);
    }

    void dfs() {
        // Dead or bounded?
        for (std::size_t ci = 0; ci < cons.size(); ++ci)
            if (sat_count[ci] == 0 && avail[ci] == 0) return;
        if (have_best && cmp(cost + lower_bound(), best_val) >= 0) return;
        // Most constrained uncovered witness.
        int pick = -1, pick_avail = 0;
        for (std::size_t ci = 0; ci < cons.size(); ++ci) {
            if (sat_count[ci] > 0) continue;
            if (pick < 0 || avail[ci] < pick_avail) {
                pick = (int)ci;
                pick_avail = avail[ci];
            }
        }
        if (pick < 0) {
            complete_and_record();
            return;
        }
        std::vector<int> branch;
        for (int v : cons[pick])
            if (settable(v)) branch.push_back(v);
        std::stable_sort(branch.begin(), branch.end(),
                         [&](int a, int b) { return degree_rank[a] < degree_rank[b]; });
        std::vector<int> zeroed;
        for (int v : branch) {
            if (!settable(v)) continue;  // cardinality may have filled up
            set1(v);
            dfs();
            unset1(v);
            set0(v);
            zeroed.push_back(v);
        }
        for (auto it = zeroed.rbegin(); it != zeroed.rend(); ++it) unset0(*it);
    }
};

bool is_cover_model(const IpModel& m) {
    int eqs = 0;
    for (const auto& con : m.constraints) {
        if (con.cmp == IpConstraint::Eq) {
            ++eqs;
            if (eqs > 1) return false;
            if (sgn(con.rhs) < 0 || den(con.rhs) != 1) return false;
            for (auto& [v, coef] : con.terms)
                if (cmp(coef, 1) != 0) return false;
        } else {
            if (cmp(con.rhs, 1) != 0) return false;
            for (auto& [v, coef] : con.terms)
                if (cmp(coef, 1) != 0) return false;
        }
    }
    for (const Rat& w : m.objective)
        if (sgn(w) < 0) return false;
    return !m.maximize;
}

struct Solver {
    const IpModel& m;
    bool integral = true;
    std::vector<int> order;   // variable processing order
    std::vector<int> assign;  // -1 unknown
    std::vector<long> rhs_i;
    std::vector<long> fixed_sum;  // per constraint (integral path)
    std::vector<long> max_add;
    std::vector<long> min_add;
    std::vector<Rat> fixed_sum_q, max_add_q, min_add_q, rhs_q;
    std::vector<std::vector<std::pair<int, Rat>>> var_cons;
    std::vector<std::vector<std::pair<int, long>>> var_cons_i;
    Rat cost = 0;
    bool have_best = false;
    Rat best_val;
    std::vector<int> best_assign;
    long nodes = 0;

    explicit Solver(const IpModel& model) : m(model) {
        int n = m.num_vars;
        assign.assign(n, -1);
        var_cons.assign(n, {});
        var_cons_i.assign(n, {});
        std::size_t nc = m.constraints.size();
        for (std::size_t ci = 0; ci < nc; ++ci) {
            if (den(m.constraints[ci].rhs) != 1) integral = false;
            for (auto& [v, coef] : m.constraints[ci].terms)
                if (den(coef) != 1 || !coef.get_num().fits_slong_p()) integral = false;
        }
        if (integral) {
            rhs_i.assign(nc, 0);
            fixed_sum.assign(nc, 0);
            max_add.assign(nc, 0);
            min_add.assign(nc, 0);
            for (std::size_t ci = 0; ci < nc; ++ci) {
                rhs_i[ci] = m.constraints[ci].rhs.get_num().get_si();
                for (auto& [v, coef] : m.constraints[ci].terms) {
                    long c = coef.get_num().get_si();
                    var_cons_i[v].push_back({(int)ci, c});
                    if (c > 0)
                        max_add[ci] += c;
                    else
                        min_add[ci] += c;
                }
            }
        } else {
            fixed_sum_q.assign(nc, Rat(0));
            max_add_q.assign(nc, Rat(0));
            min_add_q.assign(nc, Rat(0));
            rhs_q.assign(nc, Rat(0));
            for (std::size_t ci = 0; ci < nc; ++ci) {
                rhs_q[ci] = m.constraints[ci].rhs;
                for (auto& [v, coef] : m.constraints[ci].terms) {
                    var_cons[v].push_back({(int)ci, coef});
                    if (sgn(coef) > 0)
                        max_add_q[ci] += coef;
                    else
                        min_add_q[ci] += coef;
                }
            }
        }
        // Coverage degree descending, ties by id.
        std::vector<int> deg(n, 0);
        for (const auto& con : m.constraints)
            for (auto& [v, coef] : con.terms) deg[v]++;
        order.resize(n);
        for (int i = 0; i < n; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return deg[a] > deg[b]; });
    }

    void set_var(int v, int val) {
        assign[v] = val;
        if (val == 1) cost += m.objective[v];
        if (integral) {
            for (auto& [ci, coef] : var_cons_i[v]) {
                if (coef > 0)
                    max_add[ci] -= coef;
                else
                    min_add[ci] -= coef;
                if (val == 1) fixed_sum[ci] += coef;
            }
        } else {
            for (auto& [ci, coef] : var_cons[v]) {
                if (sgn(coef) > 0)
                    max_add_q[ci] -= coef;
                else
                    min_add_q[ci] -= coef;
                if (val == 1) fixed_sum_q[ci] += coef;
            }
        }
    }

    void unset_var(int v, int val) {
        assign[v] = -1;
        if (val == 1) cost -= m.objective[v];
        if (integral) {
            for (auto& [ci, coef] : var_cons_i[v]) {
                if (coef > 0)
                    max_add[ci] += coef;
                else
                    min_add[ci] += coef;
                if (val == 1) fixed_sum[ci] -= coef;
            }
        } else {
            for (auto& [ci, coef] : var_cons[v]) {
                if (sgn(coef) > 0)
                    max_add_q[ci] += coef;
                else
                    min_add_q[ci] += coef;
                if (val == 1) fixed_sum_q[ci] -= coef;
            }
        }
    }

    bool feasible_so_far() const {
        for (std::size_t ci = 0; ci < m.constraints.size(); ++ci) {
            const auto& con = m.constraints[ci];
            if (integral) {
                long hi = fixed_sum[ci] + max_add[ci];
                long lo = fixed_sum[ci] + min_add[ci];
                if (con.cmp == IpConstraint::Geq) {
                    if (hi < rhs_i[ci]) return false;
                } else {
                    if (hi < rhs_i[ci] || lo > rhs_i[ci]) return false;
                }
            } else {
                Rat hi = fixed_sum_q[ci] + max_add_q[ci];
                Rat lo = fixed_sum_q[ci] + min_add_q[ci];
                if (con.cmp == IpConstraint::Geq) {
                    if (cmp(hi, rhs_q[ci]) < 0) return false;
                } else {
                    if (cmp(hi, rhs_q[ci]) < 0 || cmp(lo, rhs_q[ci]) > 0) return false;
                }
            }
        }
        return true;
    }

    bool sat_exact(std::size_t ci) const {
        const auto& con = m.constraints[ci];
        if (integral) {
            int c = fixed_sum[ci] < rhs_i[ci] ? -1 : (fixed_sum[ci] > rhs_i[ci] ? 1 : 0);
            return con.cmp == IpConstraint::Geq ? c >= 0 : c == 0;
        }
        int c = cmp(fixed_sum_q[ci], rhs_q[ci]);
        return con.cmp == IpConstraint::Geq ? c >= 0 : c == 0;
    }

    bool sat_already(std::size_t ci) const {
        if (m.constraints[ci].cmp != IpConstraint::Geq) return false;
        if (integral) return fixed_sum[ci] >= rhs_i[ci];
        return cmp(fixed_sum_q[ci], rhs_q[ci]) >= 0;
    }

    // Lower bound on additional cost (minimize): disjoint packing of
    // unsatisfied unit-coefficient covering constraints.
    Rat remaining_lb() const {
        Rat lb = 0;
        std::vector<bool> used(m.num_vars, false);
        for (std::size_t ci = 0; ci < m.constraints.size(); ++ci) {
            const auto& con = m.constraints[ci];
            if (con.cmp != IpConstraint::Geq) continue;
            if (sat_already(ci)) continue;
            bool unit = true, disjoint = true;
            const Rat* minw = nullptr;
            for (auto& [v, coef] : con.terms) {
                if (assign[v] != -1) continue;
                if (cmp(coef, 1) != 0) {
                    unit = false;
                    break;
                }
                if (used[v]) disjoint = false;
                if (!minw || cmp(m.objective[v], *minw) < 0) minw = &m.objective[v];
            }
            if (!unit || !disjoint || !minw) continue;
            lb += *minw;
            for (auto& [v, coef] : con.terms)
                if (assign[v] == -1) used[v] = true;
        }
        return lb;
    }

    // Upper bound on additional objective (maximize).
    Rat remaining_ub() const {
        Rat ub = 0;
        for (int v = 0; v < m.num_vars; ++v)
            if (assign[v] == -1 && sgn(m.objective[v]) > 0) ub += m.objective[v];
        return ub;
    }

    void record_if_better() {
        Rat val = cost;
        if (!have_best || (m.maximize ? cmp(val, best_val) > 0 : cmp(val, best_val) < 0)) {
            have_best = true;
            best_val = val;
            best_assign = assign;
        }
    }

    void dfs(std::size_t idx) {
        ++nodes;
        if (!feasible_so_far()) return;
        if (have_best) {
            if (!m.maximize) {
                if (cmp(cost + remaining_lb(), best_val) >= 0) return;
            } else {
                if (cmp(cost + remaining_ub(), best_val) <= 0) return;
            }
        }
        if (idx == order.size()) {
            // All fixed: constraints are exact now.
            for (std::size_t ci = 0; ci < m.constraints.size(); ++ci)
                if (!sat_exact(ci)) return;
            record_if_better();
            return;
        }
        int v = order[idx];
        // Greedy-first: setting the variable tends to reach covers quickly in
        // minimize mode as well (degree order).
        for (int val : {1, 0}) {
            set_var(v, val);
            dfs(idx + 1);
            unset_var(v, val);
        }
    }
};

}  // namespace

IpSolution solve(const IpModel& m, int var_cap) {
    if (m.num_vars > var_cap) throw std::length_error("ip model exceeds the variable cap");
    assert((int)m.objective.size() == m.num_vars);
    IpSolution sol;
    if (m.num_vars == 0) {
        bool ok = true;
        for (const auto& con : m.constraints) {
            int c = cmp(Rat(0), con.rhs);
            if (con.cmp == IpConstraint::Geq ? c < 0 : c != 0) ok = false;
        }
        sol.status = ok ? IpSolution::Optimal : IpSolution::Infeasible;
        sol.objective = 0;
        return sol;
    }

    if (is_cover_model(m)) {
        CoverSolver cs(m);
        cs.greedy_seed();
        cs.dfs();
        if (!cs.have_best) {
            sol.status = IpSolution::Infeasible;
            sol.objective = 0;
            return sol;
        }
        sol.status = IpSolution::Optimal;
        sol.assignment = cs.best_assign;
        sol.objective = cs.best_val;
        return sol;
    }

    IpModel work = m;
    // Presolve for minimization: a zero-weight variable appearing only with
    // positive unit coefficients in >= constraints can be fixed to 1.
    std::vector<int> forced(m.num_vars, -1);
    if (!m.maximize) {
        for (int v = 0; v < m.num_vars; ++v) {
            if (sgn(m.objective[v]) != 0) continue;
            bool only_pos_geq = true;
            for (const auto& con : m.constraints)
                for (auto& [w, coef] : con.terms)
                    if (w == v && (con.cmp != IpConstraint::Geq || sgn(coef) <= 0))
                        only_pos_geq = false;
            if (only_pos_geq) forced[v] = 1;
        }
    }

    Solver s(work);
    for (int v = 0; v < m.num_vars; ++v)
        if (forced[v] == 1) s.set_var(v, 1);
    std::vector<int> rest;
    for (int v : s.order)
        if (forced[v] == -1) rest.push_back(v);
    s.order = rest;
    s.dfs(0);

    if (!s.have_best) {
        sol.status = IpSolution::Infeasible;
        sol.objective = 0;
        return sol;
    }
    sol.status = IpSolution::Optimal;
    sol.assignment = s.best_assign;
    for (int& a : sol.assignment)
        if (a == -1) a = 0;
    sol.objective = s.best_val;
    return sol;
}

void export_lp(const IpModel& m, std::ostream& os) {
    auto name = [&](int v) {
        if (v < (int)m.var_names.size() && !m.var_names[v].empty()) return m.var_names[v];
        return "x" + std::to_string(v);
    };
    os << (m.maximize ? "Maximize" : "Minimize") << "\n obj:";
    bool first = true;
    for (int v = 0; v < m.num_vars; ++v) {
        if (sgn(m.objective[v]) == 0) continue;
        os << (first ? " " : " + ") << rat_to_decimal(m.objective[v], 30) << " " << name(v);
        first = false;
    }
    if (first) os << " 0 " << name(0);
    os << "\n";
    for (int v = 0; v < m.num_vars; ++v) {
        if (sgn(m.objective[v]) == 0) continue;
        if (den(m.objective[v]) != 1)
            os << "\\ exact: " << name(v) << " objective " << m.objective[v] << "\n";
    }
    os << "Subject To\n";
    for (std::size_t ci = 0; ci < m.constraints.size(); ++ci) {
        const auto& con = m.constraints[ci];
        os << " c" << ci << ":";
        bool f2 = true;
        for (auto& [v, coef] : con.terms) {
            if (f2) {
                os << " " << rat_to_decimal(coef, 30) << " " << name(v);
                f2 = false;
            } else if (sgn(coef) >= 0) {
                os << " + " << rat_to_decimal(coef, 30) << " " << name(v);
            } else {
                os << " - " << rat_to_decimal(-coef, 30) << " " << name(v);
            }
        }
        os << (con.cmp == IpConstraint::Geq ? " >= " : " = ") << rat_to_decimal(con.rhs, 30)
           << "\n";
        for (auto& [v, coef] : con.terms)
            if (den(coef) != 1) os << "\\ exact: c" << ci << " " << name(v) << " " << coef << "\n";
    }
    os << "Binary\n";
    for (int v = 0; v < m.num_vars; ++v) os << " " << name(v) << "\n";
    os << "End\n";
}

}  // namespace polyguard
