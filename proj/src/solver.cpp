#include "polyguard/solver.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

namespace polyguard {

namespace {

using Clock = std::chrono::steady_clock;

double secs_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Exclusive phase stopwatch; triangulation time is carved out into the
// "shortest paths" bucket wherever it happens.
struct PhaseClock {
    PhaseTimes* pt;
    Clock::time_point mark = Clock::now();
    double tri_mark = triangulation_seconds();
    double* cur;

    explicit PhaseClock(PhaseTimes* p) : pt(p), cur(&p->other) {}
    void flush() {
        double el = secs_since(mark);
        double tri = triangulation_seconds() - tri_mark;
        *cur += el - tri;
        pt->shortest += tri;
        mark = Clock::now();
        tri_mark = triangulation_seconds();
    }
    void to(double* field) {
        flush();
        cur = field;
    }
};

Point polygon_centroid(const SimplePolygon& P) {
    Rat sx = 0, sy = 0;
    for (const Point& p : P.vertices()) {
        sx += p.x;
        sy += p.y;
    }
    Rat n((unsigned long)P.size());
    return {sx / n, sy / n};
}

double rand01(std::mt19937_64& rng) {
    return (double)(rng() >> 11) * (1.0 / 9007199254740992.0);
}

struct SolverState {
    const SimplePolygon& P;
    const ProtocolConfig& cfg;
    SolveReport& rep;
    PhaseClock& clock;
    WvpTree tree;
    GArrangement A;
    VisibilityEngine eng;
    VisMatrix vm;
    std::mt19937_64 rng;
    Clock::time_point t0 = Clock::now();

    SolverState(const SimplePolygon& poly, const ProtocolConfig& config, SolveReport& report,
                PhaseClock& pc, bool oneshot, const HalfAngle& delta)
        : P(poly),
          cfg(config),
          rep(report),
          clock(pc),
          tree(build_tree(poly, config, pc)),
          A(oneshot ? GArrangement::build_oneshot(poly, tree, delta)
                    : GArrangement::init_iterative(poly, tree)),
          eng(poly),
          vm(tree, A, eng),
          rng(config.rng_seed) {}

    static WvpTree build_tree(const SimplePolygon& poly, const ProtocolConfig& config,
                              PhaseClock& pc) {
        pc.to(&pc.pt->weakvis);
        int e = config.start_edge >= 0 ? config.start_edge : WvpTree::default_start_edge(poly);
        WvpTree t = WvpTree::build(poly, e);
        pc.to(&pc.pt->other);
        return t;
    }

    bool timed_out() const { return secs_since(t0) > cfg.time_limit_s; }

    bool sees(const Candidate& c, const Witness& w) {
        clock.to(c.kind == Candidate::Vertex ? &clock.pt->pointvis : &clock.pt->facevis);
        bool r = vm.sees_completely(c, w);
        clock.to(&clock.pt->other);
        return r;
    }

    GuardProblem build_problem(const std::vector<Candidate>& C, const std::vector<Witness>& W) {
        GuardProblem gp;
        for (const Candidate& c : C) gp.cand_is_face.push_back(c.kind == Candidate::Face);
        for (const Witness& w : W) gp.wit_is_face.push_back(w.kind == Witness::Face);
        gp.coverage.assign(W.size(), {});
        for (std::size_t wi = 0; wi < W.size(); ++wi)
            for (std::size_t ci = 0; ci < C.size(); ++ci)
                if (sees(C[ci], W[wi])) gp.coverage[wi].push_back((int)ci);
        return gp;
    }

    struct IpOutcome {
        int s = 0;  // guard count
        std::vector<int> guard_cands;   // indices into C
        std::vector<int> unseen_faces;  // witness indices with slack set
        bool all_vertex = true;
    };

    int ip_counter = 0;

    void maybe_export(const IpModel& m, const std::string& tag) {
        if (cfg.export_lp_dir.empty()) return;
        std::filesystem::create_directories(cfg.export_lp_dir);
        std::ofstream f(cfg.export_lp_dir + "/model_" + std::to_string(++ip_counter) + "_" +
                        tag + ".lp");
        export_lp(m, f);
    }

    // Two-stage solve of the normal IP.
    IpOutcome run_normal_ip(const GuardProblem& gp, const std::vector<Candidate>& C,
                            const std::vector<Witness>& W) {
        clock.to(&clock.pt->ip);
        auto b1 = build_normal_ip(gp, IpMode::Stage1);
        maybe_export(b1.model, "stage1");
        auto s1 = solve(b1.model, cfg.var_cap);
        if (s1.status != IpSolution::Optimal)
            throw std::runtime_error("stage-1 IP infeasible");
        long s = s1.objective.get_num().get_si();
        auto b2 = build_normal_ip(gp, IpMode::Stage2, (int)s);
        maybe_export(b2.model, "stage2");
        auto s2 = solve(b2.model, cfg.var_cap);
        clock.to(&clock.pt->other);
        if (s2.status != IpSolution::Optimal)
            throw std::runtime_error("stage-2 IP infeasible");
        IpOutcome out;
        out.s = (int)s;
        for (std::size_t ci = 0; ci < C.size(); ++ci) {
            if (s2.assignment[ci] != 1) continue;
            out.guard_cands.push_back((int)ci);
            if (C[ci].kind == Candidate::Face) out.all_vertex = false;
        }
        for (std::size_t wi = 0; wi < W.size(); ++wi) {
            int slack = b2.slack_of_witness[wi];
            if (slack >= 0 && s2.assignment[slack] == 1) out.unseen_faces.push_back((int)wi);
        }
        return out;
    }

    std::vector<GuardRef> guard_refs(const std::vector<Candidate>& C,
                                     const std::vector<int>& guard_cands) {
        std::vector<GuardRef> refs;
        for (int ci : guard_cands) {
            const Candidate& c = C[ci];
            GuardRef g;
            if (c.kind == Candidate::Vertex) {
                g.is_face = false;
                g.point = A.vertex_points()[c.ref];
                g.centroid = g.point;
            } else {
                g.is_face = true;
                g.face_id = c.ref;
                g.point = A.representative(c.ref);
                g.centroid = A.face(c.ref).cell.centroid();
            }
            refs.push_back(g);
        }
        return refs;
    }

    // Applies the split protocol to one face; returns true if it was split.
    bool split_face(int fid) {
        if (!A.face(fid).alive) return false;
        auto apply = [&](SplitKind k) {
            auto out = A.split(fid, k);
            if (out) {
                vm.purge_face(fid);
                return true;
            }
            return false;
        };
        if (cfg.split_protocol == ProtocolConfig::Split::Square) return apply(SplitKind::Square);
        if ((int)A.face(fid).reflex_incident.size() > 1) return apply(SplitKind::Square);
        double u = rand01(rng);
        SplitKind first = u < 0.8 ? SplitKind::Angular
                                  : (u < 0.9 ? SplitKind::ReflexChord : SplitKind::Extension);
        if (apply(first)) return true;
        for (SplitKind k : {SplitKind::Angular, SplitKind::ReflexChord, SplitKind::Extension})
            if (k != first && apply(k)) return true;
        return false;
    }
};

void finalize(SolveReport& rep, SolverState* st, PhaseClock& clock, Clock::time_point t0) {
    clock.flush();
    rep.phases.total = secs_since(t0);
    if (st) {
        rep.point_queries = st->eng.point_queries;
        rep.face_queries = st->vm.face_queries;
        rep.pair_queries = st->vm.queries;
        rep.faces_created = st->A.faces_created();
    }
}

}  // namespace

HalfAngle delta_for_granularity(int k) { return HalfAngle{pow2(4 - k)}; }

bool verify_coverage(VisibilityEngine& eng, const std::vector<Point>& guards) {
    const SimplePolygon& P = eng.polygon();
    for (const Point& g : guards)
        if (!P.contains(g)) throw std::domain_error("verify_coverage: guard outside polygon");
    if (guards.empty()) return false;
    Region residual = Region::from_polygon(P);
    for (const Point& g : guards) {
        residual.subtract(eng.vis_point(g).region);
        if (residual.empty()) return true;
    }
    return sgn(residual.area2()) == 0;
}

bool verify_coverage(const SimplePolygon& P, const std::vector<Point>& guards) {
    VisibilityEngine eng(P);
    return verify_coverage(eng, guards);
}

int update_critical_witnesses(CriticalSet& cs, const GArrangement& A, const WvpTree& tree,
                              const std::vector<Witness>& unseen, std::mt19937_64& rng,
                              int batch) {
    (void)tree;
    int added = 0;
    if (!cs.seeded) {
        cs.seeded = true;
        std::map<int, std::vector<int>> by_node;
        for (const auto& f : A.faces())
            if (f.alive) by_node[f.wvp_node].push_back(f.id);
        for (auto& [node, faces] : by_node) {
            std::sort(faces.begin(), faces.end());
            int take = std::max<int>(1, (int)faces.size() / 10);
            // Partial Fisher-Yates with the loop-owned rng.
            std::vector<int> pool = faces;
            for (int i = 0; i < take && !pool.empty(); ++i) {
                std::size_t j = (std::size_t)(rng() % pool.size());
                int fid = pool[j];
                pool[j] = pool.back();
                pool.pop_back();
                cs.keys.insert({1, fid});
                cs.keys.insert({0, fid});  // critical faces carry their vertex witness
                ++added;
            }
        }
        return added;
    }
    std::vector<Witness> pool;
    for (const Witness& w : unseen)
        if (!cs.contains(w)) pool.push_back(w);
    while (added < batch && !pool.empty()) {
        std::size_t j = (std::size_t)(rng() % pool.size());
        Witness w = pool[j];
        pool[j] = pool.back();
        pool.pop_back();
        if (cs.contains(w)) continue;
        cs.keys.insert({w.kind == Witness::Face ? 1 : 0, w.ref});
        if (w.kind == Witness::Face) cs.keys.insert({0, w.ref});
        ++added;
    }
    return added;
}

double hausdorff_log2(const std::vector<Point>& a, const std::vector<Point>& b) {
    if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
    Rat worst = 0;
    auto one_side = [&worst](const std::vector<Point>& xs, const std::vector<Point>& ys) {
        for (const Point& x : xs) {
            const Rat* best = nullptr;
            Rat bv;
            for (const Point& y : ys) {
                Vec d = y - x;
                Rat d2 = dot(d, d);
                if (!best || cmp(d2, bv) < 0) {
                    bv = d2;
                    best = &bv;
                }
            }
            if (cmp(bv, worst) > 0) worst = bv;
        }
    };
    one_side(a, b);
    one_side(b, a);
    if (sgn(worst) == 0) return -std::numeric_limits<double>::infinity();
    return 0.5 * std::log2(worst.get_d());
}

SolveReport one_shot_solve(const SimplePolygon& P, const HalfAngle& delta,
                           const ProtocolConfig& cfg) {
    SolveReport rep;
    rep.reflex_count = (int)P.reflex_indices().size();
    PhaseClock clock(&rep.phases);
    auto t0 = Clock::now();
    if (sgn(delta.t) <= 0) throw std::domain_error("one_shot_solve: delta must be positive");

    if (P.reflex_indices().empty()) {
        rep.status = SolveReport::Status::Optimal;
        Point g = polygon_centroid(P);
        rep.guards = {g};
        rep.guard_refs = {{false, g, g, -1}};
        rep.iterations = 1;
        if (cfg.on_iteration) cfg.on_iteration(1, nullptr, rep.guard_refs, {});
        finalize(rep, nullptr, clock, t0);
        return rep;
    }

    SolverState st(P, cfg, rep, clock, /*oneshot=*/true, delta);
    auto C = st.A.candidates();
    auto W = st.A.witnesses();
    GuardProblem gp = st.build_problem(C, W);
    auto out = st.run_normal_ip(gp, C, W);
    rep.iterations = 1;
    rep.guard_refs = st.guard_refs(C, out.guard_cands);
    for (const GuardRef& g : rep.guard_refs) rep.guards.push_back(g.point);

    IterationTrace tr;
    tr.iteration = 1;
    tr.face_count = (int)st.A.live_faces().size();
    tr.ip_value = out.s;
    rep.trace.push_back(tr);

    if (cfg.on_iteration) {
        std::vector<int> unseen_ids;
        for (int wi : out.unseen_faces) unseen_ids.push_back(W[wi].ref);
        cfg.on_iteration(1, &st.A, rep.guard_refs, unseen_ids);
    }

    if (out.all_vertex && out.unseen_faces.empty()) {
        bool ok = verify_coverage(st.eng, rep.guards);
        if (ok) {
            rep.status = SolveReport::Status::Optimal;
            finalize(rep, &st, clock, t0);
            return rep;
        }
    }
    rep.status = SolveReport::Status::GranularityExhausted;
    rep.stability_bound_t = delta.t;
    finalize(rep, &st, clock, t0);
    return rep;
}

SolveReport iterative_solve(const SimplePolygon& P, const ProtocolConfig& cfg) {
    SolveReport rep;
    rep.reflex_count = (int)P.reflex_indices().size();
    rep.final_granularity_k = cfg.initial_granularity_k;
    PhaseClock clock(&rep.phases);
    auto t0 = Clock::now();

    if (P.reflex_indices().empty()) {
        rep.status = SolveReport::Status::Optimal;
        Point g = polygon_centroid(P);
        rep.guards = {g};
        rep.guard_refs = {{false, g, g, -1}};
        rep.iterations = 1;
        if (cfg.on_iteration) cfg.on_iteration(1, nullptr, rep.guard_refs, {});
        finalize(rep, nullptr, clock, t0);
        return rep;
    }

    SolverState st(P, cfg, rep, clock, /*oneshot=*/false, HalfAngle{rat(1)});
    int k = cfg.initial_granularity_k;
    st.A.set_granularity_k(k);
    bool use_critical = cfg.witness_protocol != ProtocolConfig::WitnessSel::All;
    CriticalSet cs;
    std::vector<GuardRef> last_refs;

    for (int iter = 1;; ++iter) {
        if (st.timed_out()) {
            rep.status = SolveReport::Status::Timeout;
            rep.guard_refs = last_refs;
            break;
        }
        auto C = st.A.candidates();
        auto W = st.A.witnesses();

        if (use_critical && !cs.seeded) update_critical_witnesses(cs, st.A, st.tree, {}, st.rng, cfg.critical_batch);
        if (cfg.witness_protocol == ProtocolConfig::WitnessSel::DelayedCritical) {
            // Faces with power above sqrt(lambda): splittable at ladder level k/2.
            for (int fid : st.A.live_faces())
                if (st.A.angular_splittable(fid, std::max(1, (k + 1) / 2))) {
                    cs.keys.insert({1, fid});
                    cs.keys.insert({0, fid});
                }
        }
        auto active_witnesses = [&]() {
            if (!use_critical) return W;
            std::vector<Witness> act;
            for (const Witness& w : W)
                if (cs.contains(w)) act.push_back(w);
            if (act.empty()) act = W;
            return act;
        };
        std::vector<Witness> AW = active_witnesses();
        GuardProblem gp = st.build_problem(C, AW);
        auto out = st.run_normal_ip(gp, C, AW);

        // Critical cycles: grow the witness set until the guards see the
        // entire polygon's witness set or every unseen witness is critical.
        if (use_critical) {
            for (;;) {
                if (st.timed_out()) break;
                std::vector<Witness> unseen;
                for (const Witness& w : W) {
                    bool seen = false;
                    for (int ci : out.guard_cands)
                        if (st.sees(C[ci], w)) {
                            seen = true;
                            break;
                        }
                    if (!seen) unseen.push_back(w);
                }
                if (unseen.empty()) break;
                std::vector<Witness> fresh;
                for (const Witness& w : unseen)
                    if (!cs.contains(w)) fresh.push_back(w);
                if (fresh.empty()) break;
                update_critical_witnesses(cs, st.A, st.tree, fresh, st.rng, cfg.critical_batch);
                AW = active_witnesses();
                gp = st.build_problem(C, AW);
                out = st.run_normal_ip(gp, C, AW);
            }
        }

        last_refs = st.guard_refs(C, out.guard_cands);
        IterationTrace tr;
        tr.iteration = iter;
        tr.face_count = (int)st.A.live_faces().size();
        tr.ip_value = out.s;
        tr.granularity_k = k;
        rep.iterations = iter;
        rep.final_granularity_k = k;
        if (cfg.on_iteration) {
            std::vector<int> unseen_ids;
            for (int wi : out.unseen_faces) unseen_ids.push_back(AW[wi].ref);
            cfg.on_iteration(iter, &st.A, last_refs, unseen_ids);
        }

        if (!cfg.reference_guards.empty()) {
            std::vector<Point> mids;
            for (const GuardRef& g : last_refs) mids.push_back(g.centroid);
            tr.hausdorff_log2 = hausdorff_log2(mids, cfg.reference_guards);
            tr.has_hausdorff = true;
        }

        // Does the solution see everything?
        bool all_seen;
        if (use_critical) {
            all_seen = true;
            for (const Witness& w : W) {
                bool seen = false;
                for (int ci : out.guard_cands)
                    if (st.sees(C[ci], w)) {
                        seen = true;
                        break;
                    }
                if (!seen) {
                    all_seen = false;
                    break;
                }
            }
        } else {
            all_seen = out.unseen_faces.empty();
        }

        if (out.all_vertex && all_seen) {
            std::vector<Point> pts;
            for (const GuardRef& g : last_refs) pts.push_back(g.point);
            clock.to(&clock.pt->other);
            bool ok = verify_coverage(st.eng, pts);
            if (ok) {
                rep.status = SolveReport::Status::Optimal;
                rep.guards = pts;
                rep.guard_refs = last_refs;
                tr.wall_s = secs_since(st.t0);
                rep.trace.push_back(tr);
                break;
            }
        }

        // Splittable faces among face-guards and unseen face-witnesses.
        std::vector<int> selected;
        for (int ci : out.guard_cands)
            if (C[ci].kind == Candidate::Face) selected.push_back(C[ci].ref);
        for (int wi : out.unseen_faces) selected.push_back(AW[wi].ref);
        std::sort(selected.begin(), selected.end());
        selected.erase(std::unique(selected.begin(), selected.end()), selected.end());
        std::vector<int> splittable;
        for (int fid : selected)
            if (st.A.face(fid).alive && !st.A.is_unsplittable(fid)) splittable.push_back(fid);

        int splits = 0;
        if (!splittable.empty()) {
            // Normal IP protocol splits one face per iteration; the simple
            // protocol splits all selected faces.
            if (cfg.ip_protocol == ProtocolConfig::IpProto::Normal) {
                if (st.split_face(splittable.front())) {
                    cs.drop_face(splittable.front());
                    ++splits;
                }
            } else {
                for (int fid : splittable)
                    if (st.split_face(fid)) {
                        cs.drop_face(fid);
                        ++splits;
                    }
            }
        }
        if (splits > 0) {
            tr.splits_made = splits;
            tr.wall_s = secs_since(st.t0);
            rep.trace.push_back(tr);
            continue;
        }

        // No splittable face selected: run the big IP before touching the
        // granularity.
        {
            std::vector<bool> cand_spl(C.size(), false);
            std::vector<bool> wit_spl(AW.size(), false);
            for (std::size_t ci = 0; ci < C.size(); ++ci)
                if (C[ci].kind == Candidate::Face)
                    cand_spl[ci] = !st.A.is_unsplittable(C[ci].ref);
            for (std::size_t wi = 0; wi < AW.size(); ++wi)
                if (AW[wi].kind == Witness::Face)
                    wit_spl[wi] = !st.A.is_unsplittable(AW[wi].ref);
            clock.to(&clock.pt->ip);
            auto big = build_big_ip(gp, out.s, cand_spl, wit_spl);
            st.maybe_export(big.model, "big");
            auto bs = solve(big.model, cfg.var_cap);
            clock.to(&clock.pt->other);
            if (bs.status == IpSolution::Optimal && sgn(bs.objective) > 0) {
                std::vector<int> chosen;
                for (std::size_t ci = 0; ci < C.size(); ++ci)
                    if (bs.assignment[ci] == 1 && cand_spl[ci]) chosen.push_back(C[ci].ref);
                for (std::size_t wi = 0; wi < AW.size(); ++wi) {
                    int slack = big.slack_of_witness[wi];
                    if (slack >= 0 && bs.assignment[slack] == 1 && wit_spl[wi])
                        chosen.push_back(AW[wi].ref);
                }
                std::sort(chosen.begin(), chosen.end());
                chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
                for (int fid : chosen)
                    if (st.split_face(fid)) {
                        cs.drop_face(fid);
                        ++splits;
                    }
                if (splits > 0) {
                    tr.splits_made = splits;
                    tr.wall_s = secs_since(st.t0);
                    rep.trace.push_back(tr);
                    continue;
                }
            }
        }

        // Granularity update.
        rep.stability_bound_t = delta_for_granularity(k).t;
        if (k >= cfg.max_granularity_k) {
            rep.status = SolveReport::Status::GranularityExhausted;
            rep.guard_refs = last_refs;
            tr.wall_s = secs_since(st.t0);
            rep.trace.push_back(tr);
            break;
        }
        k = (cfg.granularity_update == ProtocolConfig::Gran::Normal) ? k + 1 : 2 * k;
        if (k > cfg.max_granularity_k) k = cfg.max_granularity_k;
        st.A.set_granularity_k(k);
        tr.granularity_lowered = true;
        tr.wall_s = secs_since(st.t0);
        rep.trace.push_back(tr);
    }

    if (rep.status != SolveReport::Status::Optimal) {
        rep.guards.clear();
        for (const GuardRef& g : rep.guard_refs) rep.guards.push_back(g.point);
    }
    finalize(rep, &st, clock, t0);
    return rep;
}

}  // namespace polyguard
