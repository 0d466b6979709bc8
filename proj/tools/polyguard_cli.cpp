#include "CLI11.hpp"

#include "polyguard/csvlog.hpp"
#include "polyguard/fpt.hpp"
#include "polyguard/instance_io.hpp"
#include "polyguard/svg.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace polyguard;

namespace {

constexpr int kExitOptimal = 0;
constexpr int kExitTimeout = 2;
constexpr int kExitGranularity = 3;
constexpr int kExitUsage = 64;
constexpr int kExitParse = 65;

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

int status_exit(SolveReport::Status s) {
    switch (s) {
        case SolveReport::Status::Optimal: return kExitOptimal;
        case SolveReport::Status::Timeout: return kExitTimeout;
        case SolveReport::Status::GranularityExhausted: return kExitGranularity;
    }
    return 1;
}

const char* status_name(SolveReport::Status s) {
    switch (s) {
        case SolveReport::Status::Optimal: return "optimal";
        case SolveReport::Status::Timeout: return "timeout";
        case SolveReport::Status::GranularityExhausted: return "granularity_exhausted";
    }
    return "?";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact point-guard art gallery solver"};
    app.require_subcommand(1);

    // ----- solve -----
    auto* solve_cmd = app.add_subcommand("solve", "solve an instance");
    std::string in_path, mode = "iterative", delta_t = "1/16";
    std::string split = "normal", witness = "all", ip = "normal", gran = "normal";
    std::uint64_t seed = 1;
    double time_limit = 600.0;
    std::string svg_path, csv_path, lp_dir, trace_dir, reference_path;
    solve_cmd->add_option("--input", in_path, "instance file")->required();
    solve_cmd->add_option("--mode", mode)->check(CLI::IsMember({"oneshot", "iterative"}));
    solve_cmd->add_option("--delta-t", delta_t, "half-angle tangent of delta (rational)");
    solve_cmd->add_option("--split", split)->check(CLI::IsMember({"normal", "square"}));
    solve_cmd->add_option("--witness", witness)
        ->check(CLI::IsMember({"all", "critical", "delayed"}));
    solve_cmd->add_option("--ip", ip)->check(CLI::IsMember({"normal", "simple"}));
    solve_cmd->add_option("--gran-update", gran)
        ->check(CLI::IsMember({"normal", "accelerated"}));
    solve_cmd->add_option("--seed", seed);
    solve_cmd->add_option("--time-limit", time_limit, "seconds");
    solve_cmd->add_option("--svg", svg_path, "write the final state as SVG");
    solve_cmd->add_option("--csv", csv_path, "append a run record");
    solve_cmd->add_option("--export-lp", lp_dir, "write every IP model into this directory");
    solve_cmd->add_option("--trace-svg", trace_dir, "per-iteration SVG dumps");
    solve_cmd->add_option("--reference", reference_path,
                          "reference guard set for the Hausdorff trace");

    // ----- gen -----
    auto* gen_cmd = app.add_subcommand("gen", "generate a random simple polygon");
    int gen_n = 10;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    gen_cmd->add_option("--n", gen_n)->required();
    gen_cmd->add_option("--seed", gen_seed);
    gen_cmd->add_option("--out", gen_out, "output file (stdout when absent)");

    // ----- verify -----
    auto* verify_cmd = app.add_subcommand("verify", "check a guard set");
    std::string v_in, v_guards;
    verify_cmd->add_option("--input", v_in)->required();
    verify_cmd->add_option("--guards", v_guards)->required();

    // ----- fpt -----
    auto* fpt_cmd = app.add_subcommand("fpt", "toy-scale FPT dynamic programs");
    std::string f_in, f_mode = "vertex", f_delta = "1";
    fpt_cmd->add_option("--input", f_in)->required();
    fpt_cmd->add_option("--mode", f_mode)->check(CLI::IsMember({"vertex", "point"}));
    fpt_cmd->add_option("--delta-t", f_delta);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (*gen_cmd) {
            auto P = generate_polygon(gen_n, gen_seed);
            std::string text = serialize_instance(P);
            if (gen_out.empty()) {
                std::cout << text;
            } else {
                std::ofstream f(gen_out, std::ios::binary);
                f << text;
            }
            return 0;
        }

        if (*verify_cmd) {
            SimplePolygon P = parse_instance(read_file(v_in));
            auto guards = parse_guards(read_file(v_guards));
            for (const Point& g : guards) {
                if (!P.contains(g)) {
                    std::cerr << "guard (" << g.x << "," << g.y << ") lies outside the polygon\n";
                    return kExitParse;
                }
            }
            bool ok = verify_coverage(P, guards);
            std::cout << (ok ? "covered" : "not covered") << "\n";
            return ok ? 0 : 1;
        }

        if (*fpt_cmd) {
            SimplePolygon P = parse_instance(read_file(f_in));
            FptResult res;
            if (f_mode == "vertex") {
                res = vertex_guarding_fpt(P);
            } else {
                Rat t;
                if (!parse_rat(f_delta, t) || sgn(t) <= 0) {
                    std::cerr << "bad --delta-t\n";
                    return kExitUsage;
                }
                res = point_guarding_fpt(P, HalfAngle{t});
            }
            if (!res.ok) {
                std::cerr << "refused: " << res.refusal << "\n";
                return 1;
            }
            std::cout << serialize_guards(res.guards);
            return 0;
        }

        // solve
        SimplePolygon P = parse_instance(read_file(in_path));
        ProtocolConfig cfg;
        cfg.split_protocol = split == "square" ? ProtocolConfig::Split::Square
                                               : ProtocolConfig::Split::Normal;
        cfg.witness_protocol = witness == "critical"
                                   ? ProtocolConfig::WitnessSel::Critical
                                   : (witness == "delayed" ? ProtocolConfig::WitnessSel::DelayedCritical
                                                           : ProtocolConfig::WitnessSel::All);
        cfg.ip_protocol =
            ip == "simple" ? ProtocolConfig::IpProto::Simple : ProtocolConfig::IpProto::Normal;
        cfg.granularity_update = gran == "accelerated" ? ProtocolConfig::Gran::Accelerated
                                                       : ProtocolConfig::Gran::Normal;
        cfg.rng_seed = seed;
        cfg.time_limit_s = time_limit;
        cfg.export_lp_dir = lp_dir;
        if (!reference_path.empty()) cfg.reference_guards = parse_guards(read_file(reference_path));

        Rat t;
        if (!parse_rat(delta_t, t) || sgn(t) <= 0) {
            std::cerr << "bad --delta-t\n";
            return kExitUsage;
        }

        std::string last_svg;
        if (!svg_path.empty() || !trace_dir.empty()) {
            if (!trace_dir.empty()) std::filesystem::create_directories(trace_dir);
            cfg.on_iteration = [&](int iter, const GArrangement* A,
                                   const std::vector<GuardRef>& refs,
                                   const std::vector<int>& unseen) {
                std::string img = render_svg(P, A, refs, unseen);
                last_svg = img;
                if (!trace_dir.empty()) {
                    std::ofstream f(trace_dir + "/iter_" + std::to_string(iter) + ".svg",
                                    std::ios::binary);
                    f << img;
                }
            };
        }

        SolveReport rep = (mode == "oneshot") ? one_shot_solve(P, HalfAngle{t}, cfg)
                                              : iterative_solve(P, cfg);

        std::cout << "status " << status_name(rep.status) << "\n";
        std::cout << "guards " << rep.guard_refs.size() << "\n";
        for (const GuardRef& g : rep.guard_refs)
            std::cout << (g.is_face ? "face-guard " : "point-guard ") << g.point.x << " "
                      << g.point.y << "\n";
        std::cout << "iterations " << rep.iterations << "\n";
        std::cout << "final-granularity 2^-" << rep.final_granularity_k << "\n";
        if (rep.stability_bound_t)
            std::cout << "vision-stability-below t=" << *rep.stability_bound_t << "\n";
        if (!cfg.reference_guards.empty()) {
            std::cout << "hausdorff-log2";
            for (const auto& tr : rep.trace)
                if (tr.has_hausdorff) std::cout << " " << tr.hausdorff_log2;
            std::cout << "\n";
        }

        if (!svg_path.empty()) {
            if (last_svg.empty()) last_svg = render_svg(P, nullptr, rep.guard_refs, {});
            std::ofstream f(svg_path, std::ios::binary);
            if (!f) throw std::runtime_error("cannot write " + svg_path);
            f << last_svg;
        }
        if (!csv_path.empty()) {
            RunRecord rec = make_record(std::filesystem::path(in_path).filename().string(),
                                        mode, cfg, rep);
            append_csv(csv_path, rec);
        }
        return status_exit(rep.status);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
